#include "greenlink/report.hpp"

#include <cstdio>
#include <iomanip>

namespace greenlink {

using nlohmann::json;

std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

ReportRow make_report_row(const SweepRow& row) {
    ReportRow r;
    r.scheme = row.scheme;
    r.m = row.m;
    r.d_m = row.distance_m;
    r.fading_desc = describe(row.fading);
    r.k_db = row.k_db;
    r.target_ser = row.target_ser;
    r.t_ac_s = row.energy.t_active_s;
    r.e_t_j = row.energy.symbol_energy_j;
    r.e_tx_j = row.energy.transmit_j;
    r.e_circ_j = row.energy.circuit_j;
    r.e_trans_j = row.energy.transient_j;
    r.e_total_j = row.energy.total_j;
    r.gamma_bar = row.energy.gamma_bar_required;
    r.feasible = row.feasible && row.error.empty();
    if (!row.error.empty()) r.error = row.error;
    return r;
}

void write_csv(std::ostream& out, const std::vector<ReportRow>& rows) {
    out << kCsvHeader << '\n';
    for (const ReportRow& r : rows) {
        out << to_string(r.scheme) << ',' << r.m << ',' << format_number(r.d_m) << ','
            << (r.k_db ? format_number(*r.k_db) : "") << ',' << format_number(r.target_ser) << ','
            << format_number(r.t_ac_s) << ',';
        if (r.error) {
            out << ",,,,,";
        } else {
            out << format_number(r.e_t_j) << ',' << format_number(r.e_tx_j) << ','
                << format_number(r.e_circ_j) << ',' << format_number(r.e_trans_j) << ','
                << format_number(r.e_total_j) << ',';
        }
        out << (r.feasible ? "true" : "false") << '\n';
    }
}

json to_json(const ReportRow& r) {
    json j = {{"scheme", std::string(to_string(r.scheme))},
              {"m", r.m},
              {"d_m", r.d_m},
              {"fading", r.fading_desc},
              {"k_db", r.k_db ? json(*r.k_db) : json(nullptr)},
              {"target_ser", r.target_ser},
              {"t_ac_s", r.t_ac_s},
              {"feasible", r.feasible}};
    if (r.error) {
        j["error"] = *r.error;
    } else {
        j["gamma_bar"] = r.gamma_bar;
        j["e_t_j"] = r.e_t_j;
        j["e_tx_j"] = r.e_tx_j;
        j["e_circ_j"] = r.e_circ_j;
        j["e_trans_j"] = r.e_trans_j;
        j["e_total_j"] = r.e_total_j;
    }
    return j;
}

json sweep_to_json(const SweepResult& result) {
    json rows = json::array();
    for (const SweepRow& row : result.rows) rows.push_back(to_json(make_report_row(row)));
    return {{"metadata", {{"rows", result.rows.size()}, {"notes", result.notes}}}, {"rows", rows}};
}

void write_human(std::ostream& out, const ReportRow& r) {
    const auto cell = [&](const std::string& s) { out << std::left << std::setw(15) << s; };
    for (const char* h : {"scheme", "m", "d_m", "fading", "t_ac_s", "e_t_j", "e_tx_j", "e_circ_j",
                          "e_trans_j", "e_total_j", "feasible"}) {
        cell(h);
    }
    out << '\n';
    cell(std::string(to_string(r.scheme)));
    cell(std::to_string(r.m));
    cell(format_number(r.d_m));
    cell(r.fading_desc);
    cell(format_number(r.t_ac_s));
    if (r.error) {
        for (int i = 0; i < 5; ++i) cell("-");
    } else {
        cell(format_number(r.e_t_j));
        cell(format_number(r.e_tx_j));
        cell(format_number(r.e_circ_j));
        cell(format_number(r.e_trans_j));
        cell(format_number(r.e_total_j));
    }
    cell(r.feasible ? "true" : "false");
    out << '\n';
    if (r.error) out << "error: " << *r.error << '\n';
}

void write_verify_text(std::ostream& out, const std::vector<VerifyRow>& rows) {
    out << "scheme,m,fading,gamma_bar,bound,exact,mc_mean,mc_half_width_95,result\n";
    std::size_t passed = 0;
    for (const VerifyRow& r : rows) {
        if (r.pass) ++passed;
        out << to_string(r.scheme) << ',' << r.m << ',' << describe(r.fading) << ','
            << format_number(r.gamma_bar) << ',' << format_number(r.bound) << ','
            << format_number(r.exact) << ',' << format_number(r.mc.mean) << ','
            << format_number(r.mc.half_width_95) << ','
            << (r.error.empty() ? (r.pass ? "PASS" : "FAIL") : "ERROR") << '\n';
    }
    out << "# " << passed << "/" << rows.size() << " cells pass\n";
}

json verify_to_json(const std::vector<VerifyRow>& rows) {
    json out = json::array();
    for (const VerifyRow& r : rows) {
        json j = {{"scheme", std::string(to_string(r.scheme))},
                  {"m", r.m},
                  {"fading", describe(r.fading)},
                  {"gamma_bar", r.gamma_bar},
                  {"bound", r.bound},
                  {"exact", r.exact},
                  {"mc", {{"mean", r.mc.mean},
                          {"half_width_95", r.mc.half_width_95},
                          {"n_samples", r.mc.n_samples}}},
                  {"pass", r.pass}};
        if (!r.error.empty()) j["error"] = r.error;
        out.push_back(j);
    }
    return out;
}

}  // namespace greenlink
