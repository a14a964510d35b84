#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "greenlink/montecarlo.hpp"
#include "greenlink/solver.hpp"

namespace greenlink {

struct ReportRow {
    SchemeId scheme = SchemeId::NcMfsk;
    long m = 2;
    double d_m = 0.0;
    std::string fading_desc;
    std::optional<double> k_db;
    double target_ser = 0.0;
    double t_ac_s = 0.0;
    double e_t_j = 0.0;
    double e_tx_j = 0.0;
    double e_circ_j = 0.0;
    double e_trans_j = 0.0;
    double e_total_j = 0.0;
    double gamma_bar = 0.0;
    bool feasible = false;
    std::optional<std::string> error;
};

ReportRow make_report_row(const SweepRow& row);

inline constexpr const char* kCsvHeader =
    "scheme,m,d_m,k_db,target_ser,t_ac_s,e_t_j,e_tx_j,e_circ_j,e_trans_j,e_total_j,feasible";

// %.9g
std::string format_number(double x);

// Header plus one line per row. Energy fields are left blank on rows that
// carry an error.
void write_csv(std::ostream& out, const std::vector<ReportRow>& rows);

nlohmann::json to_json(const ReportRow& row);
nlohmann::json sweep_to_json(const SweepResult& result);

// Fixed-width two-line table for a single row.
void write_human(std::ostream& out, const ReportRow& row);

void write_verify_text(std::ostream& out, const std::vector<VerifyRow>& rows);
nlohmann::json verify_to_json(const std::vector<VerifyRow>& rows);

}  // namespace greenlink
