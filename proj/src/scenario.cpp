#include "greenlink/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "greenlink/errors.hpp"

namespace greenlink {

using nlohmann::json;

namespace {

const std::vector<std::string> kCircuitKeys = {"p_sy",  "p_filt_tx", "p_filt_rx", "p_lna",
                                               "p_ed",  "p_ifa",     "p_adc",     "p_dac",
                                               "p_mix", "p_pg",      "p_int",     "alpha_fixed"};

double* circuit_field(CircuitProfile& p, const std::string& key) {
    if (key == "p_sy") return &p.p_sy;
    if (key == "p_filt_tx") return &p.p_filt_tx;
    if (key == "p_filt_rx") return &p.p_filt_rx;
    if (key == "p_lna") return &p.p_lna;
    if (key == "p_ed") return &p.p_ed;
    if (key == "p_ifa") return &p.p_ifa;
    if (key == "p_adc") return &p.p_adc;
    if (key == "p_dac") return &p.p_dac;
    if (key == "p_mix") return &p.p_mix;
    if (key == "p_pg") return &p.p_pg;
    if (key == "p_int") return &p.p_int;
    if (key == "alpha_fixed") return &p.alpha_fixed;
    return nullptr;
}

void reject_unknown(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, value] : obj.items()) {
        const bool known = std::any_of(allowed.begin(), allowed.end(),
                                       [&](const char* a) { return key == a; });
        if (!known) throw ConfigError("unknown key '" + where + "." + key + "'");
    }
}

double get_number(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(path + ": must be finite");
    return x;
}

long get_integer(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
    return v.get<long>();
}

SchemeId get_scheme(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path + ": expected a scheme name");
    const auto id = scheme_from_string(v.get<std::string>());
    if (!id) {
        throw ConfigError(path + ": unknown scheme '" + v.get<std::string>() +
                          "' (nc_mfsk, coherent_mfsk, mqam, doqpsk, ook, mppm)");
    }
    return *id;
}

template <class T, class Get>
std::vector<T> get_array(const json& v, const std::string& path, Get get) {
    if (!v.is_array()) throw ConfigError(path + ": expected an array");
    if (v.empty()) throw ConfigError(path + ": sweep axis is empty");
    std::vector<T> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(get(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

AveragingMethod averaging_from_string(const std::string& s, const std::string& path) {
    if (s == "mgf_bound") return AveragingMethod::MgfBound;
    if (s == "quadrature_exact") return AveragingMethod::QuadratureExact;
    throw ConfigError(path + ": expected 'mgf_bound' or 'quadrature_exact'");
}

void parse_link(const json& j, LinkSection& link) {
    reject_unknown(j, "link", {"distance_m", "eta", "gain_margin_db", "l1_db", "n0_db"});
    if (j.contains("distance_m")) link.distance_m = get_number(j["distance_m"], "link.distance_m");
    if (j.contains("eta")) link.eta = get_number(j["eta"], "link.eta");
    if (j.contains("gain_margin_db")) {
        link.gain_margin_db = get_number(j["gain_margin_db"], "link.gain_margin_db");
    }
    if (j.contains("l1_db")) link.l1_db = get_number(j["l1_db"], "link.l1_db");
    if (j.contains("n0_db")) link.n0_db = get_number(j["n0_db"], "link.n0_db");
    if (!(link.distance_m > 0.0)) throw ConfigError("link.distance_m must be > 0");
    if (!(link.eta > 0.0)) throw ConfigError("link.eta must be > 0");
}

void parse_fading(const json& j, FadingSection& fading) {
    reject_unknown(j, "fading", {"type", "k_db", "omega", "averaging"});
    if (j.contains("type")) {
        if (!j["type"].is_string()) throw ConfigError("fading.type: expected a string");
        fading.type = j["type"].get<std::string>();
    }
    if (fading.type != "rayleigh" && fading.type != "rician" && fading.type != "awgn") {
        throw ConfigError("fading.type: expected rayleigh, rician or awgn, got '" + fading.type + "'");
    }
    if (j.contains("k_db")) fading.k_db = get_number(j["k_db"], "fading.k_db");
    if (fading.type == "rician" && !fading.k_db) throw ConfigError("fading.k_db is required for rician");
    if (fading.type != "rician" && fading.k_db) {
        throw ConfigError("fading.k_db only applies to rician fading");
    }
    if (j.contains("omega")) fading.omega = get_number(j["omega"], "fading.omega");
    if (!(fading.omega > 0.0)) throw ConfigError("fading.omega must be > 0");
    if (j.contains("averaging")) {
        if (!j["averaging"].is_string()) throw ConfigError("fading.averaging: expected a string");
        fading.averaging = averaging_from_string(j["averaging"].get<std::string>(), "fading.averaging");
    }
}

void parse_scheme(const json& j, SchemeSection& s) {
    reject_unknown(j, "scheme", {"id", "m", "payload_bits", "bandwidth_hz", "frame_period_s",
                                 "transient_s", "target_ser", "ook_duty"});
    if (j.contains("id")) s.id = get_scheme(j["id"], "scheme.id");
    if (j.contains("m")) s.m = get_integer(j["m"], "scheme.m");
    if (j.contains("payload_bits")) s.payload_bits = get_integer(j["payload_bits"], "scheme.payload_bits");
    if (j.contains("bandwidth_hz")) s.bandwidth_hz = get_number(j["bandwidth_hz"], "scheme.bandwidth_hz");
    if (j.contains("frame_period_s")) {
        s.frame_period_s = get_number(j["frame_period_s"], "scheme.frame_period_s");
    }
    if (j.contains("transient_s")) s.transient_s = get_number(j["transient_s"], "scheme.transient_s");
    if (j.contains("target_ser")) s.target_ser = get_number(j["target_ser"], "scheme.target_ser");
    if (j.contains("ook_duty")) s.ook_duty = get_number(j["ook_duty"], "scheme.ook_duty");
}

void parse_circuit(const json& j, std::map<std::string, double>& circuit) {
    if (!j.is_object()) throw ConfigError("circuit: expected an object");
    for (const auto& [key, value] : j.items()) {
        if (std::find(kCircuitKeys.begin(), kCircuitKeys.end(), key) == kCircuitKeys.end()) {
            throw ConfigError("unknown key 'circuit." + key + "'");
        }
        const double w = get_number(value, "circuit." + key);
        if (w < 0.0) throw ConfigError("circuit." + key + " must be >= 0");
        circuit[key] = w;
    }
}

void parse_sweep(const json& j, SweepSection& sw) {
    reject_unknown(j, "sweep", {"schemes", "m", "distance_m", "k_db", "bandwidth_efficiency"});
    if (j.contains("schemes")) {
        sw.schemes = get_array<SchemeId>(j["schemes"], "sweep.schemes", get_scheme);
    }
    if (j.contains("m")) sw.m = get_array<long>(j["m"], "sweep.m", get_integer);
    if (j.contains("distance_m")) {
        sw.distance_m = get_array<double>(j["distance_m"], "sweep.distance_m", get_number);
    }
    if (j.contains("k_db")) sw.k_db = get_array<double>(j["k_db"], "sweep.k_db", get_number);
    if (j.contains("bandwidth_efficiency")) {
        sw.bandwidth_efficiency =
            get_array<double>(j["bandwidth_efficiency"], "sweep.bandwidth_efficiency", get_number);
    }
}

}  // namespace

std::string to_string(AveragingMethod method) {
    return method == AveragingMethod::MgfBound ? "mgf_bound" : "quadrature_exact";
}

LinkBudget Scenario::link_budget() const {
    LinkBudget lb;
    lb.distance_m = link.distance_m;
    lb.path_loss_exponent = link.eta;
    lb.gain_margin = db_to_linear(link.gain_margin_db);
    lb.reference_gain = db_to_linear(link.l1_db);
    lb.noise_psd = db_to_linear(link.n0_db);
    return lb;
}

FadingModel Scenario::fading_model() const {
    if (fading.type == "rician") return Rician{db_to_linear(fading.k_db.value_or(0.0)), fading.omega};
    if (fading.type == "awgn") return Awgn{fading.omega};
    return Rayleigh{fading.omega};
}

SchemeConfig Scenario::scheme_config(SchemeId id) const {
    SchemeConfig cfg = default_scheme_config(id);
    if (scheme.m && scheme.id == id) cfg.m = *scheme.m;
    if (scheme.payload_bits) cfg.payload_bits = *scheme.payload_bits;
    if (scheme.bandwidth_hz) cfg.bandwidth_hz = *scheme.bandwidth_hz;
    if (scheme.frame_period_s) cfg.frame_period_s = *scheme.frame_period_s;
    if (scheme.transient_s) cfg.transient_s = *scheme.transient_s;
    if (scheme.target_ser) cfg.target_ser = *scheme.target_ser;
    if (scheme.ook_duty) cfg.ook_duty = *scheme.ook_duty;
    return cfg;
}

CircuitProfile Scenario::circuit_profile(SchemeId id) const {
    CircuitProfile p = CircuitProfile::defaults_for(category(id));
    for (const auto& [key, value] : circuit) *circuit_field(p, key) = value;
    return p;
}

SchemeConfig Scenario::primary_config() const {
    if (!scheme.id) throw ConfigError("scheme.id is required");
    SchemeConfig cfg = scheme_config(*scheme.id);
    validate(cfg);
    return cfg;
}

SweepSpec Scenario::sweep_spec() const {
    if (!sweep) throw ConfigError("scenario has no sweep section");
    SweepSpec spec;
    if (sweep->schemes) {
        spec.schemes = *sweep->schemes;
    } else if (scheme.id) {
        spec.schemes = {*scheme.id};
    } else {
        throw ConfigError("sweep.schemes missing and no scheme.id to fall back on");
    }
    if (sweep->m) {
        spec.m_values = *sweep->m;
    } else if (scheme.m) {
        spec.m_values = {*scheme.m};
    } else if (std::all_of(spec.schemes.begin(), spec.schemes.end(), is_fixed_rate)) {
        spec.m_values = {2};
    } else {
        throw ConfigError("sweep.m missing and no scheme.m to fall back on");
    }
    spec.distances_m = sweep->distance_m.value_or(std::vector<double>{link.distance_m});
    spec.k_db = sweep->k_db.value_or(std::vector<double>{});
    spec.bandwidth_efficiency = sweep->bandwidth_efficiency.value_or(std::vector<double>{});
    for (SchemeId id : spec.schemes) {
        spec.configs[id] = scheme_config(id);
        spec.circuits[id] = circuit_profile(id);
    }
    spec.link = link_budget();
    spec.fading = fading_model();
    spec.method = fading.averaging;
    return spec;
}

Scenario parse_scenario(const json& doc) {
    reject_unknown(doc, "scenario", {"link", "fading", "scheme", "circuit", "sweep"});
    Scenario s;
    if (doc.contains("link")) parse_link(doc["link"], s.link);
    if (doc.contains("fading")) parse_fading(doc["fading"], s.fading);
    if (doc.contains("scheme")) parse_scheme(doc["scheme"], s.scheme);
    if (doc.contains("circuit")) parse_circuit(doc["circuit"], s.circuit);
    if (doc.contains("sweep")) {
        s.sweep.emplace();
        parse_sweep(doc["sweep"], *s.sweep);
    }
    if (s.scheme.m && s.scheme.id) validate_m(*s.scheme.id, *s.scheme.m);
    return s;
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario is not valid JSON: ") + e.what());
    }
    return parse_scenario(doc);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

json serialize_scenario(const Scenario& s) {
    json doc;
    doc["link"] = {{"distance_m", s.link.distance_m},
                   {"eta", s.link.eta},
                   {"gain_margin_db", s.link.gain_margin_db},
                   {"l1_db", s.link.l1_db},
                   {"n0_db", s.link.n0_db}};
    json fading = {{"type", s.fading.type}, {"omega", s.fading.omega},
                   {"averaging", to_string(s.fading.averaging)}};
    if (s.fading.k_db) fading["k_db"] = *s.fading.k_db;
    doc["fading"] = fading;

    json scheme = json::object();
    json circuit = json::object();
    if (!s.sweep && s.scheme.id) {
        const SchemeConfig cfg = s.scheme_config(*s.scheme.id);
        scheme = {{"id", std::string(to_string(cfg.scheme))},
                  {"m", cfg.m},
                  {"payload_bits", cfg.payload_bits},
                  {"bandwidth_hz", cfg.bandwidth_hz},
                  {"frame_period_s", cfg.frame_period_s},
                  {"transient_s", cfg.transient_s},
                  {"target_ser", cfg.target_ser},
                  {"ook_duty", cfg.ook_duty}};
        CircuitProfile p = s.circuit_profile(*s.scheme.id);
        for (const auto& key : kCircuitKeys) circuit[key] = *circuit_field(p, key);
    } else {
        if (s.scheme.id) scheme["id"] = std::string(to_string(*s.scheme.id));
        if (s.scheme.m) scheme["m"] = *s.scheme.m;
        if (s.scheme.payload_bits) scheme["payload_bits"] = *s.scheme.payload_bits;
        if (s.scheme.bandwidth_hz) scheme["bandwidth_hz"] = *s.scheme.bandwidth_hz;
        if (s.scheme.frame_period_s) scheme["frame_period_s"] = *s.scheme.frame_period_s;
        if (s.scheme.transient_s) scheme["transient_s"] = *s.scheme.transient_s;
        if (s.scheme.target_ser) scheme["target_ser"] = *s.scheme.target_ser;
        if (s.scheme.ook_duty) scheme["ook_duty"] = *s.scheme.ook_duty;
        for (const auto& [key, value] : s.circuit) circuit[key] = value;
    }
    doc["scheme"] = scheme;
    doc["circuit"] = circuit;

    if (s.sweep) {
        json sw = json::object();
        if (s.sweep->schemes) {
            json names = json::array();
            for (SchemeId id : *s.sweep->schemes) names.push_back(std::string(to_string(id)));
            sw["schemes"] = names;
        }
        if (s.sweep->m) sw["m"] = *s.sweep->m;
        if (s.sweep->distance_m) sw["distance_m"] = *s.sweep->distance_m;
        if (s.sweep->k_db) sw["k_db"] = *s.sweep->k_db;
        if (s.sweep->bandwidth_efficiency) sw["bandwidth_efficiency"] = *s.sweep->bandwidth_efficiency;
        doc["sweep"] = sw;
    }
    return doc;
}

}  // namespace greenlink
