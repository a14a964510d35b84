#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "greenlink/linkbudget.hpp"
#include "greenlink/schemes.hpp"
#include "greenlink/solver.hpp"

namespace greenlink {

// Scenario files are JSON objects with the sections below. Every key is
// optional unless noted; unknown keys are rejected with ConfigError.
//
//   link    { distance_m, eta, gain_margin_db, l1_db, n0_db }
//   fading  { type: "rayleigh" | "rician" | "awgn", k_db (rician only), omega,
//             averaging: "mgf_bound" | "quadrature_exact" }
//   scheme  { id, m, payload_bits, bandwidth_hz, frame_period_s, transient_s,
//             target_ser, ook_duty }
//   circuit { p_sy, p_filt_tx, p_filt_rx, p_lna, p_ed, p_ifa, p_adc, p_dac,
//             p_mix, p_pg, p_int (watts), alpha_fixed }
//   sweep   { schemes, m, distance_m, k_db, bandwidth_efficiency }  (arrays)
//
// Scheme and circuit fields left out take the defaults of the scheme's
// category (pass-band or UWB); dB fields are kept as written and converted
// when engine inputs are built.
struct LinkSection {
    double distance_m = 10.0;
    double eta = 3.5;
    double gain_margin_db = 40.0;
    double l1_db = 30.0;
    double n0_db = -180.0;

    bool operator==(const LinkSection&) const = default;
};

struct FadingSection {
    std::string type = "rayleigh";
    std::optional<double> k_db;
    double omega = 1.0;
    AveragingMethod averaging = AveragingMethod::MgfBound;

    bool operator==(const FadingSection&) const = default;
};

struct SchemeSection {
    std::optional<SchemeId> id;
    std::optional<long> m;
    std::optional<long> payload_bits;
    std::optional<double> bandwidth_hz;
    std::optional<double> frame_period_s;
    std::optional<double> transient_s;
    std::optional<double> target_ser;
    std::optional<double> ook_duty;

    bool operator==(const SchemeSection&) const = default;
};

struct SweepSection {
    std::optional<std::vector<SchemeId>> schemes;
    std::optional<std::vector<long>> m;
    std::optional<std::vector<double>> distance_m;
    std::optional<std::vector<double>> k_db;
    std::optional<std::vector<double>> bandwidth_efficiency;

    bool operator==(const SweepSection&) const = default;
};

struct Scenario {
    LinkSection link;
    FadingSection fading;
    SchemeSection scheme;
    std::map<std::string, double> circuit;  // overrides only
    std::optional<SweepSection> sweep;

    LinkBudget link_budget() const;
    FadingModel fading_model() const;
    // Category defaults with the scheme-section fields applied on top.
    SchemeConfig scheme_config(SchemeId id) const;
    CircuitProfile circuit_profile(SchemeId id) const;
    // The scheme named in the scheme section; ConfigError when absent.
    SchemeConfig primary_config() const;
    // ConfigError when there is no sweep section or an axis resolves empty.
    SweepSpec sweep_spec() const;

    bool operator==(const Scenario&) const = default;
};

Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario(const std::string& text);
Scenario load_scenario(const std::filesystem::path& path);

// Without a sweep section the scheme and circuit sections are written fully
// resolved for the named scheme; with one they are written as given, since
// resolved values differ per swept scheme. parse(serialize(s)) builds the
// same engine inputs as s.
nlohmann::json serialize_scenario(const Scenario& scenario);

std::string to_string(AveragingMethod method);

}  // namespace greenlink
