#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "greenlink/bisect.hpp"
#include "greenlink/linkbudget.hpp"
#include "greenlink/schemes.hpp"

namespace greenlink {

// Baseline for one scheme: pass-band N = 8192, B = 62.5 kHz, T_N = 1.4 s
// (T_tr 5 us for MFSK, 20 us for MQAM/DOQPSK) or UWB N = 20000, B = 500 MHz,
// T_N = 100 ms, T_tr = 2 ns. M is the smallest valid size.
SchemeConfig default_scheme_config(SchemeId scheme);

struct SweepSpec {
    std::vector<SchemeId> schemes;
    std::vector<long> m_values;
    std::vector<double> distances_m;
    std::vector<double> k_db;                   // empty: use `fading` as given
    std::vector<double> bandwidth_efficiency;  // empty: scheme default (OOK duty)

    // Per-scheme baselines; schemes missing here get default_scheme_config
    // and CircuitProfile::defaults_for(category).
    std::map<SchemeId, SchemeConfig> configs;
    std::map<SchemeId, CircuitProfile> circuits;
    LinkBudget link;
    FadingModel fading = Rayleigh{};
    AveragingMethod method = AveragingMethod::MgfBound;

    SchemeConfig config_for(SchemeId scheme) const;
    CircuitProfile circuit_for(SchemeId scheme) const;
};

struct SweepRow {
    SchemeId scheme = SchemeId::NcMfsk;
    long m = 2;
    double distance_m = 0.0;
    std::optional<double> k_db;
    std::optional<double> bandwidth_efficiency;
    FadingModel fading = Rayleigh{};
    double target_ser = 0.0;
    EnergyBreakdown energy;
    bool feasible = false;
    std::string error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    std::vector<std::string> notes;  // skipped or collapsed axis values
};

// Axes iterate scheme, M, distance, K, bandwidth efficiency (outermost first).
// Fixed-rate schemes collapse the M axis to one M = 2 entry and MQAM skips
// sizes that are not powers of 4; both are reported in `notes`. A size that
// is not a power of two, or an empty scheme/M/distance axis, throws
// ConfigError. Per-cell failures are kept as rows with `error` set.
SweepResult sweep(const SweepSpec& spec);

struct OptimumReport {
    long best_m = 0;
    double best_total_j = 0.0;
    std::vector<long> m_values;
    std::vector<EnergyBreakdown> breakdowns;
    std::vector<bool> feasible;
};

// Exhaustive search over spec.m_values for spec.schemes[0] at
// spec.distances_m[0] (and spec.k_db[0] when given). Ties go to the smaller M.
// Throws NoFeasibleConfiguration when no M is feasible.
OptimumReport optimal_m(const SweepSpec& spec);

struct EfficiencyRow {
    long m = 2;
    double bandwidth_efficiency = 0.0;
    double distance_m = 0.0;
    double total_j = 0.0;
    bool feasible = false;
};

// NC-MFSK energy keyed by log2(M)/M; M outer, distance inner.
std::vector<EfficiencyRow> energy_vs_bandwidth_efficiency(const SweepSpec& spec);

}  // namespace greenlink
