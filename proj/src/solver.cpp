#include "greenlink/solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "greenlink/errors.hpp"

namespace greenlink {
namespace {

std::string fmt_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

bool is_power_of_two(long m) { return m >= 2 && (m & (m - 1)) == 0; }

void evaluate_cell(const SweepSpec& spec, SweepRow& row) {
    SchemeConfig cfg = spec.config_for(row.scheme);
    cfg.m = row.m;
    if (row.bandwidth_efficiency) {
        if (row.scheme != SchemeId::Ook) {
            row.error = "bandwidth efficiency is fixed by M for " + std::string(to_string(row.scheme));
            return;
        }
        cfg.ook_duty = *row.bandwidth_efficiency;
    }
    row.target_ser = cfg.target_ser;
    LinkBudget lb = spec.link;
    lb.distance_m = row.distance_m;
    try {
        validate(cfg);
        row.energy.t_active_s = active_duration(cfg);
        row.energy = total_energy(cfg, lb, row.fading, spec.circuit_for(row.scheme), spec.method);
        row.feasible = row.energy.feasible;
    } catch (const InfeasibleTarget& e) {
        row.error = e.what();
    } catch (const NumericalFailure& e) {
        row.error = e.what();
    } catch (const DomainError& e) {
        row.error = e.what();
    } catch (const ConfigError& e) {
        row.error = e.what();
    }
}

}  // namespace

SchemeConfig default_scheme_config(SchemeId scheme) {
    SchemeConfig cfg;
    cfg.scheme = scheme;
    cfg.m = scheme == SchemeId::Mqam ? 4 : 2;
    cfg.target_ser = 1e-3;
    cfg.ook_duty = 0.5;
    if (category(scheme) == SchemeCategory::Uwb) {
        cfg.payload_bits = 20000;
        cfg.bandwidth_hz = 5e8;
        cfg.frame_period_s = 0.1;
        cfg.transient_s = 2e-9;
    } else {
        cfg.payload_bits = 8192;
        cfg.bandwidth_hz = 62500.0;
        cfg.frame_period_s = 1.4;
        const bool mfsk = scheme == SchemeId::NcMfsk || scheme == SchemeId::CoherentMfsk;
        cfg.transient_s = mfsk ? 5e-6 : 20e-6;
    }
    return cfg;
}

SchemeConfig SweepSpec::config_for(SchemeId scheme) const {
    if (auto it = configs.find(scheme); it != configs.end()) return it->second;
    return default_scheme_config(scheme);
}

CircuitProfile SweepSpec::circuit_for(SchemeId scheme) const {
    if (auto it = circuits.find(scheme); it != circuits.end()) return it->second;
    return CircuitProfile::defaults_for(category(scheme));
}

SweepResult sweep(const SweepSpec& spec) {
    if (spec.schemes.empty()) throw ConfigError("sweep: scheme axis is empty");
    if (spec.m_values.empty()) throw ConfigError("sweep: M axis is empty");
    if (spec.distances_m.empty()) throw ConfigError("sweep: distance axis is empty");
    for (long m : spec.m_values) {
        if (!is_power_of_two(m)) {
            throw ConfigError("sweep: M=" + std::to_string(m) + " is not a power of two");
        }
    }
    for (double d : spec.distances_m) {
        if (!(d > 0.0) || !std::isfinite(d)) throw ConfigError("sweep: distances must be > 0");
    }
    for (double k : spec.k_db) {
        if (!std::isfinite(k)) throw ConfigError("sweep: K values must be finite");
    }
    validate(spec.fading);

    std::vector<FadingModel> fadings;
    std::vector<std::optional<double>> k_labels;
    if (spec.k_db.empty()) {
        fadings.push_back(spec.fading);
        k_labels.push_back(std::nullopt);
    } else {
        for (double k : spec.k_db) {
            fadings.push_back(Rician{db_to_linear(k), mean_square_gain(spec.fading)});
            k_labels.push_back(k);
        }
    }
    std::vector<std::optional<double>> beffs;
    if (spec.bandwidth_efficiency.empty()) {
        beffs.push_back(std::nullopt);
    } else {
        for (double b : spec.bandwidth_efficiency) beffs.push_back(b);
    }

    SweepResult result;
    for (SchemeId scheme : spec.schemes) {
        std::vector<long> ms;
        if (is_fixed_rate(scheme)) {
            ms.push_back(2);
            if (spec.m_values.size() != 1 || spec.m_values.front() != 2) {
                result.notes.push_back(std::string(to_string(scheme)) +
                                       ": fixed-rate scheme, M axis collapsed to M=2");
            }
        } else {
            for (long m : spec.m_values) {
                if (is_valid_m(scheme, m)) {
                    ms.push_back(m);
                } else {
                    result.notes.push_back(std::string(to_string(scheme)) + ": skipped M=" +
                                           std::to_string(m) + " (not a power of 4)");
                }
            }
        }
        for (long m : ms) {
            for (double d : spec.distances_m) {
                for (std::size_t f = 0; f < fadings.size(); ++f) {
                    for (const auto& beff : beffs) {
                        SweepRow row;
                        row.scheme = scheme;
                        row.m = m;
                        row.distance_m = d;
                        row.k_db = k_labels[f];
                        row.fading = fadings[f];
                        row.bandwidth_efficiency = beff;
                        evaluate_cell(spec, row);
                        result.rows.push_back(std::move(row));
                    }
                }
            }
        }
    }
    return result;
}

OptimumReport optimal_m(const SweepSpec& spec) {
    if (spec.schemes.empty() || spec.m_values.empty() || spec.distances_m.empty()) {
        throw ConfigError("optimal_m: scheme, M and distance must be given");
    }
    SweepSpec one = spec;
    one.schemes = {spec.schemes.front()};
    one.distances_m = {spec.distances_m.front()};
    if (!spec.k_db.empty()) one.k_db = {spec.k_db.front()};
    one.bandwidth_efficiency.clear();
    std::sort(one.m_values.begin(), one.m_values.end());
    one.m_values.erase(std::unique(one.m_values.begin(), one.m_values.end()), one.m_values.end());

    const SweepResult swept = sweep(one);
    OptimumReport report;
    bool found = false;
    for (const SweepRow& row : swept.rows) {
        const bool ok = row.feasible && row.error.empty();
        report.m_values.push_back(row.m);
        report.breakdowns.push_back(row.energy);
        report.feasible.push_back(ok);
        if (ok && (!found || row.energy.total_j < report.best_total_j)) {
            report.best_m = row.m;
            report.best_total_j = row.energy.total_j;
            found = true;
        }
    }
    if (!found) {
        throw NoFeasibleConfiguration("optimal_m: no feasible M for " +
                                      std::string(to_string(one.schemes.front())) + " at d=" +
                                      fmt_double(one.distances_m.front()) + " m");
    }
    return report;
}

std::vector<EfficiencyRow> energy_vs_bandwidth_efficiency(const SweepSpec& spec) {
    for (SchemeId s : spec.schemes) {
        if (s != SchemeId::NcMfsk) {
            throw ConfigError("energy_vs_bandwidth_efficiency: only nc_mfsk is supported");
        }
    }
    SweepSpec nc = spec;
    nc.schemes = {SchemeId::NcMfsk};
    nc.bandwidth_efficiency.clear();
    const SweepResult swept = sweep(nc);
    std::vector<EfficiencyRow> out;
    for (const SweepRow& row : swept.rows) {
        EfficiencyRow e;
        e.m = row.m;
        e.bandwidth_efficiency = bandwidth_efficiency(SchemeId::NcMfsk, row.m);
        e.distance_m = row.distance_m;
        e.total_j = row.energy.total_j;
        e.feasible = row.feasible && row.error.empty();
        out.push_back(e);
    }
    return out;
}

}  // namespace greenlink
