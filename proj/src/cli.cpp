#include "greenlink/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"

#include "greenlink/errors.hpp"
#include "greenlink/montecarlo.hpp"
#include "greenlink/report.hpp"
#include "greenlink/scenario.hpp"

namespace greenlink::cli {
namespace {

struct Options {
    std::string scenario;
    bool json = false;
    std::string out_path;
    std::uint64_t seed = 42;
    long samples = 100000;
    double bound_scale = 1.0;
};

// Writes to --out when given, else to `out`.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : fallback_(fallback) {
        if (!path.empty()) {
            file_.emplace(path, std::ios::binary);
            if (!*file_) throw ConfigError("cannot open output file " + path);
        }
    }
    std::ostream& stream() { return file_ ? *file_ : fallback_; }

private:
    std::ostream& fallback_;
    std::optional<std::ofstream> file_;
};

int cmd_energy(const Options& opt, std::ostream& out) {
    const Scenario sc = load_scenario(opt.scenario);
    const SchemeConfig cfg = sc.primary_config();
    SweepRow row;
    row.scheme = cfg.scheme;
    row.m = cfg.m;
    row.distance_m = sc.link.distance_m;
    row.fading = sc.fading_model();
    if (sc.fading.k_db) row.k_db = sc.fading.k_db;
    row.target_ser = cfg.target_ser;
    row.energy = total_energy(cfg, sc.link_budget(), row.fading, sc.circuit_profile(cfg.scheme),
                              sc.fading.averaging);
    row.feasible = row.energy.feasible;
    const ReportRow report = make_report_row(row);
    Sink sink(opt.out_path, out);
    if (opt.json) {
        sink.stream() << to_json(report).dump(2) << '\n';
    } else {
        write_human(sink.stream(), report);
    }
    return report.feasible ? kOk : kInfeasible;
}

int cmd_sweep(const Options& opt, std::ostream& out) {
    const Scenario sc = load_scenario(opt.scenario);
    const SweepResult result = sweep(sc.sweep_spec());
    Sink sink(opt.out_path, out);
    if (opt.json) {
        sink.stream() << sweep_to_json(result).dump(2) << '\n';
    } else {
        std::vector<ReportRow> rows;
        for (const SweepRow& r : result.rows) rows.push_back(make_report_row(r));
        write_csv(sink.stream(), rows);
    }
    return kOk;
}

int cmd_mmax(const Options& opt, std::ostream& out) {
    const Scenario sc = load_scenario(opt.scenario);
    const SchemeConfig cfg = sc.primary_config();
    const MaxConstellation mc = max_constellation(cfg);
    Sink sink(opt.out_path, out);
    if (opt.json) {
        const nlohmann::json j = {{"scheme", std::string(to_string(cfg.scheme))},
                                  {"b_max", mc.b_max},
                                  {"m_max", mc.m_max}};
        sink.stream() << j.dump(2) << '\n';
    } else {
        sink.stream() << "b_max " << mc.b_max << "\nm_max " << mc.m_max << '\n';
    }
    return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out) {
    if (!opt.scenario.empty()) throw ConfigError("verify takes no scenario file");
    VerifyGrid grid;
    grid.seed = opt.seed;
    grid.samples = opt.samples;
    grid.bound_scale = opt.bound_scale;
    const auto rows = verify_bounds(grid);
    Sink sink(opt.out_path, out);
    if (opt.json) {
        sink.stream() << verify_to_json(rows).dump(2) << '\n';
    } else {
        write_verify_text(sink.stream(), rows);
    }
    if (std::any_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return !r.error.empty(); })) {
        return kNumericalFailure;
    }
    const bool all_pass = std::all_of(rows.begin(), rows.end(), [](const VerifyRow& r) { return r.pass; });
    return all_pass ? kOk : kInfeasible;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Per-frame energy model for sensor-node modulation schemes", "greenlink"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub, bool takes_scenario) {
        if (takes_scenario) {
            sub->add_option("scenario", opt.scenario, "Scenario JSON file")->required();
        }
        sub->add_flag("--json", opt.json, "Emit JSON instead of text/CSV");
        sub->add_option("--out", opt.out_path, "Write output to PATH");
    };
    CLI::App* energy = app.add_subcommand("energy", "Energy breakdown for one configuration");
    add_common(energy, true);
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "Evaluate the scenario's sweep grid");
    add_common(sweep_cmd, true);
    CLI::App* mmax = app.add_subcommand("mmax", "Largest constellation fitting the frame budget");
    add_common(mmax, true);
    CLI::App* verify = app.add_subcommand("verify", "Check every SER bound against exact averages");
    add_common(verify, false);
    verify->add_option("--seed", opt.seed, "Sampling seed");
    verify->add_option("--samples", opt.samples, "Monte Carlo draws per cell");
    verify->add_option("--bound-scale", opt.bound_scale)->group("");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kConfigError;
    }

    try {
        if (verify->parsed() && opt.samples < kMinMcSamples) {
            throw ConfigError("--samples must be at least " + std::to_string(kMinMcSamples));
        }
        if (energy->parsed()) return cmd_energy(opt, out);
        if (sweep_cmd->parsed()) return cmd_sweep(opt, out);
        if (mmax->parsed()) return cmd_mmax(opt, out);
        return cmd_verify(opt, out);
    } catch (const ConfigError& e) {
        err << "greenlink: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InfeasibleTarget& e) {
        err << "greenlink: config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const NoFeasibleConfiguration& e) {
        err << "greenlink: infeasible: " << e.what() << '\n';
        return kInfeasible;
    } catch (const NumericalFailure& e) {
        err << "greenlink: numerical failure: " << e.what() << '\n';
        return kNumericalFailure;
    } catch (const DomainError& e) {
        err << "greenlink: config error: " << e.what() << '\n';
        return kConfigError;
    }
}

}  // namespace greenlink::cli
