#include <cmath>

#include "doctest.h"
#include "greenlink/errors.hpp"
#include "greenlink/schemes.hpp"
#include "greenlink/solver.hpp"

using namespace greenlink;

namespace {

const double kLdN0 = 1e4 * std::pow(10.0, 3.5) * 1e3 * 1e-18;  // d = 10 m

EnergyBreakdown energy_at(SchemeId s, long m, const FadingModel& f = Rayleigh{},
                          double d = 10.0) {
    SchemeConfig cfg = default_scheme_config(s);
    cfg.m = m;
    LinkBudget lb;
    lb.distance_m = d;
    return total_energy(cfg, lb, f, CircuitProfile::defaults_for(category(s)));
}

}  // namespace

TEST_CASE("scheme names round-trip") {
    for (SchemeId s : kAllSchemes) CHECK(scheme_from_string(to_string(s)) == s);
    CHECK_FALSE(scheme_from_string("qpsk").has_value());
}

TEST_CASE("valid constellation sizes") {
    CHECK(is_valid_m(SchemeId::NcMfsk, 2));
    CHECK(is_valid_m(SchemeId::NcMfsk, 64));
    CHECK_FALSE(is_valid_m(SchemeId::NcMfsk, 6));
    CHECK_FALSE(is_valid_m(SchemeId::NcMfsk, 1));
    CHECK(is_valid_m(SchemeId::Mqam, 16));
    CHECK_FALSE(is_valid_m(SchemeId::Mqam, 8));
    CHECK_FALSE(is_valid_m(SchemeId::Mqam, 2));
    CHECK(is_valid_m(SchemeId::Doqpsk, 2));
    CHECK_FALSE(is_valid_m(SchemeId::Ook, 4));
    CHECK_THROWS_AS(validate_m(SchemeId::Mqam, 8), ConfigError);
}

TEST_CASE("NC-MFSK M=4 at 10 m, Rayleigh") {
    const auto e = energy_at(SchemeId::NcMfsk, 4);
    CHECK(e.feasible);
    CHECK(e.symbol_energy_j == doctest::Approx(2996.99977766660 * kLdN0).epsilon(1e-12));
    CHECK(e.symbol_energy_j == doctest::Approx(9.47734544444e-5).epsilon(1e-10));
    CHECK(e.transmit_j == doctest::Approx(0.51629545231).epsilon(1e-10));
    CHECK(e.circuit_j == doctest::Approx(0.014024704).epsilon(1e-10));
    CHECK(e.transient_j == doctest::Approx(8.75e-8).epsilon(1e-10));
    CHECK(e.total_j == doctest::Approx(0.5303202438).epsilon(1e-9));
    CHECK(e.total_j == doctest::Approx(e.transmit_j + e.circuit_j + e.transient_j).epsilon(1e-15));
}

TEST_CASE("other schemes at 10 m, Rayleigh") {
    CHECK(energy_at(SchemeId::Mqam, 4).total_j == doctest::Approx(0.74154384038592).epsilon(1e-10));
    CHECK(energy_at(SchemeId::Ook, 2).total_j == doctest::Approx(0.41974335494749).epsilon(1e-10));
    CHECK(energy_at(SchemeId::Mppm, 2).total_j == doctest::Approx(0.83948534089228).epsilon(1e-10));
    CHECK(energy_at(SchemeId::Doqpsk, 2).symbol_energy_j ==
          doctest::Approx(7495.45597480657 * kLdN0).epsilon(1e-11));
}

TEST_CASE("NC-MFSK M=4 at 10 m, Rician K = 10 dB, MGF bound") {
    const auto e = energy_at(SchemeId::NcMfsk, 4, Rician{db_to_linear(10.0), 1.0});
    CHECK(e.total_j == doctest::Approx(0.0205194498134507).epsilon(1e-8));
}

TEST_CASE("Rician MGF-bound SER root") {
    const double g = 37.700292408974107;
    CHECK(avg_ser_general(SchemeId::NcMfsk, 4, Rician{10.0, 1.0}, g, AveragingMethod::MgfBound) ==
          doctest::Approx(1e-3).epsilon(1e-12));
    SchemeConfig cfg = default_scheme_config(SchemeId::NcMfsk);
    cfg.m = 4;
    LinkBudget lb;
    const double et = required_symbol_energy(cfg, lb, Rician{10.0, 1.0});
    CHECK(avg_snr(lb, Rician{10.0, 1.0}, et).value == doctest::Approx(g).epsilon(1e-9));
}

TEST_CASE("exact Rayleigh averages of noncoherent orthogonal SER") {
    struct Case {
        long m;
        double gb;
        double expected;
    };
    const Case cases[] = {
        {2, 10.0, 1.0 / 12.0},
        {2, 1000.0, 1.0 / 1002.0},
        {4, 10.0, 0.14897698209718670},
        {4, 100.0, 0.017922913266940170},
        {16, 100.0, 0.032245338882823787},
        {64, 10.0, 0.34517935656593572},
        {64, 1000.0, 0.0047115952411227360},
    };
    for (const Case& c : cases) {
        CAPTURE(c.m);
        CAPTURE(c.gb);
        CHECK(avg_ser_general(SchemeId::NcMfsk, c.m, Rayleigh{}, c.gb,
                              AveragingMethod::QuadratureExact) ==
              doctest::Approx(c.expected).epsilon(1e-8));
        CHECK(avg_ser_closed(SchemeId::NcMfsk, c.m, c.gb) >= c.expected * (1.0 - 1e-12));
    }
}

TEST_CASE("closed forms bound the exact Rayleigh average") {
    for (SchemeId s : kAllSchemes) {
        for (long m : {2L, 4L, 16L, 64L}) {
            if (!is_valid_m(s, m)) continue;
            for (double gb : {10.0, 100.0, 1000.0}) {
                const double exact =
                    avg_ser_general(s, m, Rayleigh{}, gb, AveragingMethod::QuadratureExact);
                CAPTURE(to_string(s));
                CAPTURE(m);
                CAPTURE(gb);
                CHECK(avg_ser_closed(s, m, gb) >= exact * (1.0 - 1e-9));
            }
        }
    }
}

TEST_CASE("closed forms need Rayleigh") {
    CHECK_THROWS_AS(avg_ser_closed(SchemeId::NcMfsk, 4, Rician{3.0, 1.0}, 10.0), UnsupportedFading);
    CHECK_NOTHROW(avg_ser_closed(SchemeId::NcMfsk, 4, Rician{0.0, 1.0}, 10.0));
}

TEST_CASE("averaged SER decreases with SNR") {
    for (SchemeId s : kAllSchemes) {
        const long m = is_fixed_rate(s) ? 2 : 4;
        double prev = 1.0;
        for (double gb = 1.0; gb < 1e4; gb *= 3.0) {
            const double p = avg_ser_general(s, m, Rician{3.0, 1.0}, gb, AveragingMethod::MgfBound);
            CHECK(p <= prev);
            prev = p;
        }
    }
}

TEST_CASE("symbol energy grows with distance and shrinks with K") {
    for (SchemeId s : kAllSchemes) {
        const long m = is_fixed_rate(s) ? 2 : 4;
        double prev = 0.0;
        for (double d : {1.0, 5.0, 10.0, 50.0, 100.0}) {
            const double et = energy_at(s, m, Rayleigh{}, d).symbol_energy_j;
            CHECK(et > prev);
            prev = et;
        }
        const double ray = energy_at(s, m).symbol_energy_j;
        const double ric = energy_at(s, m, Rician{db_to_linear(10.0), 1.0}).symbol_energy_j;
        CHECK(ric < ray);
    }
}

TEST_CASE("active duration ordering") {
    SchemeConfig cfg = default_scheme_config(SchemeId::NcMfsk);
    double prev = 0.0;
    // M / log2 M: equal for M = 2 and 4, increasing after.
    for (long m : {2L, 4L, 8L, 16L, 64L}) {
        cfg.m = m;
        const double t = active_duration(cfg);
        if (m == 4) CHECK(t == doctest::Approx(prev));
        if (m > 4) CHECK(t > prev);
        prev = t;
    }
    cfg.m = 4;
    CHECK(active_duration(cfg) == doctest::Approx(4.0 * 8192 / (62500.0 * 2.0)));
    SchemeConfig q = default_scheme_config(SchemeId::Mqam);
    q.m = 16;
    const double t16 = active_duration(q);
    q.m = 64;
    CHECK(active_duration(q) < t16);
}

TEST_CASE("required energy is infeasible for an unreachable target") {
    // The OOK bound at zero SNR is 1/2.
    SchemeConfig cfg = default_scheme_config(SchemeId::Ook);
    cfg.target_ser = 0.6;
    CHECK_THROWS_AS(required_symbol_energy(cfg, LinkBudget{}, Rician{10.0, 1.0}), InfeasibleTarget);
    CHECK_THROWS_AS(required_symbol_energy(cfg, LinkBudget{}, Rayleigh{}), InfeasibleTarget);
}

TEST_CASE("loose Rician target below the Rayleigh range") {
    // The Rayleigh coefficient is negative here; the Rician root is near 3.
    SchemeConfig cfg = default_scheme_config(SchemeId::NcMfsk);
    cfg.m = 4;
    cfg.target_ser = 0.9;
    const FadingModel f = Rician{10.0, 1.0};
    const double et = required_symbol_energy(cfg, LinkBudget{}, f);
    const double gb = avg_snr(LinkBudget{}, f, et).value;
    CHECK(gb > 1.0);
    CHECK(design_avg_ser(SchemeId::NcMfsk, 4, f, gb) == doctest::Approx(0.9).epsilon(1e-9));
}

TEST_CASE("exact averaging asks for less energy than the bound") {
    SchemeConfig cfg = default_scheme_config(SchemeId::NcMfsk);
    cfg.m = 16;
    const FadingModel f = Rician{db_to_linear(10.0), 1.0};
    const double bound = required_symbol_energy(cfg, LinkBudget{}, f, AveragingMethod::MgfBound);
    const double exact =
        required_symbol_energy(cfg, LinkBudget{}, f, AveragingMethod::QuadratureExact);
    CHECK(exact < bound);
    const double gb = avg_snr(LinkBudget{}, f, exact).value;
    CHECK(avg_ser_general(SchemeId::NcMfsk, 16, f, gb, AveragingMethod::QuadratureExact) ==
          doctest::Approx(1e-3).epsilon(1e-6));
}

TEST_CASE("frame becomes infeasible when the active time exceeds the frame") {
    const auto e = energy_at(SchemeId::NcMfsk, 128);
    CHECK_FALSE(e.feasible);
    CHECK(energy_at(SchemeId::NcMfsk, 64).feasible);
}

TEST_CASE("largest constellation") {
    auto mm = [](SchemeId s) { return max_constellation(default_scheme_config(s)); };
    CHECK(mm(SchemeId::NcMfsk).b_max == 6);
    CHECK(mm(SchemeId::NcMfsk).m_max == 64);
    CHECK(mm(SchemeId::CoherentMfsk).b_max == 7);
    CHECK(mm(SchemeId::CoherentMfsk).m_max == 128);
    CHECK(mm(SchemeId::Mppm).b_max == 15);
    CHECK(mm(SchemeId::Mppm).m_max == 32768);

    // b_max fits and b_max + 1 does not.
    for (SchemeId s : {SchemeId::NcMfsk, SchemeId::CoherentMfsk, SchemeId::Mppm}) {
        SchemeConfig cfg = default_scheme_config(s);
        const auto r = max_constellation(cfg);
        cfg.m = r.m_max;
        CHECK(active_duration(cfg) <= cfg.frame_period_s - cfg.transient_s);
        cfg.m = 2 * r.m_max;
        CHECK(active_duration(cfg) > cfg.frame_period_s - cfg.transient_s);
    }
}

TEST_CASE("OOK energy with a sampled payload") {
    SchemeConfig cfg = default_scheme_config(SchemeId::Ook);
    const auto profile = CircuitProfile::uwb();
    const double half =
        ook_total_energy_sampled(cfg, LinkBudget{}, Rayleigh{}, profile, cfg.payload_bits / 2);
    CHECK(half == doctest::Approx(energy_at(SchemeId::Ook, 2).total_j).epsilon(1e-12));
    CHECK(ook_total_energy_sampled(cfg, LinkBudget{}, Rayleigh{}, profile, 0) < half);
}

TEST_CASE("config validation") {
    SchemeConfig cfg;
    cfg.target_ser = 0.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    cfg.target_ser = 1e-3;
    cfg.bandwidth_hz = -1.0;
    CHECK_THROWS_AS(validate(cfg), ConfigError);
    CircuitProfile p = CircuitProfile::pass_band();
    p.p_lna = -1.0;
    CHECK_THROWS_AS(validate(p), ConfigError);
}
