#include <cmath>
#include <vector>

#include "doctest.h"
#include "otalg/analysis.hpp"
#include "otalg/config.hpp"
#include "otalg/errors.hpp"
#include "otalg/simulation.hpp"

using namespace otalg;

TEST_CASE("minimum feasible flight time") {
    Environment env;
    LanderState s;
    s.m = 1905.0;
    s.v = {0.0, 0.0, -80.0};
    s.r = {0.0, 0.0, 2500.0};
    CHECK(t_f_min(s, env) == doctest::Approx(6.368632761943559).epsilon(1e-9));

    s.v = {};
    s.r = {};
    CHECK(t_f_min(s, env) == 0.0);

    Environment weak = env;
    weak.T_max = 1000.0;  // T/m < g
    CHECK_THROWS_AS(t_f_min(s, weak), ConfigError);

    const Scenario sc = default_config().scenario;
    CHECK(sc.guidance.t_f >= t_f_min(sc.initial, sc.env));
}

TEST_CASE("hover-feasible case: every law commands gravity compensation") {
    for (const auto law : {GuidanceLaw::Ogl, GuidanceLaw::Otalg, GuidanceLaw::MssOtalg}) {
        Scenario sc = default_config().scenario;
        sc.law = law;
        sc.initial.r = {0.0, 0.0, 2500.0};
        sc.initial.v = {};
        sc.guidance.r_target = {0.0, 0.0, 2500.0};
        sc.guidance.t_f = 5.0;
        sc.env.actuator_tau = 0.0;
        sc.env.thrust_noise_frac = 0.0;
        const TrajectoryLog log = run_simulation(sc);
        REQUIRE(log.size() == 500);  // runs out the clock, no altitude stop
        CHECK(log.a_cmd[0].z == doctest::Approx(3.7114).epsilon(2e-2));
        CHECK(std::abs(log.a_cmd[0].x) < 0.05);
        const Vec3 miss = log.final_state.r - sc.guidance.r_target;
        CHECK(miss.norm() < 0.05);
        CHECK(log.final_state.v.norm() < 0.05);
    }
}

TEST_CASE("nominal descent lands softly and safely") {
    Scenario sc = default_config().scenario;
    const TrajectoryLog log = run_simulation(sc);
    CHECK(log.status == RunStatus::Ok);
    CHECK(log.final_state.r.z <= sc.termination_altitude);
    CHECK(log.summary.flight_time < sc.guidance.t_f);
    CHECK(log.summary.dm > 300.0);
    CHECK(log.summary.dm < 450.0);
    CHECK(std::abs(log.summary.dx) < 0.05);
    CHECK(count_terrain_violations(log, sc.terrain) == 0);

    SUBCASE("logged series are uniform in dt and within the clock") {
        for (std::size_t k = 0; k < log.size(); ++k) {
            CHECK(log.t[k] == doctest::Approx(k * sc.dt).epsilon(1e-9));
        }
        CHECK(log.t.back() <= sc.guidance.t_f - sc.dt / 2);
        CHECK(log.r.size() == log.size());
        CHECK(log.phi.size() == log.size());
        CHECK(log.d.size() == log.size());
    }
    SUBCASE("mass never increases and the thrust ceiling holds") {
        for (std::size_t k = 1; k < log.size(); ++k) {
            CHECK(log.m[k] <= log.m[k - 1]);
        }
        const double cap = sc.env.T_max * (1.0 + sc.env.thrust_noise_frac) + 1e-9;
        for (std::size_t k = 0; k < log.size(); ++k) {
            CHECK(log.a_applied[k].norm() * log.m[k] <= cap);
        }
    }
    SUBCASE("fuel equals the integrated mass flow") {
        double used = 0.0;
        for (std::size_t k = 0; k + 1 < log.size(); ++k) {
            const double f0 = log.a_applied[k].norm() * log.m[k];
            const double f1 = log.a_applied[k + 1].norm() * log.m[k + 1];
            used += 0.5 * (f0 + f1) * sc.dt / (sc.env.I_sp * sc.env.g_e);
        }
        // final step to the post-step state
        used += log.a_applied.back().norm() * log.m.back() * sc.dt / (sc.env.I_sp * sc.env.g_e);
        CHECK(std::abs(used - log.summary.dm) / log.summary.dm < 1e-3);
    }
}

TEST_CASE("identical seed and scenario reproduce the log bit for bit") {
    Scenario sc = default_config().scenario;
    sc.guidance.t_f = 30.0;  // shorter run keeps the test quick
    const TrajectoryLog a = run_simulation(sc);
    const TrajectoryLog b = run_simulation(sc);
    REQUIRE(a.size() == b.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.r[k].x == b.r[k].x);
        CHECK(a.v[k].z == b.v[k].z);
        CHECK(a.a_applied[k].y == b.a_applied[k].y);
        CHECK(a.m[k] == b.m[k]);
    }
    Scenario other = sc;
    other.seed = sc.seed + 1;
    const TrajectoryLog c = run_simulation(other);
    bool all_equal = a.size() == c.size();
    if (all_equal) {
        for (std::size_t k = 0; k < a.size(); ++k) {
            if (a.a_applied[k].x != c.a_applied[k].x) {
                all_equal = false;
                break;
            }
        }
    }
    CHECK_FALSE(all_equal);
}

TEST_CASE("fuel depletion is reported, not thrown") {
    Scenario sc = default_config().scenario;
    sc.env.dry_mass = 1903.0;  // nearly no propellant
    const TrajectoryLog log = run_simulation(sc);
    CHECK(log.status == RunStatus::FuelDepleted);
    CHECK(log.final_state.m <= sc.env.dry_mass);
    CHECK(log.size() > 0);
}

TEST_CASE("initial-condition draws") {
    Dispersion disp;
    Rng rng(7);
    SUBCASE("pinned mass column") {
        for (int i = 0; i < 100; ++i) {
            CHECK(draw_initial_conditions(disp, rng).m == 1905.0);
        }
    }
    SUBCASE("altitude sample mean within standard-error bounds") {
        const int n = 300;
        double sum = 0.0;
        for (int i = 0; i < n; ++i) {
            sum += draw_initial_conditions(disp, rng).r.z;
        }
        const double se = 400.0 / std::sqrt(static_cast<double>(n));
        CHECK(std::abs(sum / n - 2500.0) < 3.0 * se);
    }
    SUBCASE("non-positive altitude draws are rejected") {
        Dispersion low;
        low.z0 = {1.0, 400.0};  // most draws fall below zero
        int rejections = 0;
        const LanderState s = draw_initial_conditions(low, rng, &rejections);
        CHECK(s.r.z > 0.0);
        CHECK(rejections >= 0);
    }
}

TEST_CASE("campaign statistics") {
    McConfig mc;
    mc.base = default_config().scenario;
    mc.base.guidance.t_f = 40.0;
    mc.base.initial.r = {200.0, -100.0, 1200.0};
    mc.base.initial.v = {-20.0, 5.0, -30.0};
    mc.n_runs = 8;
    mc.master_seed = 99;

    SUBCASE("identical scenarios collapse the spread to zero") {
        McConfig fixed = mc;
        fixed.dispersion = Dispersion{{0, 0}, {0, 0}, {1200.0, 0.0}, {0, 0}, {0, 0}, {-30.0, 0.0},
                                      {1905.0, 0.0}};
        fixed.base.env.thrust_noise_frac = 0.0;
        const McResult res = run_monte_carlo(fixed);
        CHECK(res.stats.n == 8);
        CHECK(res.stats.dm.sd == 0.0);
        CHECK(res.stats.dx.sd == 0.0);
        CHECK(res.stats.dvz.sd == 0.0);
    }
    SUBCASE("bit-identical results for a repeated master seed and common draws across laws") {
        const McResult a = run_monte_carlo(mc);
        const McResult b = run_monte_carlo(mc);
        CHECK(a.stats.dm.mean == b.stats.dm.mean);
        CHECK(a.stats.dvz.sd == b.stats.dvz.sd);
        McConfig other_law = mc;
        other_law.base.law = GuidanceLaw::Otalg;
        const McResult c = run_monte_carlo(other_law);
        REQUIRE(c.runs.size() == a.runs.size());
        for (std::size_t i = 0; i < a.runs.size(); ++i) {
            CHECK(a.runs[i].initial.r.x == c.runs[i].initial.r.x);
            CHECK(a.runs[i].initial.v.z == c.runs[i].initial.v.z);
        }
    }
    SUBCASE("thread count does not change the results") {
        McConfig serial = mc;
        serial.threads = 1;
        McConfig wide = mc;
        wide.threads = 4;
        const McResult a = run_monte_carlo(serial);
        const McResult b = run_monte_carlo(wide);
        CHECK(a.stats.dm.mean == b.stats.dm.mean);
        CHECK(a.stats.dx.mean == b.stats.dx.mean);
    }
    SUBCASE("n_runs below two is rejected") {
        McConfig bad = mc;
        bad.n_runs = 1;
        CHECK_THROWS_AS(run_monte_carlo(bad), ConfigError);
    }
}

TEST_CASE("paired t statistic") {
    const std::vector<double> a{1.0, 2.0, 3.0};
    const std::vector<double> b{0.0, 2.0, 2.0};
    CHECK(paired_t_test(a, b) == doctest::Approx(2.0).epsilon(1e-12));

    const std::vector<double> sym_a{1.0, 0.0};
    const std::vector<double> sym_b{0.0, 1.0};
    CHECK(paired_t_test(sym_a, sym_b) == doctest::Approx(0.0));

    CHECK_THROWS_AS(paired_t_test(a, a), StatsError);  // zero-variance differences
    const std::vector<double> short_b{0.0};
    CHECK_THROWS_AS(paired_t_test(a, short_b), StatsError);
    const std::vector<double> one_a{1.0};
    const std::vector<double> one_b{2.0};
    CHECK_THROWS_AS(paired_t_test(one_a, one_b), StatsError);
}
