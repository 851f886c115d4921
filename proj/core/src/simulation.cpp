#include "otalg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>

#include "otalg/analysis.hpp"
#include "otalg/errors.hpp"

namespace otalg {

const char* run_status_name(RunStatus s) {
    switch (s) {
        case RunStatus::Ok: return "ok";
        case RunStatus::FuelDepleted: return "fuel_depleted";
        case RunStatus::NonFiniteState: return "non_finite_state";
    }
    return "unknown";
}

double t_f_min(const LanderState& initial, const Environment& env) {
    const double a_max = env.T_max / initial.m;
    const double g = env.g.norm();
    const double margin = a_max - g;
    if (!(margin > 0.0)) {
        throw ConfigError("scenario: infeasible, T_max/m0 does not exceed gravity");
    }
    const double vz = initial.v.z;
    const double first = -vz / margin;
    const double disc = vz * vz - 2.0 * margin * initial.r.z;
    if (disc < 0.0) {
        return std::max(first, 0.0);
    }
    const double second = (-vz + std::sqrt(disc)) / margin;
    return std::max({first, second, 0.0});
}

TrajectoryLog run_simulation(const Scenario& sc) {
    const GuidanceConfig& gc = sc.guidance;
    const BarrierSet barriers = build_barriers(sc.terrain, sc.barrier_delta);

    TrajectoryLog log;
    log.law = sc.law;
    log.dt = sc.dt;
    log.t_f = gc.t_f;
    log.t_go_floor = sc.t_go_floor;

    const std::size_t max_steps = static_cast<std::size_t>(std::ceil(gc.t_f / sc.dt)) + 1;
    log.t.reserve(max_steps);
    log.r.reserve(max_steps);
    log.v.reserve(max_steps);
    log.m.reserve(max_steps);
    log.a_cmd.reserve(max_steps);
    log.a_applied.reserve(max_steps);
    log.a_p.reserve(max_steps);
    log.zem.reserve(max_steps);
    log.zev.reserve(max_steps);
    log.p.reserve(max_steps);
    log.divert.reserve(max_steps);
    log.s1.reserve(max_steps);
    log.s2.reserve(max_steps);
    log.phi.reserve(max_steps);
    log.rho_z.reserve(max_steps);
    log.d.reserve(max_steps);
    log.rho_ambiguous.reserve(max_steps);

    Rng rng(sc.seed);
    LanderState s = sc.initial;
    ActuatorState act;
    const double m0 = s.m;

    while (s.r.z > sc.termination_altitude && s.t < gc.t_f - 0.5 * sc.dt) {
        const double t_go = std::max(gc.t_f - s.t, sc.t_go_floor);
        const BarrierGeometry geom = barrier_distance(barriers, s.r);
        const GuidanceOutput gout = evaluate_guidance(sc.law, s, geom.d, gc, sc.env.g, t_go);
        const Vec3 a_sat = thrust_saturate(gout.a_cmd, s.m, sc.env.T_max);
        act = actuator_step(act, a_sat, sc.env.actuator_tau, sc.dt, sc.env.thrust_noise_frac, rng);
        const Vec3 a_p = atmospheric_perturbation(s.t, act.a_applied, sc.env);

        log.t.push_back(s.t);
        log.r.push_back(s.r);
        log.v.push_back(s.v);
        log.m.push_back(s.m);
        log.a_cmd.push_back(gout.a_cmd);
        log.a_applied.push_back(act.a_applied);
        log.a_p.push_back(a_p);
        log.zem.push_back(gout.zem);
        log.zev.push_back(gout.zev);
        log.p.push_back(gout.p);
        log.divert.push_back(gout.divert_term);
        log.s1.push_back(gout.s1);
        log.s2.push_back(gout.s2);
        log.phi.push_back(gout.phi);
        log.rho_z.push_back(geom.rho_z);
        log.d.push_back(geom.d);
        log.rho_ambiguous.push_back(geom.vertical_ambiguous ? 1 : 0);
        if (geom.vertical_ambiguous) {
            ++log.ambiguous_steps;
        }

        const LanderState next = dynamics_step(s, act.a_applied, a_p, sc.env, sc.dt);
        if (!is_finite(next.r) || !is_finite(next.v) || !std::isfinite(next.m)) {
            log.status = RunStatus::NonFiniteState;
            break;
        }
        s = next;
        if (s.m <= sc.env.dry_mass) {
            log.status = RunStatus::FuelDepleted;
            break;
        }
    }

    log.final_state = s;
    log.summary.dx = s.r.x - gc.r_target.x;
    log.summary.dy = s.r.y - gc.r_target.y;
    log.summary.dvz = s.v.z - gc.v_target.z;
    log.summary.dm = m0 - s.m;
    log.summary.flight_time = s.t;
    return log;
}

LanderState draw_initial_conditions(const Dispersion& disp, Rng& rng, int* rejections) {
    auto draw = [&rng](const NormalSpec& n) {
        return n.sd > 0.0 ? n.mean + n.sd * rng.normal() : n.mean;
    };
    for (;;) {
        LanderState s;
        s.r.x = draw(disp.x0);
        s.r.y = draw(disp.y0);
        s.r.z = draw(disp.z0);
        s.v.x = draw(disp.vx0);
        s.v.y = draw(disp.vy0);
        s.v.z = draw(disp.vz0);
        s.m = draw(disp.m0);
        s.t = 0.0;
        if (s.r.z > 0.0) {
            return s;
        }
        if (rejections != nullptr) {
            ++(*rejections);
        }
    }
}

namespace {

Stat mean_sd(const std::vector<double>& xs) {
    Stat st;
    const std::size_t n = xs.size();
    if (n == 0) {
        return st;
    }
    double sum = 0.0;
    for (double x : xs) sum += x;
    st.mean = sum / static_cast<double>(n);
    if (n >= 2) {
        double ss = 0.0;
        for (double x : xs) ss += (x - st.mean) * (x - st.mean);
        st.sd = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return st;
}

}  // namespace

DispersionStats compute_dispersion_stats(const std::vector<RunSummary>& runs) {
    std::vector<double> dm, dx, dy, dvz;
    for (const auto& r : runs) {
        if (r.status != RunStatus::Ok) {
            continue;
        }
        dm.push_back(r.terminal.dm);
        dx.push_back(r.terminal.dx);
        dy.push_back(r.terminal.dy);
        dvz.push_back(r.terminal.dvz);
    }
    DispersionStats st;
    st.n = static_cast<int>(dm.size());
    st.dm = mean_sd(dm);
    st.dx = mean_sd(dx);
    st.dy = mean_sd(dy);
    st.dvz = mean_sd(dvz);
    return st;
}

McResult run_monte_carlo(const McConfig& mc) {
    if (mc.n_runs < 2) {
        throw ConfigError("monte_carlo.n_runs: must be >= 2");
    }

    McResult result;
    result.runs.resize(mc.n_runs);

    // Initial conditions come from a dedicated stream so they are identical
    // across laws and independent of the per-run noise seeds.
    Rng ic_rng(derive_seed(mc.master_seed, 0));
    std::vector<LanderState> ics(mc.n_runs);
    for (int i = 0; i < mc.n_runs; ++i) {
        ics[i] = draw_initial_conditions(mc.dispersion, ic_rng, &result.rejected_draws);
    }

    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    const int threads = std::clamp(mc.threads > 0 ? mc.threads : hw, 1, mc.n_runs);

    auto worker = [&](int first) {
        for (int i = first; i < mc.n_runs; i += threads) {
            Scenario sc = mc.base;
            sc.initial = ics[i];
            sc.seed = derive_seed(mc.master_seed, static_cast<std::uint64_t>(i) + 1);
            const TrajectoryLog log = run_simulation(sc);
            RunSummary sum;
            sum.index = i;
            sum.initial = ics[i];
            sum.terminal = log.summary;
            sum.status = log.status;
            sum.terrain_violations = count_terrain_violations(log, sc.terrain);
            sum.ambiguous_steps = log.ambiguous_steps;
            result.runs[i] = sum;
        }
    };

    std::vector<std::future<void>> futures;
    futures.reserve(threads - 1);
    for (int w = 1; w < threads; ++w) {
        futures.push_back(std::async(std::launch::async, worker, w));
    }
    worker(0);
    for (auto& f : futures) {
        f.get();
    }

    for (const auto& r : result.runs) {
        if (r.status != RunStatus::Ok) {
            ++result.n_failed;
        }
    }
    result.stats = compute_dispersion_stats(result.runs);
    return result;
}

double paired_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw StatsError("paired_t_test: series lengths differ");
    }
    const std::size_t n = a.size();
    if (n < 2) {
        throw StatsError("paired_t_test: need at least two pairs");
    }
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean += a[i] - b[i];
    }
    mean /= static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = a[i] - b[i] - mean;
        ss += d * d;
    }
    const double sd = std::sqrt(ss / static_cast<double>(n - 1));
    if (sd == 0.0) {
        throw StatsError("paired_t_test: zero-variance differences, statistic undefined");
    }
    return mean / (sd / std::sqrt(static_cast<double>(n)));
}

}  // namespace otalg
