#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "otalg/dynamics.hpp"
#include "otalg/guidance.hpp"
#include "otalg/terrain.hpp"
#include "otalg/trajectory.hpp"

namespace otalg {

/// Everything one closed-loop run needs.
struct Scenario {
    LanderState initial;
    Environment env;
    StepTerrain terrain;
    GuidanceConfig guidance;
    GuidanceLaw law = GuidanceLaw::MssOtalg;
    double dt = 0.01;
    std::uint64_t seed = 42;
    double termination_altitude = 0.05;  // [m]
    double barrier_delta = 95.5;         // vertical safety margin [m]
    double t_go_floor = 0.1;             // clamp for 1/t_go terms near t_f [s]
};

/// Minimum feasible flight time for a thrust-limited soft landing from the
/// given initial state. Falls back to the velocity-only branch when the
/// discriminant of the altitude branch is negative. Throws ConfigError when
/// the thrust ceiling cannot beat gravity.
double t_f_min(const LanderState& initial, const Environment& env);

/// Runs the loop guidance -> saturation -> actuator -> perturbation ->
/// dynamics at fixed dt until the termination altitude or t_f is reached.
/// Never throws for in-flight failures; the log carries the status and the
/// last valid samples.
TrajectoryLog run_simulation(const Scenario& sc);

// --------------------------------------------------------------------------
// Monte Carlo campaign
// --------------------------------------------------------------------------

struct NormalSpec {
    double mean = 0.0;
    double sd = 0.0;
};

/// Initial-condition dispersion; sd = 0 pins the quantity to its mean.
/// Lateral position/velocity spreads default to values consistent with the
/// reference campaign statistics; draws stay clear of the terrain steps.
struct Dispersion {
    NormalSpec x0{0.0, 220.0};
    NormalSpec y0{0.0, 220.0};
    NormalSpec z0{2500.0, 400.0};
    NormalSpec vx0{0.0, 8.0};
    NormalSpec vy0{0.0, 8.0};
    NormalSpec vz0{-80.0, 20.0};
    NormalSpec m0{1905.0, 0.0};
};

struct McConfig {
    int n_runs = 300;
    Dispersion dispersion;
    Scenario base;
    std::uint64_t master_seed = 42;
    int threads = 0;  // 0 = hardware concurrency
};

struct RunSummary {
    int index = 0;
    LanderState initial;
    TerminalSummary terminal;
    RunStatus status = RunStatus::Ok;
    int terrain_violations = 0;
    int ambiguous_steps = 0;
};

struct Stat {
    double mean = 0.0;
    double sd = 0.0;
};

struct PairedTRecord {
    double statistic = 0.0;
    std::string description;
};

/// Mean/SD of the terminal quantities over the successful runs.
struct DispersionStats {
    Stat dm, dx, dy, dvz;
    int n = 0;
    std::optional<PairedTRecord> fuel_ttest;
};

struct McResult {
    std::vector<RunSummary> runs;
    DispersionStats stats;
    int n_failed = 0;
    int rejected_draws = 0;
};

/// Draws one initial condition; draws with z0 <= 0 are rejected and redrawn
/// (counted via rejections when non-null).
LanderState draw_initial_conditions(const Dispersion& disp, Rng& rng, int* rejections = nullptr);

/// Runs n_runs dispersed scenarios with deterministic per-run noise seeds
/// derived from the master seed. Identical master seeds reproduce identical
/// draws and noise streams regardless of guidance law or thread count, so
/// campaigns pair run-for-run across laws. Failed runs are excluded from the
/// statistics and counted.
McResult run_monte_carlo(const McConfig& mc);

DispersionStats compute_dispersion_stats(const std::vector<RunSummary>& runs);

/// One-sided paired t statistic mean(a-b) / (sd(a-b)/sqrt(n)).
/// Throws StatsError for mismatched lengths, n < 2 or zero-variance differences.
double paired_t_test(std::span<const double> a, std::span<const double> b);

}  // namespace otalg
