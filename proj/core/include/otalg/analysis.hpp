#pragma once

#include <optional>
#include <span>
#include <vector>

#include "otalg/terrain.hpp"
#include "otalg/trajectory.hpp"

namespace otalg {

enum class DivertTrigger { Magnitude, VelocitySign };

const char* trigger_name(DivertTrigger t);

/// Interval on one axis where the divert term dominates the landing-guidance
/// term, or where an approach turns into a recession while the magnitude
/// condition is off. t_end is absent while still active at log end.
struct DivertEvent {
    Axis axis = Axis::X;
    double t_begin = 0.0;
    std::optional<double> t_end;
    DivertTrigger trigger = DivertTrigger::Magnitude;
};

struct DivertDetectionParams {
    double hysteresis = 0.01;     // fraction of the ZEM/ZEV term magnitude
    double ddot_deadband = 1e-3;  // [m/s]; first-difference sign needs to clear this
    /// Compare |divert_i| against the ZEM/ZEV term of axis i alone instead of
    /// the norm of the full ZEM/ZEV feedback vector in the overall command.
    bool per_component = false;
};

/// Scans the log per axis. A magnitude event opens when |divert_i| exceeds
/// the ZEM/ZEV term magnitude (vector norm by default, see params) by the
/// hysteresis band and closes on the reverse crossing. A velocity-sign event
/// opens when d_i stops approaching the barrier and starts receding
/// (sign(ddot_i) flips onto sign(d_i)) while the magnitude condition is
/// false, and closes on the next sign flip. Events on one axis never overlap.
std::vector<DivertEvent> detect_divert_events(const TrajectoryLog& log,
                                              const DivertDetectionParams& params = {});

struct LyapunovSeries {
    std::vector<double> v1;  // 0.5*|s1|^2
    std::vector<double> v2;  // 0.5*|s2|^2
};

LyapunovSeries lyapunov_series(const TrajectoryLog& log);

// --------------------------------------------------------------------------
// Practical fixed-time stability feasibility checks
// --------------------------------------------------------------------------

struct P1SearchRange {
    double lo = 1.0;  // exclusive
    double hi = 50.0;
    int points = 2000;  // log-spaced grid, refined by bisection
};

struct PftsRow {
    double t_go = 0.0;
    double L = 0.0;    // settling-time positivity bound on phi
    double M = 0.0;    // settling-time-within-t_f bound on phi
    double phi = 0.0;
    std::optional<double> feasible_p1;
    std::optional<double> settling_bound;
    bool feasible = false;  // M < phi <= L at this sample
};

struct PftsReport {
    std::vector<PftsRow> rows;
    double theta = 0.9;
    double t_f = 100.0;
    double p_max = 0.0;
};

/// Exponent-condition right-hand side 2^(p1/2)*(p1-1)/(1+p1); strictly
/// increasing for p1 > 1.
double pfts_rhs(double p1);

/// Upper bound on phi for a positive settling time.
double pfts_L(double p1, double t_go);

/// Lower bound on phi for a settling time within t_f.
double pfts_M(double p1, double t_go, double theta, double t_f);

/// Settling-time bound 2/(sqrt(2)*phi*theta) - 2*(1+p1)*12 / (2^((p1+1)/2)*(p1-1)*theta*t_go^2).
double pfts_settling_bound(double p1, double phi, double t_go, double theta);

/// For each sample, finds the smallest p1 in the search range with
/// k1*p_max + 12*k2*a_p_max/t_go^2 <= pfts_rhs(p1) (the left side is passed
/// in via phi's worst case: phi_worst*12/t_go^2), evaluates L and M at it,
/// and reports the settling bound for the logged phi.
PftsReport pfts_check(std::span<const double> phi, std::span<const double> t_go, double p_max,
                      double theta, double t_f, double k1, double k2, double a_p_max,
                      const P1SearchRange& range = {});

/// Counts log samples (plus the final state) where the lander is below the
/// true stepped terrain: lateral max-norm inside step j's band but altitude
/// not strictly above the band floor. Zero for any accepted terrain-avoiding
/// run.
int count_terrain_violations(const TrajectoryLog& log, const StepTerrain& terrain);

}  // namespace otalg
