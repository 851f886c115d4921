#include "otalg/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "otalg/errors.hpp"

namespace otalg {

const char* trigger_name(DivertTrigger t) {
    return t == DivertTrigger::Magnitude ? "magnitude" : "velocity_sign";
}

namespace {

enum class AxisPhase { Idle, MagnitudeOpen, VelocityOpen };

double zemzev_term(const TrajectoryLog& log, std::size_t k, int axis, double t_go,
                   bool per_component) {
    const Vec3 fb = (6.0 / (t_go * t_go)) * log.zem[k] - (2.0 / t_go) * log.zev[k];
    return per_component ? std::abs(fb[axis]) : fb.norm();
}

}  // namespace

std::vector<DivertEvent> detect_divert_events(const TrajectoryLog& log,
                                              const DivertDetectionParams& params) {
    std::vector<DivertEvent> events;
    const std::size_t n = log.size();
    if (n == 0) {
        return events;
    }
    for (int axis = 0; axis < 3; ++axis) {
        AxisPhase phase = AxisPhase::Idle;
        std::size_t open_idx = 0;
        int last_sign = 0;

        auto open_event = [&](std::size_t k, DivertTrigger trig) {
            events.push_back({static_cast<Axis>(axis), log.t[k], std::nullopt, trig});
            open_idx = events.size() - 1;
        };

        for (std::size_t k = 0; k < n; ++k) {
            const double t_go = std::max(log.t_f - log.t[k], log.t_go_floor);
            const double zz = zemzev_term(log, k, axis, t_go, params.per_component);
            const double divert = std::abs(log.divert[k][axis]);
            const bool mag_on = divert > zz * (1.0 + params.hysteresis);
            const bool mag_off = divert < zz * (1.0 - params.hysteresis);

            int cur_sign = 0;
            bool sign_changed = false;
            bool receding = false;
            if (k > 0) {
                const double ddot = (log.d[k][axis] - log.d[k - 1][axis]) / log.dt;
                if (std::abs(ddot) > params.ddot_deadband) {
                    cur_sign = ddot > 0.0 ? 1 : -1;
                    sign_changed = last_sign != 0 && cur_sign != last_sign;
                    receding = sign(log.d[k][axis]) == cur_sign;
                }
            }

            switch (phase) {
                case AxisPhase::Idle:
                    if (mag_on) {
                        open_event(k, DivertTrigger::Magnitude);
                        phase = AxisPhase::MagnitudeOpen;
                    } else if (sign_changed && receding) {
                        open_event(k, DivertTrigger::VelocitySign);
                        phase = AxisPhase::VelocityOpen;
                    }
                    break;
                case AxisPhase::MagnitudeOpen:
                    if (mag_off) {
                        events[open_idx].t_end = log.t[k];
                        phase = AxisPhase::Idle;
                    }
                    break;
                case AxisPhase::VelocityOpen:
                    if (sign_changed) {
                        events[open_idx].t_end = log.t[k];
                        phase = AxisPhase::Idle;
                    } else if (mag_on) {
                        events[open_idx].t_end = log.t[k];
                        open_event(k, DivertTrigger::Magnitude);
                        phase = AxisPhase::MagnitudeOpen;
                    }
                    break;
            }
            if (cur_sign != 0) {
                last_sign = cur_sign;
            }
        }
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const DivertEvent& a, const DivertEvent& b) { return a.t_begin < b.t_begin; });
    return events;
}

LyapunovSeries lyapunov_series(const TrajectoryLog& log) {
    LyapunovSeries out;
    out.v1.reserve(log.size());
    out.v2.reserve(log.size());
    for (std::size_t k = 0; k < log.size(); ++k) {
        out.v1.push_back(0.5 * dot(log.s1[k], log.s1[k]));
        out.v2.push_back(0.5 * dot(log.s2[k], log.s2[k]));
    }
    return out;
}

double pfts_rhs(double p1) { return std::pow(2.0, 0.5 * p1) * (p1 - 1.0) / (1.0 + p1); }

double pfts_L(double p1, double t_go) { return pfts_rhs(p1) * t_go * t_go / 12.0; }

double pfts_M(double p1, double t_go, double theta, double t_f) {
    const double inv = (1.0 + p1) / (std::pow(2.0, 0.5 * p1) * (p1 - 1.0)) * 12.0 / (t_go * t_go) +
                       t_f * theta / std::sqrt(2.0);
    return 1.0 / inv;
}

double pfts_settling_bound(double p1, double phi, double t_go, double theta) {
    const double first = 2.0 / (std::sqrt(2.0) * phi * theta);
    const double second = 2.0 * (1.0 + p1) /
                          (std::pow(2.0, 0.5 * (p1 + 1.0)) * (p1 - 1.0) * theta) * 12.0 /
                          (t_go * t_go);
    return first - second;
}

PftsReport pfts_check(std::span<const double> phi, std::span<const double> t_go, double p_max,
                      double theta, double t_f, double k1, double k2, double a_p_max,
                      const P1SearchRange& range) {
    if (!(theta > 0.0) || theta > 1.0) {
        throw ConfigError("pfts_check: theta must lie in (0, 1]");
    }
    if (p_max < 0.0) {
        throw ConfigError("pfts_check: p_max must be >= 0");
    }
    if (range.points < 2 || !(range.hi > range.lo) || !(range.lo >= 1.0)) {
        throw ConfigError("pfts_check: empty or invalid p1 search range");
    }
    if (phi.size() != t_go.size()) {
        throw ConfigError("pfts_check: phi and t_go series lengths differ");
    }

    // Log-spaced grid over (lo, hi]; the rhs is strictly increasing in p1, so
    // the first grid point at or above the target brackets the threshold.
    std::vector<double> grid(range.points);
    const double log_lo = std::log(range.lo);
    const double log_hi = std::log(range.hi);
    for (int i = 0; i < range.points; ++i) {
        const double f = static_cast<double>(i + 1) / range.points;
        grid[i] = std::exp(log_lo + f * (log_hi - log_lo));
    }

    PftsReport report;
    report.theta = theta;
    report.t_f = t_f;
    report.p_max = p_max;
    report.rows.reserve(phi.size());

    for (std::size_t k = 0; k < phi.size(); ++k) {
        PftsRow row;
        row.t_go = t_go[k];
        row.phi = phi[k];
        const double lhs = k1 * p_max + 12.0 * k2 * a_p_max / (t_go[k] * t_go[k]);

        auto it = std::lower_bound(grid.begin(), grid.end(), lhs,
                                   [](double p1, double target) { return pfts_rhs(p1) < target; });
        if (it != grid.end()) {
            double hi = *it;
            double lo = it == grid.begin() ? range.lo : *(it - 1);
            for (int iter = 0; iter < 60; ++iter) {
                const double mid = 0.5 * (lo + hi);
                (pfts_rhs(mid) >= lhs ? hi : lo) = mid;
            }
            row.feasible_p1 = hi;
            row.L = pfts_L(hi, t_go[k]);
            row.M = pfts_M(hi, t_go[k], theta, t_f);
            row.settling_bound = pfts_settling_bound(hi, phi[k], t_go[k], theta);
            row.feasible = row.M < phi[k] && phi[k] <= row.L;
        } else {
            // No feasible exponent in range; report bounds at the top of it.
            row.L = pfts_L(range.hi, t_go[k]);
            row.M = pfts_M(range.hi, t_go[k], theta, t_f);
            row.feasible = false;
        }
        report.rows.push_back(row);
    }
    return report;
}

int count_terrain_violations(const TrajectoryLog& log, const StepTerrain& terrain) {
    auto floor_under = [](const std::vector<TerrainStep>& steps, double lateral) {
        double h_prev = 0.0;
        for (const auto& s : steps) {
            if (lateral < s.half_width_m) {
                return h_prev;
            }
            h_prev = s.height_m;
        }
        return steps.back().height_m;  // plateau beyond the last half-width
    };
    auto violates = [&](const Vec3& r) {
        const double lateral = std::max(std::abs(r.x), std::abs(r.y));
        const double ground =
            std::max(floor_under(terrain.x, lateral), floor_under(terrain.y, lateral));
        return !(r.z > ground);
    };
    int count = 0;
    for (const auto& r : log.r) {
        if (violates(r)) {
            ++count;
        }
    }
    if (log.size() > 0 && violates(log.final_state.r)) {
        ++count;
    }
    return count;
}

}  // namespace otalg
