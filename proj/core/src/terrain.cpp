#include "otalg/terrain.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "otalg/errors.hpp"

namespace otalg {

namespace {

constexpr double kPi = 3.14159265358979323846;

void validate_profile(const std::vector<TerrainStep>& steps, const char* axis) {
    if (steps.empty()) {
        throw ConfigError(std::string("terrain.") + axis + ": at least one step is required");
    }
    double prev_h = 0.0;
    double prev_w = 0.0;
    for (std::size_t j = 0; j < steps.size(); ++j) {
        const auto& s = steps[j];
        const std::string where = std::string("terrain.") + axis + "[" + std::to_string(j) + "]";
        if (!(s.height_m > prev_h)) {
            throw ConfigError(where + ".height_m: step heights must be strictly increasing");
        }
        if (!(s.half_width_m > prev_w)) {
            throw ConfigError(where + ".half_width_m: step half-widths must be strictly increasing");
        }
        if (s.exponent < 2 || s.exponent % 2 != 0) {
            throw ConfigError(where + ".exponent: must be an even integer >= 2");
        }
        prev_h = s.height_m;
        prev_w = s.half_width_m;
    }
}

bool profiles_equal(const std::vector<TerrainStep>& a, const std::vector<TerrainStep>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t j = 0; j < a.size(); ++j) {
        if (a[j].height_m != b[j].height_m || a[j].half_width_m != b[j].half_width_m ||
            a[j].exponent != b[j].exponent) {
            return false;
        }
    }
    return true;
}

std::vector<BarrierSegment> build_axis(const std::vector<TerrainStep>& steps,
                                       double final_angle_deg) {
    std::vector<BarrierSegment> segs;
    segs.reserve(steps.size() + 1);
    double h_prev = 0.0;
    double w_prev = 0.0;
    for (const auto& s : steps) {
        BarrierSegment seg;
        seg.alpha = w_prev;
        seg.gamma = -h_prev;
        seg.inv_exponent = 1.0 / static_cast<double>(s.exponent);
        seg.beta = (s.half_width_m - w_prev) / std::pow(s.height_m - h_prev, seg.inv_exponent);
        seg.z_lo = h_prev;
        seg.z_hi = s.height_m;
        segs.push_back(seg);
        h_prev = s.height_m;
        w_prev = s.half_width_m;
    }
    BarrierSegment top;
    top.alpha = w_prev;
    top.gamma = -h_prev;
    top.beta = std::tan(kPi / 2.0 - final_angle_deg * kPi / 180.0);
    top.z_lo = h_prev;
    top.z_hi = std::numeric_limits<double>::infinity();
    top.linear = true;
    segs.push_back(top);
    return segs;
}

/// Vertical barrier against one axis profile: the floor of the lateral band
/// under the lander plus the safety margin. The barrier index follows the
/// lateral position alone, so descending over the landing site never has to
/// cross the plateau barrier. Positions below the plateau top but laterally
/// beyond the last half-width have no band in the step table at all; they
/// get the plateau barrier and are flagged for diagnosis.
VerticalBarrier vertical_for_profile(const std::vector<TerrainStep>& steps, double delta,
                                     double r_z, double lateral) {
    const int n = static_cast<int>(steps.size());
    int band = n;  // plateau beyond the last half-width
    double floor_h = steps.back().height_m;
    double h_prev = 0.0;
    for (int j = 0; j < n; ++j) {
        if (lateral < steps[j].half_width_m) {
            band = j;
            floor_h = h_prev;
            break;
        }
        h_prev = steps[j].height_m;
    }
    const bool uncovered = band == n && r_z < steps.back().height_m;
    return {floor_h + delta, band, uncovered};
}

}  // namespace

StepTerrain StepTerrain::make_symmetric(std::vector<TerrainStep> steps, double final_angle_deg) {
    StepTerrain t;
    t.x = steps;
    t.y = std::move(steps);
    t.final_angle_deg = final_angle_deg;
    t.symmetric = true;
    return t;
}

void StepTerrain::validate() const {
    validate_profile(x, "x");
    validate_profile(y, "y");
    if (!(final_angle_deg > 0.0) || !(final_angle_deg < 90.0)) {
        throw ConfigError("terrain.final_angle_deg: must lie in (0, 90) degrees");
    }
}

BarrierSet build_barriers(const StepTerrain& terrain, double delta_m) {
    terrain.validate();
    if (!(delta_m > 0.0)) {
        throw ConfigError("terrain.delta_m: vertical safety margin must be > 0");
    }
    BarrierSet b;
    b.segments[0] = build_axis(terrain.x, terrain.final_angle_deg);
    b.segments[1] = build_axis(terrain.y, terrain.final_angle_deg);
    b.steps[0] = terrain.x;
    b.steps[1] = terrain.y;
    b.delta = delta_m;
    b.symmetric = profiles_equal(terrain.x, terrain.y);
    return b;
}

double horizontal_barrier(const BarrierSet& b, Axis axis, int side, double r_z) {
    if (r_z < 0.0) {
        throw std::domain_error("horizontal_barrier: r_z must be >= 0");
    }
    const auto& segs = b.segments[static_cast<int>(axis)];
    const BarrierSegment* active = &segs.back();
    for (const auto& seg : segs) {
        if (r_z >= seg.z_lo && r_z <= seg.z_hi) {
            active = &seg;
            break;
        }
    }
    const double arg = r_z + active->gamma;
    const double value = active->linear
                             ? active->beta * arg + active->alpha
                             : active->beta * std::pow(arg, active->inv_exponent) + active->alpha;
    return side < 0 ? -value : value;
}

VerticalBarrier vertical_barrier(const BarrierSet& b, const Vec3& position) {
    const double lateral = std::max(std::abs(position.x), std::abs(position.y));
    const VerticalBarrier vx = vertical_for_profile(b.steps[0], b.delta, position.z, lateral);
    if (b.symmetric) {
        return vx;
    }
    const VerticalBarrier vy = vertical_for_profile(b.steps[1], b.delta, position.z, lateral);
    return vy.rho_z > vx.rho_z ? vy : vx;  // conservative floor for asymmetric profiles
}

BarrierGeometry barrier_distance(const BarrierSet& b, const Vec3& position) {
    BarrierGeometry g;
    const int side_x = position.x >= 0.0 ? 1 : -1;
    const int side_y = position.y >= 0.0 ? 1 : -1;
    const VerticalBarrier vz = vertical_barrier(b, position);
    g.d.x = position.x - horizontal_barrier(b, Axis::X, side_x, position.z);
    g.d.y = position.y - horizontal_barrier(b, Axis::Y, side_y, position.z);
    g.d.z = position.z - vz.rho_z;
    g.rho_z = vz.rho_z;
    g.vertical_ambiguous = vz.ambiguous;
    return g;
}

double critical_distance(double l1, double l2) {
    if (!(l1 > 0.0) || !(l2 > 0.0)) {
        throw ConfigError("critical_distance: gains l1 and l2 must be > 0");
    }
    const double root = std::sqrt(l2 * l2 - 2.0 * l1 * l2 + 4.0 * l1 * l1);
    return std::sqrt((root + l2 - l1) / 3.0);
}

}  // namespace otalg
