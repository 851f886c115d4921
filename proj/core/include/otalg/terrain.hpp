#pragma once

#include <array>
#include <vector>

#include "otalg/vec3.hpp"

namespace otalg {

enum class Axis { X = 0, Y = 1, Z = 2 };

/// One step of the stepped terrain approximation: the ground rises to
/// `height_m` at lateral distance `half_width_m` from the landing site.
/// `exponent` is the even polynomial degree of the barrier covering the step.
struct TerrainStep {
    double height_m = 0.0;
    double half_width_m = 0.0;
    int exponent = 2;
};

/// n-step terrain profile per lateral axis, mirrored on the +/- sides.
/// Heights and half-widths must be strictly increasing; the region beyond
/// the last step is a plateau at the last height, bounded by a linear
/// barrier with slope angle `final_angle_deg` off the vertical axis.
struct StepTerrain {
    std::vector<TerrainStep> x;
    std::vector<TerrainStep> y;
    double final_angle_deg = 0.05;
    bool symmetric = true;

    static StepTerrain make_symmetric(std::vector<TerrainStep> steps, double final_angle_deg);

    /// Throws ConfigError on non-monotone steps, odd/small exponents or an
    /// out-of-range final angle.
    void validate() const;
};

/// One piece of the piecewise lateral barrier. For polynomial pieces the
/// barrier position at altitude rz is beta*(rz + gamma)^(1/lambda) + alpha,
/// valid on [z_lo, z_hi]; the final piece is linear and unbounded above.
struct BarrierSegment {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double inv_exponent = 1.0;
    double z_lo = 0.0;
    double z_hi = 0.0;
    bool linear = false;
};

struct VerticalBarrier {
    double rho_z = 0.0;
    int step_index = 0;      ///< lateral band whose floor sets the barrier (n = plateau)
    bool ambiguous = false;  ///< below the plateau top, laterally beyond every band
};

struct BarrierGeometry {
    Vec3 d;          ///< signed lander-to-barrier distances, d_i = r_i - rho_i
    double rho_z = 0.0;
    bool vertical_ambiguous = false;
};

/// Precomputed barrier coefficients plus the step tables needed for the
/// vertical-barrier selection.
struct BarrierSet {
    std::array<std::vector<BarrierSegment>, 2> segments;  // X, Y
    std::array<std::vector<TerrainStep>, 2> steps;        // X, Y
    double delta = 0.0;
    bool symmetric = true;
};

/// Builds all n+1 lateral barriers per axis and copies the step tables.
/// delta_m is the vertical safety margin added to step heights.
BarrierSet build_barriers(const StepTerrain& terrain, double delta_m);

/// Signed lateral barrier position on the given side (+1/-1) at altitude r_z.
/// Throws std::domain_error for r_z < 0.
double horizontal_barrier(const BarrierSet& b, Axis axis, int side, double r_z);

/// Vertical barrier under the lander: the floor of the lateral band holding
/// the max-norm lateral position, plus delta; the plateau band applies
/// beyond the last half-width. Positions below the plateau top but beyond
/// every lateral band are flagged (the step table pairs no band there).
VerticalBarrier vertical_barrier(const BarrierSet& b, const Vec3& position);

/// Signed distances to the barriers on the lander's side of each axis.
BarrierGeometry barrier_distance(const BarrierSet& b, const Vec3& position);

/// Distance from the barrier at which the divert rate peaks, for gains
/// l1, l2 > 0. Positive root; the +/- pair has equal magnitude.
double critical_distance(double l1, double l2);

}  // namespace otalg
