#pragma once

#include <optional>
#include <string_view>

#include "otalg/dynamics.hpp"
#include "otalg/vec3.hpp"

namespace otalg {

enum class GuidanceLaw { Ogl, Otalg, MssOtalg };

const char* law_name(GuidanceLaw law);
std::optional<GuidanceLaw> law_from_name(std::string_view name);

/// Gains and targets for all three guidance laws. l1/l2/l3 shape the divert
/// rate per axis; lambda_gain is the virtual-controller exponent (2 or 3 for
/// the exact cancellation in the sliding dynamics); k1/k2 scale the sliding
/// parameter; boundary_layer is the saturation width replacing the signum.
struct GuidanceConfig {
    Vec3 l1{1.0, 1.0, 1.0};
    Vec3 l2{9500.0, 9500.0, 9500.0};
    Vec3 l3{500.0, 500.0, 500.0};
    double lambda_gain = 3.0;
    double k1 = 0.8;
    double k2 = 0.2;
    double a_p_max = 5.0;        // disturbance bound used in the sliding parameter [m/s^2]
    double boundary_layer = 0.1;
    Vec3 r_target;
    Vec3 v_target;
    double t_f = 100.0;
};

struct ZemZev {
    Vec3 zem;
    Vec3 zev;
};

struct SlidingSurfaces {
    Vec3 s1;  // position error
    Vec3 s2;  // velocity error + (lambda/t_go) * s1
};

struct GuidanceOutput {
    Vec3 a_cmd;        // ideal command before actuator [m/s^2]
    Vec3 zem;
    Vec3 zev;
    Vec3 p;            // divert rate [m/s^4]
    Vec3 divert_term;  // p * t_go^2 / 12 [m/s^2]
    Vec3 s1;
    Vec3 s2;
    Vec3 phi;          // sliding parameter (zero unless MSS-OTALG)
    GuidanceLaw law = GuidanceLaw::Ogl;
};

/// x/eps clipped to [-1, 1]; equals sign(x) for |x| >= eps.
double sat(double x, double eps);

/// Signum with sign(0) = 0.
double sign(double x);

/// Zero-effort miss and zero-effort velocity against the configured targets
/// under constant gravity g over the remaining t_go.
ZemZev zem_zev(const LanderState& s, const GuidanceConfig& cfg, const Vec3& g, double t_go);

/// Energy-optimal feedback (6/t_go^2)*ZEM - (2/t_go)*ZEV.
Vec3 ogl_accel(const Vec3& zem, const Vec3& zev, double t_go);

/// Barrier-repulsion rate, odd in d_i and vanishing as |d_i| grows:
/// p_i = l2*l3*d_i*exp(-psi_i)/(d_i^2+l1)^2 with psi_i = l2/(d_i^2+l1).
Vec3 divert_rate(const Vec3& d, const GuidanceConfig& cfg);

/// OGL plus the divert term p*t_go^2/12.
Vec3 otalg_accel(const Vec3& zem, const Vec3& zev, const Vec3& p, double t_go);

/// s1 = r - r_target, s2 = (v - v_target) + (lambda/t_go)*s1.
SlidingSurfaces sliding_surfaces(const LanderState& s, const GuidanceConfig& cfg, double t_go);

/// phi_i = k1*|p_i|*t_go^2/12 + k2*a_p_max, always >= k2*a_p_max.
Vec3 sliding_parameter(const Vec3& p, double t_go, const GuidanceConfig& cfg);

/// Sliding-mode augmented command: OTALG minus the boundary-layer switching
/// term phi_i*sat(s2_i/eps). All intermediates are populated in the output.
GuidanceOutput mss_otalg_accel(const LanderState& s, const Vec3& d, const GuidanceConfig& cfg,
                               const Vec3& g, double t_go);

/// Evaluates the selected law; OGL leaves p, divert_term and phi at zero,
/// OTALG leaves phi at zero. Sliding surfaces are always populated for
/// telemetry.
GuidanceOutput evaluate_guidance(GuidanceLaw law, const LanderState& s, const Vec3& d,
                                 const GuidanceConfig& cfg, const Vec3& g, double t_go);

}  // namespace otalg
