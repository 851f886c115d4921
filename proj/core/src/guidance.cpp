#include "otalg/guidance.hpp"

#include <algorithm>
#include <cmath>

namespace otalg {

const char* law_name(GuidanceLaw law) {
    switch (law) {
        case GuidanceLaw::Ogl: return "ogl";
        case GuidanceLaw::Otalg: return "otalg";
        case GuidanceLaw::MssOtalg: return "mss-otalg";
    }
    return "unknown";
}

std::optional<GuidanceLaw> law_from_name(std::string_view name) {
    if (name == "ogl") return GuidanceLaw::Ogl;
    if (name == "otalg") return GuidanceLaw::Otalg;
    if (name == "mss-otalg" || name == "mss_otalg") return GuidanceLaw::MssOtalg;
    return std::nullopt;
}

double sat(double x, double eps) { return std::clamp(x / eps, -1.0, 1.0); }

double sign(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

ZemZev zem_zev(const LanderState& s, const GuidanceConfig& cfg, const Vec3& g, double t_go) {
    ZemZev out;
    out.zem = cfg.r_target - (s.r + t_go * s.v + (0.5 * t_go * t_go) * g);
    out.zev = cfg.v_target - (s.v + t_go * g);
    return out;
}

Vec3 ogl_accel(const Vec3& zem, const Vec3& zev, double t_go) {
    return (6.0 / (t_go * t_go)) * zem - (2.0 / t_go) * zev;
}

Vec3 divert_rate(const Vec3& d, const GuidanceConfig& cfg) {
    Vec3 p;
    for (int i = 0; i < 3; ++i) {
        const double u = d[i] * d[i] + cfg.l1[i];
        const double psi = cfg.l2[i] / u;
        p[i] = cfg.l2[i] * cfg.l3[i] * d[i] * std::exp(-psi) / (u * u);
    }
    return p;
}

Vec3 otalg_accel(const Vec3& zem, const Vec3& zev, const Vec3& p, double t_go) {
    return ogl_accel(zem, zev, t_go) + (t_go * t_go / 12.0) * p;
}

SlidingSurfaces sliding_surfaces(const LanderState& s, const GuidanceConfig& cfg, double t_go) {
    SlidingSurfaces out;
    out.s1 = s.r - cfg.r_target;
    out.s2 = (s.v - cfg.v_target) + (cfg.lambda_gain / t_go) * out.s1;
    return out;
}

Vec3 sliding_parameter(const Vec3& p, double t_go, const GuidanceConfig& cfg) {
    const double t2_12 = t_go * t_go / 12.0;
    Vec3 phi;
    for (int i = 0; i < 3; ++i) {
        phi[i] = cfg.k1 * std::abs(p[i]) * t2_12 + cfg.k2 * cfg.a_p_max;
    }
    return phi;
}

GuidanceOutput mss_otalg_accel(const LanderState& s, const Vec3& d, const GuidanceConfig& cfg,
                               const Vec3& g, double t_go) {
    GuidanceOutput out;
    out.law = GuidanceLaw::MssOtalg;
    const ZemZev zz = zem_zev(s, cfg, g, t_go);
    out.zem = zz.zem;
    out.zev = zz.zev;
    out.p = divert_rate(d, cfg);
    out.divert_term = (t_go * t_go / 12.0) * out.p;
    const SlidingSurfaces surf = sliding_surfaces(s, cfg, t_go);
    out.s1 = surf.s1;
    out.s2 = surf.s2;
    out.phi = sliding_parameter(out.p, t_go, cfg);
    Vec3 a = otalg_accel(zz.zem, zz.zev, out.p, t_go);
    for (int i = 0; i < 3; ++i) {
        a[i] -= out.phi[i] * sat(surf.s2[i], cfg.boundary_layer);
    }
    out.a_cmd = a;
    return out;
}

GuidanceOutput evaluate_guidance(GuidanceLaw law, const LanderState& s, const Vec3& d,
                                 const GuidanceConfig& cfg, const Vec3& g, double t_go) {
    if (law == GuidanceLaw::MssOtalg) {
        return mss_otalg_accel(s, d, cfg, g, t_go);
    }
    GuidanceOutput out;
    out.law = law;
    const ZemZev zz = zem_zev(s, cfg, g, t_go);
    out.zem = zz.zem;
    out.zev = zz.zev;
    const SlidingSurfaces surf = sliding_surfaces(s, cfg, t_go);
    out.s1 = surf.s1;
    out.s2 = surf.s2;
    if (law == GuidanceLaw::Otalg) {
        out.p = divert_rate(d, cfg);
        out.divert_term = (t_go * t_go / 12.0) * out.p;
        out.a_cmd = otalg_accel(zz.zem, zz.zev, out.p, t_go);
    } else {
        out.a_cmd = ogl_accel(zz.zem, zz.zev, t_go);
    }
    return out;
}

}  // namespace otalg
