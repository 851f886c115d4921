#include "otalg/dynamics.hpp"

#include <cmath>

namespace otalg {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct StateVec {
    Vec3 r, v;
    double m;
};

StateVec deriv(const StateVec& s, const Vec3& a_net, double flow) {
    return {s.v, a_net, -flow * s.m};
}

}  // namespace

Vec3 thrust_saturate(const Vec3& a_cmd, double m, double T_max) {
    const double thrust = a_cmd.norm() * m;
    if (thrust <= T_max) {
        return a_cmd;
    }
    return a_cmd * (T_max / thrust);
}

ActuatorState actuator_step(const ActuatorState& act, const Vec3& a_ideal, double tau, double dt,
                            double noise_frac, Rng& rng) {
    Vec3 a = a_ideal;
    if (tau > 0.0) {
        const double decay = std::exp(-dt / tau);
        a = a_ideal + (act.a_applied - a_ideal) * decay;
    }
    if (noise_frac > 0.0) {
        a.x *= 1.0 + noise_frac * rng.uniform_signed();
        a.y *= 1.0 + noise_frac * rng.uniform_signed();
        a.z *= 1.0 + noise_frac * rng.uniform_signed();
    }
    return {a};
}

Vec3 atmospheric_perturbation(double t, const Vec3& a_c, const Environment& env) {
    if (env.perturbation.model == PerturbationModel::None) {
        return {};
    }
    return env.perturbation.coeff * std::sin(kPi * t / env.perturbation.period_s) * a_c;
}

LanderState dynamics_step(const LanderState& s, const Vec3& a_applied, const Vec3& a_p,
                          const Environment& env, double dt) {
    const Vec3 a_net = a_applied + env.g + a_p;
    const double flow = a_applied.norm() / (env.I_sp * env.g_e);

    const StateVec y0{s.r, s.v, s.m};
    const StateVec k1 = deriv(y0, a_net, flow);
    const StateVec y1{y0.r + 0.5 * dt * k1.r, y0.v + 0.5 * dt * k1.v, y0.m + 0.5 * dt * k1.m};
    const StateVec k2 = deriv(y1, a_net, flow);
    const StateVec y2{y0.r + 0.5 * dt * k2.r, y0.v + 0.5 * dt * k2.v, y0.m + 0.5 * dt * k2.m};
    const StateVec k3 = deriv(y2, a_net, flow);
    const StateVec y3{y0.r + dt * k3.r, y0.v + dt * k3.v, y0.m + dt * k3.m};
    const StateVec k4 = deriv(y3, a_net, flow);

    LanderState out;
    out.r = y0.r + (dt / 6.0) * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
    out.v = y0.v + (dt / 6.0) * (k1.v + 2.0 * k2.v + 2.0 * k3.v + k4.v);
    out.m = y0.m + (dt / 6.0) * (k1.m + 2.0 * k2.m + 2.0 * k3.m + k4.m);
    out.t = s.t + dt;
    return out;
}

}  // namespace otalg
