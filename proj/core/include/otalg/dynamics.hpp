#pragma once

#include "otalg/rng.hpp"
#include "otalg/vec3.hpp"

namespace otalg {

enum class PerturbationModel { None, Sinusoidal };

/// Multiplicative wind/atmosphere disturbance: coeff * a_c * sin(pi*t/period_s).
struct Perturbation {
    PerturbationModel model = PerturbationModel::None;
    double coeff = 0.3;
    double period_s = 3.0;
};

struct Environment {
    Vec3 g{0.0, 0.0, -3.7114};     // local gravity [m/s^2]
    double g_e = 9.807;            // Earth gravity for mass flow [m/s^2]
    double T_max = 31000.0;        // thrust ceiling [N]
    double I_sp = 225.0;           // specific impulse [s]
    double actuator_tau = 0.0556;  // first-order thrust lag time constant [s]
    double thrust_noise_frac = 0.05;
    double dry_mass = 0.0;         // propagation stops when m falls to this [kg]
    Perturbation perturbation;
};

/// Point-mass lander state in the landing-site ENU frame.
struct LanderState {
    Vec3 r;        // position [m]
    Vec3 v;        // velocity [m/s]
    double m = 0;  // mass [kg]
    double t = 0;  // time since ignition [s]
};

/// Lag-filtered, saturated, noise-injected thrust acceleration currently produced.
struct ActuatorState {
    Vec3 a_applied;
};

/// Scales a_cmd down to magnitude T_max/m when the commanded thrust exceeds
/// the ceiling; direction is preserved.
Vec3 thrust_saturate(const Vec3& a_cmd, double m, double T_max);

/// Advances the first-order thrust lag one step with the exact exponential
/// update a <- a_ideal + (a - a_ideal)*exp(-dt/tau), then perturbs each
/// component by an independent uniform factor in [1-noise_frac, 1+noise_frac].
/// tau = 0 bypasses the filter.
ActuatorState actuator_step(const ActuatorState& act, const Vec3& a_ideal, double tau, double dt,
                            double noise_frac, Rng& rng);

/// Disturbance acceleration at time t for the applied thrust acceleration a_c.
Vec3 atmospheric_perturbation(double t, const Vec3& a_c, const Environment& env);

/// One classical RK4 step of rdot = v, vdot = a_applied + g + a_p,
/// mdot = -|a_applied|*m/(I_sp*g_e), with a_applied and a_p held constant
/// across the step.
LanderState dynamics_step(const LanderState& s, const Vec3& a_applied, const Vec3& a_p,
                          const Environment& env, double dt);

}  // namespace otalg
