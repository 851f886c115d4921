#pragma once

#include <cstdint>
#include <vector>

#include "otalg/dynamics.hpp"
#include "otalg/guidance.hpp"
#include "otalg/vec3.hpp"

namespace otalg {

enum class RunStatus { Ok, FuelDepleted, NonFiniteState };

const char* run_status_name(RunStatus s);

struct TerminalSummary {
    double dx = 0.0;           // final lateral miss, x [m]
    double dy = 0.0;           // final lateral miss, y [m]
    double dvz = 0.0;          // final vertical speed error [m/s]
    double dm = 0.0;           // fuel consumed [kg]
    double flight_time = 0.0;  // [s]
};

/// Uniform-dt telemetry of one closed-loop run. Row k holds the state at
/// t = k*dt together with the commands computed from it; the post-step end
/// state lives in final_state and feeds the terminal summary.
struct TrajectoryLog {
    GuidanceLaw law = GuidanceLaw::MssOtalg;
    double dt = 0.01;
    double t_f = 100.0;
    double t_go_floor = 0.1;

    std::vector<double> t;
    std::vector<Vec3> r;
    std::vector<Vec3> v;
    std::vector<double> m;
    std::vector<Vec3> a_cmd;      // ideal guidance command, pre-saturation
    std::vector<Vec3> a_applied;  // actuator output used by the dynamics
    std::vector<Vec3> a_p;
    std::vector<Vec3> zem;
    std::vector<Vec3> zev;
    std::vector<Vec3> p;
    std::vector<Vec3> divert;
    std::vector<Vec3> s1;
    std::vector<Vec3> s2;
    std::vector<Vec3> phi;
    std::vector<double> rho_z;
    std::vector<Vec3> d;
    std::vector<std::uint8_t> rho_ambiguous;

    LanderState final_state;
    TerminalSummary summary;
    RunStatus status = RunStatus::Ok;
    int ambiguous_steps = 0;

    std::size_t size() const { return t.size(); }
};

}  // namespace otalg
