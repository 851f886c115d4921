#include <cmath>
#include <random>

#include "doctest.h"
#include "otalg/dynamics.hpp"

using namespace otalg;

TEST_CASE("thrust saturation preserves direction and caps magnitude") {
    CHECK(thrust_saturate({0.0, 0.0, 10.0}, 1905.0, 31000.0).z == 10.0);
    const Vec3 capped = thrust_saturate({0.0, 0.0, 20.0}, 1905.0, 31000.0);
    CHECK(capped.norm() == doctest::Approx(16.272965879265092).epsilon(1e-12));
    CHECK(capped.x == 0.0);
    CHECK(thrust_saturate({}, 1905.0, 31000.0).norm() == 0.0);

    const Vec3 diag = thrust_saturate({20.0, 20.0, 20.0}, 1905.0, 31000.0);
    CHECK(diag.norm() == doctest::Approx(31000.0 / 1905.0));
    CHECK(diag.x == doctest::Approx(diag.y));
}

TEST_CASE("actuator lag is the exact exponential update") {
    Rng rng(1);
    SUBCASE("no lag, no noise passes through") {
        const ActuatorState out = actuator_step({{1.0, 2.0, 3.0}}, {4.0, 5.0, 6.0}, 0.0, 0.01, 0.0, rng);
        CHECK(out.a_applied.x == 4.0);
        CHECK(out.a_applied.z == 6.0);
    }
    SUBCASE("one step toward a unit command") {
        const ActuatorState out = actuator_step({{0.0, 0.0, 0.0}}, {1.0, 1.0, 1.0}, 0.0556, 0.050, 0.0, rng);
        CHECK(out.a_applied.x == doctest::Approx(0.593137738861633).epsilon(1e-12));
    }
    SUBCASE("noise stays within the multiplicative band") {
        for (int i = 0; i < 500; ++i) {
            const ActuatorState out =
                actuator_step({{2.0, 2.0, 2.0}}, {2.0, 2.0, 2.0}, 0.0, 0.01, 0.05, rng);
            for (int c = 0; c < 3; ++c) {
                CHECK(out.a_applied[c] >= 2.0 * 0.95);
                CHECK(out.a_applied[c] <= 2.0 * 1.05);
            }
        }
    }
    SUBCASE("identical seeds give identical noise streams") {
        Rng a(77), b(77);
        const ActuatorState oa = actuator_step({{1, 1, 1}}, {2, 2, 2}, 0.05, 0.01, 0.05, a);
        const ActuatorState ob = actuator_step({{1, 1, 1}}, {2, 2, 2}, 0.05, 0.01, 0.05, b);
        CHECK(oa.a_applied.x == ob.a_applied.x);
        CHECK(oa.a_applied.y == ob.a_applied.y);
        CHECK(oa.a_applied.z == ob.a_applied.z);
    }
}

TEST_CASE("atmospheric perturbation model") {
    Environment env;
    SUBCASE("disabled by default") {
        CHECK(atmospheric_perturbation(1.5, {1, 1, 1}, env).norm() == 0.0);
    }
    env.perturbation.model = PerturbationModel::Sinusoidal;
    SUBCASE("quarter period") {
        const Vec3 a_p = atmospheric_perturbation(1.5, {1, 1, 1}, env);
        CHECK(a_p.x == doctest::Approx(0.3));
        CHECK(a_p.z == doctest::Approx(0.3));
    }
    SUBCASE("zero at half period") {
        CHECK(atmospheric_perturbation(3.0, {1, 1, 1}, env).norm() ==
              doctest::Approx(0.0).epsilon(1e-12));
    }
}

TEST_CASE("hover leaves position and velocity unchanged while burning mass") {
    Environment env;
    LanderState s;
    s.r = {0.0, 0.0, 1000.0};
    s.m = 1905.0;
    const Vec3 hover = -env.g;
    LanderState next = s;
    for (int i = 0; i < 100; ++i) {
        next = dynamics_step(next, hover, {}, env, 0.01);
    }
    CHECK(next.r.z == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(next.v.norm() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(next.m < s.m);
    CHECK(next.t == doctest::Approx(1.0));
}

TEST_CASE("mass flow matches the rocket equation for a held thrust") {
    Environment env;
    LanderState s;
    s.r = {0, 0, 5000.0};
    s.m = 1905.0;
    const double dt = 1e-4;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 a_cmd{0.0, 0.0, 31000.0 / s.m};  // re-command so |T| stays 31000 N
        s = dynamics_step(s, a_cmd, {}, env, dt);
    }
    CHECK(1905.0 - s.m == doctest::Approx(14.048921971834176).epsilon(1e-4));
}

TEST_CASE("ballistic propagation matches the closed form to roundoff") {
    Environment env;
    LanderState s;
    s.r = {100.0, -50.0, 2000.0};
    s.v = {-30.0, 12.0, -45.0};
    s.m = 1905.0;
    const double T = 20.0;
    const double dt = 0.01;
    LanderState cur = s;
    for (int i = 0; i < static_cast<int>(T / dt); ++i) {
        cur = dynamics_step(cur, {}, {}, env, dt);
    }
    const Vec3 expect_r = s.r + T * s.v + (0.5 * T * T) * env.g;
    const Vec3 expect_v = s.v + T * env.g;
    CHECK(std::abs(cur.r.z - expect_r.z) / std::abs(expect_r.z) < 1e-10);
    CHECK(std::abs(cur.r.x - expect_r.x) / std::abs(expect_r.x) < 1e-10);
    CHECK(std::abs(cur.v.z - expect_v.z) / std::abs(expect_v.z) < 1e-10);
    CHECK(cur.m == s.m);
}

TEST_CASE("mass is monotone and constant only without thrust") {
    Environment env;
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> acc(-10.0, 10.0);
    LanderState s;
    s.r = {0, 0, 3000.0};
    s.m = 1905.0;
    for (int i = 0; i < 200; ++i) {
        const Vec3 a{acc(gen), acc(gen), acc(gen)};
        const LanderState next = dynamics_step(s, a, {}, env, 0.01);
        if (a.norm() > 0.0) {
            CHECK(next.m < s.m);
        } else {
            CHECK(next.m == s.m);
        }
        s = next;
    }
}
