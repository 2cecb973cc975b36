#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/errors.hpp"
#include "core/map.hpp"
#include "core/orbit_finder.hpp"

using namespace tongue;

namespace {

std::mt19937 rng(20240917);

TorusPoint random_point() {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    return {u(rng), u(rng)};
}

MapParams random_params() {
    std::uniform_real_distribution<double> uk(0.0, 5.0);
    std::uniform_real_distribution<double> uo(-1.5, 1.5);
    return {uk(rng), uo(rng), InvolutionCase::A};
}

// one lifted step, used for differencing without wrap jumps
void lifted_step(double& theta, double& j, const MapParams& p) {
    theta += j;
    j += p.k_tilde * std::sin(theta) + kTwoPi * p.omega;
}

}  // namespace

TEST_CASE("step evaluates the kicked torus map") {
    MapParams p{3.0, 0.0, InvolutionCase::A};
    TorusPoint y = step({0.0, 0.0}, p);
    CHECK(y.theta == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(y.j == doctest::Approx(0.0).epsilon(1e-15));

    p = {2.0, 1.0, InvolutionCase::A};
    y = step({kPi, 0.0}, p);
    CHECK(torus_distance(y.theta, kPi) < 1e-12);
    CHECK(torus_distance(y.j, 0.0) < 1e-12);

    p = {1.0, 0.0, InvolutionCase::A};
    y = step({kPi / 2.0, kPi}, p);
    CHECK(y.theta == doctest::Approx(1.5 * kPi));
    CHECK(y.j == doctest::Approx(kPi - 1.0));
}

TEST_CASE("step_inverse undoes step") {
    MapParams p{3.0, 0.0, InvolutionCase::A};
    TorusPoint y = step_inverse({0.0, 0.0}, p);
    CHECK(y.theta == doctest::Approx(0.0));
    CHECK(y.j == doctest::Approx(0.0));

    p = {1.0, 0.0, InvolutionCase::A};
    y = step_inverse({1.5 * kPi, kPi - 1.0}, p);
    CHECK(y.theta == doctest::Approx(kPi / 2.0));
    CHECK(y.j == doctest::Approx(kPi));

    for (int i = 0; i < 1000; ++i) {
        const MapParams q = random_params();
        const TorusPoint x = random_point();
        const TorusPoint r = step_inverse(step(x, q), q);
        CHECK(torus_distance(r.theta, x.theta) < 1e-12);
        CHECK(torus_distance(r.j, x.j) < 1e-12);
    }
}

TEST_CASE("involutions square to the identity and compose to the map") {
    {
        TorusPoint y = involution_a({0.0, 0.0});
        CHECK(y.theta == doctest::Approx(0.0));
        CHECK(y.j == doctest::Approx(0.0));
        y = involution_a({0.0, kPi / 2.0});
        CHECK(y.theta == doctest::Approx(kPi / 2.0));
        CHECK(y.j == doctest::Approx(1.5 * kPi));
    }
    for (int i = 0; i < 1000; ++i) {
        const MapParams q = random_params();
        const TorusPoint x = random_point();
        const TorusPoint aa = involution_a(involution_a(x));
        CHECK(torus_distance(aa.theta, x.theta) < 1e-12);
        CHECK(torus_distance(aa.j, x.j) < 1e-12);
        const TorusPoint bb = involution_b(involution_b(x, q), q);
        CHECK(torus_distance(bb.theta, x.theta) < 1e-12);
        CHECK(torus_distance(bb.j, x.j) < 1e-12);
        const TorusPoint m = involution_b(involution_a(x), q);
        const TorusPoint s = step(x, q);
        CHECK(torus_distance(m.theta, s.theta) < 1e-12);
        CHECK(torus_distance(m.j, s.j) < 1e-12);
    }
}

TEST_CASE("points on the fixed-point lines are fixed by involution_b") {
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int i = 0; i < 200; ++i) {
        const MapParams q = random_params();
        const double theta = u(rng);
        for (double extra : {0.0, kPi}) {
            const double j0 = wrap_angle(0.5 * q.k_tilde * std::sin(theta) + kPi * q.omega + extra);
            const TorusPoint fixed = involution_b({theta, j0}, q);
            CHECK(torus_distance(fixed.theta, theta) < 1e-12);
            CHECK(torus_distance(fixed.j, j0) < 1e-12);
        }
    }
}

TEST_CASE("reversor conjugates the map to its inverse") {
    TorusPoint y = reversor({0.0, kPi / 2.0});
    CHECK(y.theta == doctest::Approx(kPi / 2.0));
    CHECK(y.j == doctest::Approx(1.5 * kPi));

    for (int i = 0; i < 1000; ++i) {
        const MapParams q = random_params();
        const TorusPoint x = random_point();
        const TorusPoint rr = reversor(reversor(x));
        CHECK(torus_distance(rr.theta, x.theta) < 1e-12);
        CHECK(torus_distance(rr.j, x.j) < 1e-12);
        const TorusPoint lhs = reversor(step(reversor(x), q));
        const TorusPoint rhs = step_inverse(x, q);
        CHECK(torus_distance(lhs.theta, rhs.theta) < 1e-11);
        CHECK(torus_distance(lhs.j, rhs.j) < 1e-11);
    }
}

TEST_CASE("tangent matches the exact one-step Jacobian") {
    MapParams p{0.0, 0.7, InvolutionCase::A};
    Jacobian2x2 t = tangent(1.234, p);
    CHECK(t.a == doctest::Approx(1.0));
    CHECK(t.b == doctest::Approx(0.0));
    CHECK(t.c == doctest::Approx(1.0));
    CHECK(t.d == doctest::Approx(1.0));

    p.k_tilde = 3.0;
    t = tangent(kPi / 2.0, p);
    CHECK(t.a == doctest::Approx(1.0));
    CHECK(t.b == doctest::Approx(0.0).epsilon(1e-12));

    for (int i = 0; i < 1000; ++i) {
        const MapParams q = random_params();
        const TorusPoint x = random_point();
        const TorusPoint y = step(x, q);
        const Jacobian2x2 m = tangent(y.theta, q);
        CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-13));
    }

    // central differences of the lifted step against the analytic matrix
    const double h = 1e-6;
    for (int i = 0; i < 200; ++i) {
        const MapParams q = random_params();
        const TorusPoint x = random_point();
        const Jacobian2x2 m = tangent(step(x, q).theta, q);
        double tp = x.theta, jp = x.j + h;
        double tm = x.theta, jm = x.j - h;
        lifted_step(tp, jp, q);
        lifted_step(tm, jm, q);
        CHECK(m.a == doctest::Approx((jp - jm) / (2 * h)).epsilon(1e-5));
        CHECK(m.c == doctest::Approx((tp - tm) / (2 * h)).epsilon(1e-5));
        tp = x.theta + h; jp = x.j;
        tm = x.theta - h; jm = x.j;
        lifted_step(tp, jp, q);
        lifted_step(tm, jm, q);
        CHECK(m.b == doctest::Approx((jp - jm) / (2 * h)).epsilon(1e-4));
        CHECK(m.d == doctest::Approx((tp - tm) / (2 * h)).epsilon(1e-5));
    }
}

TEST_CASE("monodromy of known orbits") {
    // fixed point (pi, 0) at Omega = 1: trace 2 - k, stable below k = 4
    for (double k : {0.5, 1.0, 2.0, 3.9, 4.1}) {
        MapParams p{k, 1.0, InvolutionCase::A};
        OrbitRecord rec;
        rec.period = 1;
        rec.points = {{kPi, 0.0}};
        rec.winding_j = 1;
        const Jacobian2x2 m = monodromy(rec, p);
        CHECK(m.trace() == doctest::Approx(2.0 - k).epsilon(1e-12));
        CHECK(classify_stability(m.trace()) ==
              (k < 4.0 ? Stability::Stable : Stability::Unstable));
    }

    // zero kick: any periodic orbit has trace exactly 2
    OrbitRecord free_orbit = construct_zero_kick_orbit(5, 2, 4);
    MapParams p0{0.0, 2.0 / 5.0, InvolutionCase::A};
    CHECK(monodromy(free_orbit, p0).trace() == doctest::Approx(2.0).epsilon(1e-14));

    // trace does not depend on the starting point of the product
    MapParams pp{kPi, 0.5, InvolutionCase::BPlus};
    OrbitRecord two;
    two.period = 2;
    two.points = {{kPi / 2.0, kPi}, {1.5 * kPi, kPi}};
    const double tr_a = monodromy(two, pp).trace();
    std::swap(two.points[0], two.points[1]);
    const double tr_b = monodromy(two, pp).trace();
    CHECK(tr_a == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(tr_a == doctest::Approx(tr_b).epsilon(1e-10));

    // rejects a non-orbit
    OrbitRecord bad;
    bad.period = 2;
    bad.points = {{0.1, 0.2}, {1.0, 1.0}};
    CHECK_THROWS_AS(monodromy(bad, pp), DomainError);
}

TEST_CASE("tangent products stay area preserving over long trajectories") {
    // the determinant defect of a floating-point product scales with the
    // squared matrix norm; hyperbolic stretching makes any absolute bound
    // meaningless for long random trajectories
    for (int steps : {8, 64}) {
        for (int i = 0; i < 200; ++i) {
            const MapParams q = random_params();
            const TorusPoint x = random_point();
            const Jacobian2x2 m = tangent_product(x, steps, q);
            const double norm = std::max({std::fabs(m.a), std::fabs(m.b), std::fabs(m.c),
                                          std::fabs(m.d), 1.0});
            CHECK(std::fabs(m.det() - 1.0) < 1e-12 * norm * norm + 1e-12);
        }
    }
    // zero kick: pure shear, determinant exact
    for (int i = 0; i < 100; ++i) {
        const MapParams q{0.0, 0.3, InvolutionCase::A};
        const Jacobian2x2 m = tangent_product(random_point(), 64, q);
        CHECK(m.det() == doctest::Approx(1.0).epsilon(1e-14));
    }
}

TEST_CASE("classify_stability thresholds") {
    CHECK(classify_stability(1.5) == Stability::Stable);
    CHECK(classify_stability(2.0) == Stability::Marginal);
    CHECK(classify_stability(-2.0) == Stability::Marginal);
    CHECK(classify_stability(2.005) == Stability::Unstable);
    CHECK(classify_stability(-2.3) == Stability::Unstable);
    CHECK_THROWS_AS(classify_stability(1.0, -1.0), DomainError);
}

TEST_CASE("returned coordinates stay on [0, 2*pi)") {
    for (int i = 0; i < 1000; ++i) {
        const MapParams q = random_params();
        std::uniform_real_distribution<double> wide(-50.0, 50.0);
        TorusPoint x{wide(rng), wide(rng)};
        for (TorusPoint y : {step(x, q), step_inverse(x, q), involution_a(x),
                             involution_b(x, q), reversor(x)}) {
            CHECK(y.theta >= 0.0);
            CHECK(y.theta < kTwoPi);
            CHECK(y.j >= 0.0);
            CHECK(y.j < kTwoPi);
        }
    }
}
