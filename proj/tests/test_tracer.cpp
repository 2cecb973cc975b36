#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "core/errors.hpp"
#include "core/perturbative.hpp"
#include "core/tongue_tracer.hpp"

using namespace tongue;

TEST_CASE("extremum_of_residual on the p = 1 residual") {
    // F_J = k sin(theta) + 2*pi*(Omega - 1): max at pi/2, value k + 2*pi*(Omega-1)
    MapParams p{0.5, 0.97, InvolutionCase::A};
    const auto ext = extremum_of_residual({1, 1}, p, 0.5, 2.5);
    // the bracket collapses to 1e-12 but value comparisons go flat near a
    // smooth extremum, so the location is only good to ~sqrt(eps)
    CHECK(std::fabs(ext.theta_ext - kPi / 2) < 1e-7);
    CHECK(ext.f_ext == doctest::Approx(0.5 + kTwoPi * (0.97 - 1.0)).epsilon(1e-12));

    // on the edge the extremum vanishes
    MapParams pb{0.5, 1.0 - 0.5 / kTwoPi, InvolutionCase::A};
    const auto at_edge = extremum_of_residual({1, 1}, pb, 0.5, 2.5);
    CHECK(std::fabs(at_edge.f_ext) < 1e-12);

    // flat residual at zero kick on the vertex
    MapParams pf{0.0, 1.0, InvolutionCase::A};
    CHECK_THROWS_AS(extremum_of_residual({1, 1}, pf, 0.5, 2.5), DomainError);

    // monotonic stretch has no interior extremum
    MapParams pm{0.5, 0.97, InvolutionCase::A};
    CHECK_THROWS_AS(extremum_of_residual({1, 1}, pm, 0.1, 1.2), DomainError);
}

TEST_CASE("p = 1 boundary is traced exactly") {
    TraceConfig cfg;
    for (Side side : {Side::Left, Side::Right}) {
        const auto curve = trace_tongue_boundary({1, 1}, side, 2.0, 0.25, cfg);
        REQUIRE(curve.samples.size() == 8);
        double k_prev = 0.0;
        for (const auto& s : curve.samples) {
            CHECK(s.k > k_prev);
            k_prev = s.k;
            CHECK(std::fabs(kTwoPi * std::fabs(s.omega - 1.0) - s.k) < 1e-8);
            CHECK(std::fabs(s.f_ext) < 1e-9);
        }
    }
}

TEST_CASE("p = 2 boundary matches the first-order edges at small k") {
    TraceConfig cfg;
    for (Side side : {Side::Left, Side::Right}) {
        const auto curve = trace_tongue_boundary({2, 1}, side, 0.01, 0.005, cfg);
        REQUIRE(curve.samples.size() >= 2);
        for (const auto& s : curve.samples) {
            const auto [lo, hi] = tongue_edges({2, 1}, s.k);
            const double expect = (side == Side::Left) ? lo : hi;
            const double half_width = s.k / (kTwoPi * std::sqrt(2.0));
            CHECK(std::fabs(s.omega - expect) / half_width < 0.01);
        }
    }
}

TEST_CASE("boundary samples separate two roots inside from none outside") {
    TraceConfig cfg;
    const auto curve = trace_tongue_boundary({2, 1}, Side::Right, 0.4, 0.1, cfg);
    const double eps = 1e-6;
    for (const auto& s : curve.samples) {
        MapParams inside{s.k, s.omega - eps, InvolutionCase::BPlus};
        MapParams outside{s.k, s.omega + eps, InvolutionCase::BPlus};
        CHECK(find_involution_orbits({2, 1}, inside, cfg.finder).size() == 2);
        CHECK(find_involution_orbits({2, 1}, outside, cfg.finder).empty());
    }
}

TEST_CASE("coalescence gap consistency just inside a traced boundary") {
    TraceConfig cfg;
    const auto curve = trace_tongue_boundary({2, 1}, Side::Right, 0.02, 0.01, cfg);
    for (const auto& s : curve.samples) {
        const double d_omega = 1e-5 * s.k;
        MapParams inside{s.k, s.omega - d_omega, InvolutionCase::BPlus};
        const auto orbits = find_involution_orbits({2, 1}, inside, cfg.finder);
        REQUIRE(orbits.size() == 2);
        const double gap = torus_distance(orbits[0].theta0, orbits[1].theta0);
        CHECK(gap == doctest::Approx(coalescence_gap({2, 1}, s.k, d_omega)).epsilon(0.05));
    }
}

TEST_CASE("p = 1 stability border matches the closed form") {
    TraceConfig cfg;
    const auto curve = trace_stability_border({1, 1}, 0.9, 1.1, 0.05, 6.0, cfg);
    REQUIRE(curve.samples.size() == 5);
    for (const auto& s : curve.samples) {
        CHECK(std::fabs(s.k - p1_stability_border(s.omega)) < 1e-6);
        CHECK(std::fabs(std::fabs(s.trace) - 2.0) < 1e-6);
    }
    // border continuity between neighboring columns
    for (size_t i = 1; i < curve.samples.size(); ++i)
        CHECK(std::fabs(curve.samples[i].k - curve.samples[i - 1].k) < 10 * 0.05);
}

TEST_CASE("census inventories") {
    TraceConfig cfg;
    // far outside every low-period tongue
    const auto empty = census(0.02, 0.020001, 0.47, 0.470001, 1, 1, 2, cfg, 1);
    REQUIRE(empty.size() == 1);
    CHECK(empty[0].entries.empty());

    // just above the pitchfork two stable period-2 orbits coexist
    const auto kite = census(kPi + 0.05, kPi + 0.0500001, 0.5, 0.5000001, 1, 1, 2, cfg, 1);
    REQUIRE(kite.size() == 1);
    bool found = false;
    for (const auto& e : kite[0].entries)
        if (e.p == 2 && e.j == 1) {
            found = true;
            CHECK(e.n_stable == 2);
        }
    CHECK(found);

    // deterministic under threading
    const auto grid1 = census(0.4, 0.6, 0.45, 0.55, 2, 2, 2, cfg, 1);
    const auto grid4 = census(0.4, 0.6, 0.45, 0.55, 2, 2, 2, cfg, 4);
    REQUIRE(grid1.size() == grid4.size());
    for (size_t i = 0; i < grid1.size(); ++i) {
        CHECK(grid1[i].k == grid4[i].k);
        CHECK(grid1[i].omega == grid4[i].omega);
        REQUIRE(grid1[i].entries.size() == grid4[i].entries.size());
        for (size_t e = 0; e < grid1[i].entries.size(); ++e) {
            CHECK(grid1[i].entries[e].p == grid4[i].entries[e].p);
            CHECK(grid1[i].entries[e].j == grid4[i].entries[e].j);
            CHECK(grid1[i].entries[e].n_stable == grid4[i].entries[e].n_stable);
            CHECK(grid1[i].entries[e].n_unstable == grid4[i].entries[e].n_unstable);
        }
    }
}
