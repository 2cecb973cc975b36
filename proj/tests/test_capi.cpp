#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>

#include <tongue_atlas.h>

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("map operations through the C interface") {
    ta_map_params p{1.0, 0.0, TA_CASE_A};
    ta_point x{kPi / 2, kPi};
    ta_point y{};
    REQUIRE(ta_map_step(&p, &x, &y) == TA_OK);
    CHECK(y.theta == doctest::Approx(1.5 * kPi));
    CHECK(y.momentum == doctest::Approx(kPi - 1.0));

    ta_point back{};
    REQUIRE(ta_map_step_inverse(&p, &y, &back) == TA_OK);
    CHECK(back.theta == doctest::Approx(x.theta));
    CHECK(back.momentum == doctest::Approx(x.momentum));

    ta_point a{};
    REQUIRE(ta_involution_a(&x, &a) == TA_OK);
    ta_point b{};
    REQUIRE(ta_involution_b(&p, &a, &b) == TA_OK);
    CHECK(b.theta == doctest::Approx(y.theta));
    CHECK(b.momentum == doctest::Approx(y.momentum));

    ta_point r{};
    REQUIRE(ta_reversor(&x, &r) == TA_OK);
    CHECK(r.theta == doctest::Approx(a.theta));
    CHECK(r.momentum == doctest::Approx(a.momentum));

    double m[4];
    REQUIRE(ta_tangent(&p, 0.0, m) == TA_OK);
    CHECK(m[0] == doctest::Approx(2.0));
    CHECK(m[0] * m[3] - m[1] * m[2] == doctest::Approx(1.0));

    int s = -1;
    REQUIRE(ta_classify_stability(1.0, 1e-9, &s) == TA_OK);
    CHECK(s == TA_STABLE);
}

TEST_CASE("error reporting") {
    ta_map_params bad{-1.0, 0.0, TA_CASE_A};
    ta_point x{0, 0}, y{};
    CHECK(ta_map_step(&bad, &x, &y) == TA_ERR_INVALID_ARGUMENT);
    CHECK(std::strlen(ta_last_error()) > 0);

    int64_t inv = 0;
    CHECK(ta_mod_inverse(6, 9, &inv) == TA_ERR_INVALID_ARGUMENT);
    CHECK(ta_status_name(TA_ERR_SINGULAR) != nullptr);

    // zero kick off an orbit: singular one-shot Jacobian
    ta_map_params pz{0.0, 0.5, TA_CASE_A};
    ta_point seed{1.0, 1.0};
    ta_orbit_list* list = nullptr;
    CHECK(ta_find_non_involution_orbit(&pz, &seed, 2, nullptr, &list) == TA_ERR_SINGULAR);
}

TEST_CASE("number theory and Gauss sums") {
    int64_t v = 0;
    REQUIRE(ta_totient(12, &v) == TA_OK);
    CHECK(v == 4);
    REQUIRE(ta_mod_inverse(3, 7, &v) == TA_OK);
    CHECK(v == 5);
    int sym = 0;
    REQUIRE(ta_legendre(2, 7, &sym) == TA_OK);
    CHECK(sym == 1);
    REQUIRE(ta_jacobi(2, 15, &sym) == TA_OK);
    CHECK(sym == 1);

    double xi = 0.0;
    REQUIRE(ta_xi_phase(2, 1, TA_CASE_B_PLUS, &xi) == TA_OK);
    CHECK(xi == doctest::Approx(kPi / 4).epsilon(1e-12));

    int64_t l = 0;
    REQUIRE(ta_gauss_case_l(7, 3, TA_CASE_A, &l) == TA_OK);
    CHECK(l == -3);

    double re = 0.0, im = 0.0;
    REQUIRE(ta_gauss_sum_direct(2, 1, 0, &re, &im) == TA_OK);
    CHECK(re == doctest::Approx(1.0));
    CHECK(im == doctest::Approx(1.0));
}

TEST_CASE("perturbative helpers") {
    double lo = 0.0, hi = 0.0;
    REQUIRE(ta_tongue_edges(1, 1, 0.5, &lo, &hi) == TA_OK);
    CHECK(hi - lo == doctest::Approx(0.5 / kPi).epsilon(1e-12));

    double ks = 0.0;
    REQUIRE(ta_p1_stability_border(1.0, &ks) == TA_OK);
    CHECK(ks == doctest::Approx(4.0));

    ta_resonance3 r{};
    REQUIRE(ta_resonance3_eta(&r) == TA_OK);
    CHECK(r.eta == doctest::Approx(0.25758).epsilon(1e-4));
    CHECK(r.omega_freq == doctest::Approx(2.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("orbit list lifecycle") {
    ta_finder_config cfg;
    ta_finder_config_default(&cfg);
    CHECK(cfg.grid_points == 4096);

    ta_orbit_list* list = nullptr;
    REQUIRE(ta_find_orbits_all_cases(1.0, 1.0, 1, 1, &cfg, &list) == TA_OK);
    REQUIRE(ta_orbit_list_size(list) == 2);
    ta_orbit_info info{};
    REQUIRE(ta_orbit_info_get(list, 1, &info) == TA_OK);
    CHECK(info.period == 1);
    CHECK(info.winding_j == 1);
    CHECK(info.stability == TA_STABLE);
    CHECK(info.trace == doctest::Approx(1.0));
    ta_point pt{};
    REQUIRE(ta_orbit_point_get(list, 1, 0, &pt) == TA_OK);
    CHECK(pt.theta == doctest::Approx(kPi));
    CHECK(ta_orbit_point_get(list, 1, 5, &pt) == TA_ERR_INVALID_ARGUMENT);
    ta_orbit_list_free(list);

    ta_orbit_list* zk = nullptr;
    REQUIRE(ta_construct_zero_kick_orbit(6, 3, 2, 0.0, &zk) == TA_OK);
    REQUIRE(ta_orbit_list_size(zk) == 1);
    REQUIRE(ta_orbit_point_get(zk, 0, 0, &pt) == TA_OK);
    CHECK(pt.momentum == doctest::Approx(kPi / 6));
    ta_orbit_list_free(zk);
}

TEST_CASE("residual evaluation") {
    ta_map_params p{kPi, 0.5, TA_CASE_B_PLUS};
    double fj = 1.0, sh = 1.0;
    REQUIRE(ta_residuals(&p, 2, 1, 1, kPi / 2, &fj, &sh) == TA_OK);
    CHECK(std::fabs(fj) < 1e-12);
    CHECK(std::fabs(sh) < 1e-12);
}

TEST_CASE("curves, cascade and portrait handles") {
    ta_curve* curve = nullptr;
    REQUIRE(ta_trace_tongue_boundary(1, 1, TA_SIDE_RIGHT, 0.5, 0.25, nullptr, &curve) == TA_OK);
    REQUIRE(ta_curve_size(curve) == 2);
    double k = 0, omega = 0, aux = 0;
    REQUIRE(ta_curve_get(curve, 1, &k, &omega, &aux) == TA_OK);
    CHECK(k == doctest::Approx(0.5));
    CHECK(omega == doctest::Approx(1.0 + 0.5 / (2 * kPi)).epsilon(1e-8));
    ta_curve_free(curve);

    ta_curve* border = nullptr;
    REQUIRE(ta_trace_stability_border(1, 1, 1.0, 1.0, 0.5, 6.0, nullptr, &border) == TA_OK);
    REQUIRE(ta_curve_size(border) == 1);
    REQUIRE(ta_curve_get(border, 0, &k, &omega, &aux) == TA_OK);
    CHECK(k == doctest::Approx(4.0).epsilon(1e-6));
    ta_curve_free(border);

    ta_cascade* cascade = nullptr;
    REQUIRE(ta_follow_cascade(1, 0, 0.3692, 2, nullptr, &cascade) == TA_OK);
    CHECK(ta_cascade_k_count(cascade) == 3);
    double k0 = 0;
    REQUIRE(ta_cascade_k_get(cascade, 0, &k0) == TA_OK);
    CHECK(k0 == doctest::Approx(4.6239).epsilon(1e-4));
    double ddev = 0, adev = 0;
    REQUIRE(ta_universality_check(cascade, &ddev, &adev) == TA_OK);
    ta_cascade_free(cascade);

    ta_map_params pp{0.0, 0.0, TA_CASE_A};
    ta_portrait* portrait = nullptr;
    REQUIRE(ta_portrait_run(&pp, 4, 3, &portrait) == TA_OK);
    CHECK(ta_portrait_size(portrait) == 16);
    int sid = -1, iter = -1;
    ta_point pt{};
    REQUIRE(ta_portrait_get(portrait, 5, &sid, &iter, &pt) == TA_OK);
    CHECK(sid == 1);
    CHECK(iter == 1);
    ta_portrait_free(portrait);
}

TEST_CASE("census handle") {
    ta_census* census = nullptr;
    REQUIRE(ta_census_run(kPi + 0.05, kPi + 0.0501, 0.5, 0.5001, 1, 1, 2, 1, nullptr, &census) ==
            TA_OK);
    bool found = false;
    for (size_t i = 0; i < ta_census_size(census); ++i) {
        ta_census_row row{};
        REQUIRE(ta_census_get(census, i, &row) == TA_OK);
        if (row.period == 2 && row.winding_j == 1) {
            found = true;
            CHECK(row.n_stable == 2);
        }
    }
    CHECK(found);
    ta_census_free(census);
}
