#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "core/errors.hpp"
#include "core/gauss_sums.hpp"

using namespace tongue;

namespace {

long long totient_brute(long long p) {
    long long c = 0;
    for (long long m = 1; m <= p; ++m)
        if (std::gcd(m, p) == 1) ++c;
    return p == 1 ? 1 : c;
}

long long powmod_ref(long long b, long long e, long long m) {
    if (m == 1) return 0;
    long long acc = 1;
    b = ((b % m) + m) % m;
    while (e > 0) {
        if (e & 1) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return acc;
}

}  // namespace

TEST_CASE("totient against enumeration") {
    CHECK(totient(1) == 1);
    CHECK(totient(7) == 6);
    CHECK(totient(12) == 4);
    for (long long p = 1; p <= 200; ++p) CHECK(totient(p) == totient_brute(p));
}

TEST_CASE("mod_inverse by extended gcd agrees with the totient-power formula") {
    CHECK(mod_inverse(1, 5) == 1);
    CHECK(mod_inverse(3, 7) == 5);
    CHECK_THROWS_AS(mod_inverse(6, 9), DomainError);
    for (long long p = 2; p <= 500; ++p) {
        const long long phi = totient(p);
        for (long long j = 1; j < p; ++j) {
            if (std::gcd(j, p) != 1) continue;
            const long long inv = mod_inverse(j, p);
            CHECK(inv >= 1);
            CHECK(inv < p);
            CHECK(j * inv % p == 1);
            CHECK(inv == powmod_ref(j, phi - 1, p));
        }
    }
}

TEST_CASE("legendre symbol by Euler's criterion") {
    CHECK(legendre(1, 7) == 1);
    CHECK(legendre(2, 7) == 1);   // 3^2 = 9 = 2 mod 7
    CHECK(legendre(2, 5) == -1);  // squares mod 5 are {1, 4}
    CHECK_THROWS_AS(legendre(2, 8), DomainError);
    CHECK_THROWS_AS(legendre(2, 1), DomainError);
    CHECK_THROWS_AS(legendre(2, 15), DomainError);
    // oracle: enumerate squares
    for (long long q : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
        for (long long a = 0; a < q; ++a) {
            int expect = -1;
            if (a % q == 0) expect = 0;
            for (long long m = 0; m < q && expect == -1; ++m)
                if (m * m % q == a) expect = 1;
            CHECK(legendre(a, q) == expect);
        }
    }
}

TEST_CASE("jacobi symbol") {
    CHECK(jacobi(5, 1) == 1);
    CHECK(jacobi(-3, 1) == 1);
    CHECK(jacobi(2, 15) == 1);  // (-1)(-1)
    CHECK_THROWS_AS(jacobi(3, 4), DomainError);
    for (long long p = 3; p <= 99; p += 2)
        CHECK(jacobi(-1, p) == ((p - 1) / 2 % 2 == 0 ? 1 : -1));
    // completely multiplicative in the lower argument
    for (long long b1 : {3, 5, 9, 15, 21}) {
        for (long long b2 : {3, 7, 11, 25}) {
            for (long long a = 1; a <= 12; ++a)
                CHECK(jacobi(a, b1 * b2) == jacobi(a, b1) * jacobi(a, b2));
        }
    }
}

TEST_CASE("xi_phase reproduces the reference multiples of pi") {
    struct Row { long long p, j; double xi; };
    const Row rows[] = {
        {2, 1, kPi / 4},    {3, 1, kPi / 6},     {3, 2, -kPi / 6},   {4, 1, kPi / 4},
        {4, 3, 3 * kPi / 4},{5, 1, kPi / 5},     {5, 2, 2 * kPi / 5},{5, 3, -2 * kPi / 5},
        {5, 4, -kPi / 5},   {6, 1, kPi / 4},     {6, 5, -3 * kPi / 4},
        {7, 1, 3 * kPi / 14},{7, 2, -kPi / 14},  {7, 3, 9 * kPi / 14},
        {7, 4, -9 * kPi / 14},{7, 5, kPi / 14},  {7, 6, -3 * kPi / 14},
    };
    for (const Row& r : rows) {
        const InvolutionCase c = (r.p % 2 == 0) ? InvolutionCase::BPlus : InvolutionCase::A;
        CHECK(std::fabs(xi_phase({r.j, r.p}, c) - r.xi) < 1e-12);
    }
}

TEST_CASE("xi_phase rejects case/parity mismatches and non-coprime input") {
    CHECK_THROWS_AS(xi_phase({1, 3}, InvolutionCase::BPlus), DomainError);
    CHECK_THROWS_AS(xi_phase({1, 3}, InvolutionCase::BMinus), DomainError);
    CHECK_THROWS_AS(xi_phase({1, 4}, InvolutionCase::A), DomainError);
    CHECK_THROWS_AS(xi_phase({2, 4}, InvolutionCase::BPlus), DomainError);
}

TEST_CASE("gauss_sum_direct hand sums") {
    const auto g21 = gauss_sum_direct({1, 2}, 0);
    CHECK(g21.real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(g21.imag() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::arg(g21) == doctest::Approx(kPi / 4).epsilon(1e-12));

    const auto g31 = gauss_sum_direct({1, 3}, -1);
    CHECK(g31.real() == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(g31.imag() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-12));
    CHECK(std::arg(g31) == doctest::Approx(kPi / 6).epsilon(1e-12));
}

TEST_CASE("direct sums match the closed form for every case, p <= 200") {
    for (long long p = 1; p <= 200; ++p) {
        for (long long j = 1; j <= p; ++j) {
            if (std::gcd(j, p) != 1) continue;
            const bool odd = (p % 2 != 0);
            const auto cases = odd ? std::vector<InvolutionCase>{InvolutionCase::A}
                                   : std::vector<InvolutionCase>{InvolutionCase::BPlus,
                                                                 InvolutionCase::BMinus};
            for (InvolutionCase c : cases) {
                const GaussSumResult closed = gauss_sum_closed({j, p}, c);
                const auto direct = gauss_sum_direct({j, p}, closed.l_param);
                CHECK(std::abs(direct) == doctest::Approx(std::sqrt((double)p)).epsilon(1e-11));
                const double dphi =
                    std::remainder(std::arg(direct) - closed.phase, kTwoPi);
                CHECK(std::fabs(dphi) < 1e-9);
            }
        }
    }
}

TEST_CASE("weighted quadratic sums reduce to the plain Gauss sum") {
    // p = 1: the single term is the sum itself
    const auto w1 = weighted_gauss_sum_direct({1, 1});
    const auto g1 = gauss_sum_direct({1, 1}, -1);
    CHECK(std::abs(w1 - g1) < 1e-12);

    for (long long p : {3, 5, 7}) {
        for (long long j = 1; j < p; ++j) {
            if (std::gcd(j, p) != 1) continue;
            const auto w = weighted_gauss_sum_direct({j, p});
            const auto g = gauss_sum_direct({j, p}, -j);
            const auto ratio = w / g;
            CHECK(ratio.real() == doctest::Approx((p + 1) / 2.0).epsilon(1e-10));
            CHECK(ratio.imag() == doctest::Approx(0.0).epsilon(1e-10));
        }
    }
    for (long long p : {2, 4, 6}) {
        for (long long j = 1; j < p; ++j) {
            if (std::gcd(j, p) != 1) continue;
            const auto w = weighted_gauss_sum_direct({j, p});
            const auto g = gauss_sum_direct({j, p}, 0);
            const auto expect = (p / 2.0) * (g + 1.0);
            CHECK(std::abs(w - expect) < 1e-10);
        }
    }
}
