#ifndef TONGUE_CORE_GAUSS_SUMS_HPP
#define TONGUE_CORE_GAUSS_SUMS_HPP

#include <complex>
#include <cstdint>

#include "map.hpp"

namespace tongue {

// Winding pair j/p of a tongue; the closed-form phase needs gcd(j, p) = 1.
struct WindingRatio {
    long long j = 1;
    long long p = 1;
};

struct GaussSumResult {
    double magnitude = 0.0;  // sqrt(p) for coprime j, p
    double phase = 0.0;      // xi(p, j), reduced to (-pi, pi]
    long long l_param = 0;   // linear coefficient of the quadratic exponent
};

long long totient(long long p);

// Inverse of j mod p, in [1, p) for p > 1; returns 0 for p = 1.
long long mod_inverse(long long j, long long p);

// Euler-criterion Legendre symbol; q must be an odd prime.
int legendre(long long a, long long q);

// Product of Legendre symbols over the prime factorization of odd b.
int jacobi(long long a, long long b);

bool is_prime(long long n);

// Linear coefficient l of the quadratic Gauss sum selected by the involution
// case: l = -j for case A (odd p), 0 for B_plus and p for B_minus (even p).
long long gauss_case_l(const WindingRatio& w, InvolutionCase c);

// Closed-form phase xi(p, j) of the quadratic Gauss sum for the given case,
// computed in exact integer arithmetic and reduced to (-pi, pi].
double xi_phase(const WindingRatio& w, InvolutionCase c);

// sum_{m=1..p} exp(i*pi*(l*m + j*m^2)/p), summed term by term.
std::complex<double> gauss_sum_direct(const WindingRatio& w, long long l);

// Magnitude sqrt(p) and closed-form phase, bundled with the case's l.
GaussSumResult gauss_sum_closed(const WindingRatio& w, InvolutionCase c);

// sum_{m=1..p} m * exp(i*pi*(j/p)*[(chi_p - 1)m + m^2]) with chi_p = 0 for
// odd p and 1 for even p; equals ((p+1)/2) G for odd p and (p/2)(G+1) for even p.
std::complex<double> weighted_gauss_sum_direct(const WindingRatio& w);

}  // namespace tongue

#endif
