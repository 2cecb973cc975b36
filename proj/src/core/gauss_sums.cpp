#include "gauss_sums.hpp"

#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "torus.hpp"

namespace tongue {

namespace {

std::vector<std::pair<long long, int>> factorize(long long n) {
    std::vector<std::pair<long long, int>> out;
    for (long long q = 2; q * q <= n; q += (q == 2) ? 1 : 2) {
        if (n % q == 0) {
            int e = 0;
            while (n % q == 0) { n /= q; ++e; }
            out.emplace_back(q, e);
        }
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

long long powmod(long long base, long long exp, long long mod) {
    if (mod == 1) return 0;
    unsigned __int128 acc = 1;
    unsigned __int128 b = static_cast<unsigned long long>(((base % mod) + mod) % mod);
    while (exp > 0) {
        if (exp & 1) acc = acc * b % static_cast<unsigned long long>(mod);
        b = b * b % static_cast<unsigned long long>(mod);
        exp >>= 1;
    }
    return static_cast<long long>(acc);
}

long long mod_reduce(long long x, long long m) {
    long long r = x % m;
    return r < 0 ? r + m : r;
}

long long mulmod(long long a, long long b, long long m) {
    return static_cast<long long>(
        static_cast<unsigned __int128>(mod_reduce(a, m)) * static_cast<unsigned long long>(mod_reduce(b, m)) %
        static_cast<unsigned long long>(m));
}

}  // namespace

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long q = 2; q * q <= n; q += (q == 2) ? 1 : 2)
        if (n % q == 0) return false;
    return true;
}

long long totient(long long p) {
    if (p < 1) throw DomainError("totient: argument must be >= 1");
    long long phi = p;
    for (const auto& [q, e] : factorize(p)) {
        (void)e;
        phi -= phi / q;
    }
    return phi;
}

long long mod_inverse(long long j, long long p) {
    if (p < 1) throw DomainError("mod_inverse: modulus must be >= 1");
    if (p == 1) return 0;
    long long r = mod_reduce(j, p);
    // extended gcd on (r, p)
    long long old_r = r, cur_r = p;
    long long old_x = 1, cur_x = 0;
    while (cur_r != 0) {
        const long long q = old_r / cur_r;
        old_r -= q * cur_r; std::swap(old_r, cur_r);
        old_x -= q * cur_x; std::swap(old_x, cur_x);
    }
    if (old_r != 1) throw DomainError("mod_inverse: arguments are not coprime");
    return mod_reduce(old_x, p);
}

int legendre(long long a, long long q) {
    if (q < 3 || q % 2 == 0 || !is_prime(q))
        throw DomainError("legendre: lower argument must be an odd prime");
    const long long r = powmod(a, (q - 1) / 2, q);
    if (r == 0) return 0;
    if (r == 1) return 1;
    return -1;  // r == q - 1 for prime q
}

int jacobi(long long a, long long b) {
    if (b < 1 || b % 2 == 0) throw DomainError("jacobi: lower argument must be odd and positive");
    if (b == 1) return 1;
    int result = 1;
    for (const auto& [q, e] : factorize(b)) {
        const int leg = legendre(a, q);
        if (leg == 0) return 0;
        if (e % 2 == 1) result *= leg;
    }
    return result;
}

long long gauss_case_l(const WindingRatio& w, InvolutionCase c) {
    switch (c) {
        case InvolutionCase::A: return -w.j;
        case InvolutionCase::BPlus: return 0;
        case InvolutionCase::BMinus: return w.p;
    }
    throw DomainError("gauss_case_l: bad case");
}

double xi_phase(const WindingRatio& w, InvolutionCase c) {
    const long long p = w.p, j = w.j;
    if (p < 1 || j < 1) throw DomainError("xi_phase: p and j must be positive");
    if (std::gcd(j, p) != 1) throw DomainError("xi_phase: j and p must be coprime");
    const bool odd = (p % 2 != 0);
    if (odd && c != InvolutionCase::A)
        throw DomainError("xi_phase: odd p requires case A");
    if (!odd && c == InvolutionCase::A)
        throw DomainError("xi_phase: even p requires case B_plus or B_minus");

    // Work with the integer M such that xi = pi * M / (8p); reduce mod 16p.
    const long long mod = 16 * p;
    long long m = 0;
    if (odd) {
        const int jac = (p == 1) ? 1 : jacobi(j, p);
        m = mod_reduce(4 * p * (1 - jac), mod);
        m = mod_reduce(m - mulmod(2 * p, p - 1, mod), mod);
        const long long j3 = mulmod(mulmod(j, j, mod), j, mod);
        if (j % 2 == 0) {
            const long long inv = mod_inverse(j, p);
            m = mod_reduce(m - mulmod(2 * j3, mulmod(inv, inv, mod), mod), mod);
        } else {
            const long long inv4j = mod_inverse(mod_reduce(4 * j, p), p);
            m = mod_reduce(m - mulmod(32 * j3 % mod, mulmod(inv4j, inv4j, mod), mod), mod);
        }
    } else {
        const int jac = jacobi(p, j);
        m = mod_reduce(4 * p * (1 - jac) + 2 * p * j, mod);
        if (c == InvolutionCase::BMinus) {
            // shift m -> m + (inverse of j mod p) * p/2 completes the square
            const long long shift = mod_reduce(mod_inverse(j, p) * (p / 2), p);
            m = mod_reduce(m - mulmod(8 * j % mod, mulmod(shift, shift, mod), mod), mod);
        }
    }
    double xi = kPi * static_cast<double>(m) / static_cast<double>(8 * p);
    if (xi > kPi) xi -= kTwoPi;
    return xi;
}

std::complex<double> gauss_sum_direct(const WindingRatio& w, long long l) {
    const long long p = w.p, j = w.j;
    if (p < 1) throw DomainError("gauss_sum_direct: p must be >= 1");
    const long long mod = 2 * p;
    std::complex<double> acc{0.0, 0.0};
    for (long long m = 1; m <= p; ++m) {
        // exponent (l*m + j*m^2)/p mod 2, kept exact in integers
        long long a = mod_reduce(mulmod(l, m, mod) + mulmod(j, mulmod(m, m, mod), mod), mod);
        const double arg = kPi * static_cast<double>(a) / static_cast<double>(p);
        acc += std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

GaussSumResult gauss_sum_closed(const WindingRatio& w, InvolutionCase c) {
    GaussSumResult r;
    r.phase = xi_phase(w, c);
    r.magnitude = std::sqrt(static_cast<double>(w.p));
    r.l_param = gauss_case_l(w, c);
    return r;
}

std::complex<double> weighted_gauss_sum_direct(const WindingRatio& w) {
    const long long p = w.p, j = w.j;
    if (p < 1) throw DomainError("weighted_gauss_sum_direct: p must be >= 1");
    const long long l = (p % 2 != 0) ? -j : 0;
    const long long mod = 2 * p;
    std::complex<double> acc{0.0, 0.0};
    for (long long m = 1; m <= p; ++m) {
        long long a = mod_reduce(mulmod(l, m, mod) + mulmod(j, mulmod(m, m, mod), mod), mod);
        const double arg = kPi * static_cast<double>(a) / static_cast<double>(p);
        acc += static_cast<double>(m) * std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return acc;
}

}  // namespace tongue
