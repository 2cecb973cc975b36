#include "perturbative.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "errors.hpp"

namespace tongue {

namespace {

void check_tongue(const TongueSpec& t, bool need_coprime) {
    if (t.p < 1) throw DomainError("tongue: p must be >= 1");
    if (need_coprime && std::gcd(static_cast<long long>(t.j), static_cast<long long>(t.p)) != 1)
        throw DomainError("tongue: j and p must be coprime");
}

}  // namespace

std::pair<double, double> tongue_edges(const TongueSpec& t, double k) {
    check_tongue(t, true);
    if (k < 0.0) throw DomainError("tongue_edges: k must be >= 0");
    const double half = k / (kTwoPi * std::sqrt(static_cast<double>(t.p)));
    return {t.vertex() - half, t.vertex() + half};
}

VarthetaPair solve_vartheta(const TongueSpec& t, const MapParams& params) {
    check_tongue(t, true);
    const double detune = t.vertex() - params.omega;
    double rho;
    if (params.k_tilde == 0.0) {
        if (detune != 0.0) throw DomainError("solve_vartheta: outside tongue");
        rho = 0.0;
    } else {
        rho = kTwoPi * std::sqrt(static_cast<double>(t.p)) * detune / params.k_tilde;
    }
    if (std::fabs(rho) > 1.0 + 1e-12) throw DomainError("solve_vartheta: outside tongue");
    rho = std::clamp(rho, -1.0, 1.0);
    const double a = std::asin(rho);
    return {wrap_angle(kPi - a), wrap_angle(a)};
}

long long winding_s(const TongueSpec& t) {
    check_tongue(t, false);
    if (t.p % 2 != 0) {
        const long long num = static_cast<long long>(t.j) * (t.p - 1);
        if (num % 2 != 0) throw DomainError("winding_s: j(p-1) must be even");
        return num / 2;
    }
    const long long num = static_cast<long long>(t.p) * t.j;
    return num / 2;
}

double perturbative_trace(const TongueSpec& t, double k, double vartheta) {
    check_tongue(t, false);
    return 2.0 + k * std::pow(static_cast<double>(t.p), 1.5) * std::cos(vartheta);
}

double coalescence_gap(const TongueSpec& t, double k, double d_omega) {
    check_tongue(t, false);
    if (!(k > 0.0)) throw DomainError("coalescence_gap: k must be positive");
    return std::sqrt(16.0 * kPi * std::sqrt(static_cast<double>(t.p)) * std::fabs(d_omega) / k);
}

PerturbativeOrbit perturbative_orbit(const TongueSpec& t, const MapParams& params, InvolutionCase c) {
    PerturbativeOrbit out;
    out.vartheta = solve_vartheta(t, params).stable;
    const double xi = xi_phase({t.j, t.p}, c);
    out.theta0 = wrap_angle(out.vartheta - xi);
    switch (c) {
        case InvolutionCase::A: out.j0 = 0.0; break;
        case InvolutionCase::BPlus:
            out.j0 = wrap_angle(0.5 * params.k_tilde * std::sin(out.theta0) + kPi * params.omega);
            break;
        case InvolutionCase::BMinus:
            out.j0 = wrap_angle(0.5 * params.k_tilde * std::sin(out.theta0) + kPi * params.omega + kPi);
            break;
    }
    out.s = winding_s(t);
    out.predicted_trace = perturbative_trace(t, params.k_tilde, out.vartheta);
    return out;
}

double p1_boundary(double omega) {
    return kTwoPi * std::fabs(omega - 1.0);
}

double p1_stability_border(double omega) {
    const double d = omega - 1.0;
    return std::sqrt(16.0 + 4.0 * kPi * kPi * d * d);
}

Resonance3Params resonance3_eta() {
    Resonance3Params r;
    // omega(eta) = 2*sqrt(4*eta + eta^2) = 2*pi/3  =>  eta^2 + 4*eta - pi^2/9 = 0
    r.eta = -2.0 + std::sqrt(4.0 + kPi * kPi / 9.0);
    r.c_val = -1.0 - r.eta;
    r.a_val = 2.0 * r.c_val - 2.0;
    r.c_prime = -2.0 * r.c_val * r.c_val + 4.0 * r.c_val + 7.0;
    r.a_prime = 2.0 * r.c_prime - 2.0;
    r.omega_freq = std::sqrt(-r.a_prime);
    return r;
}

}  // namespace tongue
