#ifndef TONGUE_CORE_PERTURBATIVE_HPP
#define TONGUE_CORE_PERTURBATIVE_HPP

#include <utility>

#include "gauss_sums.hpp"
#include "map.hpp"

namespace tongue {

// A tongue is labeled by its winding pair (p, j); its vertex sits at
// k = 0, Omega = j/p.
struct TongueSpec {
    int p = 1;
    int j = 1;
    double vertex() const { return static_cast<double>(j) / static_cast<double>(p); }
};

struct VarthetaPair {
    double stable = 0.0;    // branch with cos(vartheta) <= 0
    double unstable = 0.0;  // branch with cos(vartheta) >= 0
};

struct PerturbativeOrbit {
    double vartheta = 0.0;
    double theta0 = 0.0;  // vartheta - xi(p, j)
    double j0 = 0.0;      // momentum of the fixed-point line at theta0
    long long s = 0;
    double predicted_trace = 2.0;
};

// First-order tongue edges Omega = j/p -/+ k/(2*pi*sqrt(p)).
std::pair<double, double> tongue_edges(const TongueSpec& t, double k);

// The two solutions of sin(vartheta) = 2*pi*sqrt(p)*(j/p - Omega)/k.
// Throws DomainError("outside tongue") when |j/p - Omega| > k/(2*pi*sqrt(p)).
VarthetaPair solve_vartheta(const TongueSpec& t, const MapParams& params);

// Angle winding of the first-order orbit: j(p-1)/2 for odd p, p*j/2 for even p.
long long winding_s(const TongueSpec& t);

// Tr = 2 + k * p^{3/2} * cos(vartheta).
double perturbative_trace(const TongueSpec& t, double k, double vartheta);

// Gap between the coalescing branches near an edge:
// (vartheta_u - vartheta_s)^2 = 16*pi*sqrt(p)*|dOmega|/k.
double coalescence_gap(const TongueSpec& t, double k, double d_omega);

// Stable first-order orbit at the given parameters (theta0 = vartheta - xi).
PerturbativeOrbit perturbative_orbit(const TongueSpec& t, const MapParams& params, InvolutionCase c);

// Exact edge and stability border of the p = 1, j = 1 tongue.
double p1_boundary(double omega);
double p1_stability_border(double omega);

// Detuning geometry of the order-3 resonance ring around a freshly
// period-doubled fixed point, at the parameter where the rotation
// frequency omega(eta) = 2*sqrt(4*eta + eta^2) hits 2*pi/3.
struct Resonance3Params {
    double eta = 0.0;
    double c_val = 0.0;      // C  = -1 - eta
    double c_prime = 0.0;    // C' = -2C^2 + 4C + 7
    double a_val = 0.0;      // A  = 2C - 2
    double a_prime = 0.0;    // A' = 2C' - 2
    double omega_freq = 0.0; // sqrt(-A')
};

Resonance3Params resonance3_eta();

}  // namespace tongue

#endif
