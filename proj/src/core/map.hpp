#ifndef TONGUE_CORE_MAP_HPP
#define TONGUE_CORE_MAP_HPP

#include <optional>
#include <string>
#include <vector>

#include "torus.hpp"

namespace tongue {

// Which fixed-point line seeds the involution method.
//   A       : J0 = 0
//   BPlus   : J0 = (k/2) sin(theta0) + pi*Omega
//   BMinus  : J0 = (k/2) sin(theta0) + pi*Omega + pi
enum class InvolutionCase { A, BPlus, BMinus };

enum class Stability { Stable, Unstable, Marginal };

const char* to_string(InvolutionCase c);
const char* to_string(Stability s);

struct TorusPoint {
    double theta = 0.0;  // angle, [0, 2*pi)
    double j = 0.0;      // momentum, [0, 2*pi)
};

struct MapParams {
    double k_tilde = 0.0;  // kick strength, >= 0
    double omega = 0.0;    // drift, acts mod 1 on the dynamics
    InvolutionCase involution_case = InvolutionCase::A;
};

// Tangent map in (dJ, dtheta) coordinates; unit determinant by construction.
struct Jacobian2x2 {
    double a = 1.0, b = 0.0;  // row for dJ
    double c = 0.0, d = 1.0;  // row for dtheta

    double trace() const { return a + d; }
    double det() const { return a * d - b * c; }

    Jacobian2x2 operator*(const Jacobian2x2& rhs) const {
        return {a * rhs.a + b * rhs.c, a * rhs.b + b * rhs.d,
                c * rhs.a + d * rhs.c, c * rhs.b + d * rhs.d};
    }
    static Jacobian2x2 identity() { return {}; }
};

struct OrbitRecord {
    std::vector<TorusPoint> points;  // successive images, points.size() == period
    int period = 0;
    long long winding_j = 0;  // lifted momentum gain / 2*pi
    long long winding_s = 0;  // lifted angle gain / 2*pi
    double trace = 2.0;
    Stability stability = Stability::Marginal;
    double theta0 = 0.0;  // angle of points[0]
    std::optional<InvolutionCase> found_case;  // set when found on a fixed-point line
};

// One iteration: theta' = theta + J, then J' = J + k sin(theta') + 2*pi*Omega.
TorusPoint step(TorusPoint x, const MapParams& params);
TorusPoint step_inverse(TorusPoint x, const MapParams& params);

// The two involution factors of the map and the time-reversal operator.
TorusPoint involution_a(TorusPoint x);
TorusPoint involution_b(TorusPoint x, const MapParams& params);
TorusPoint reversor(TorusPoint x);

// Tangent map evaluated at the updated angle theta_{n+1}; this is the exact
// one-step Jacobian of the map, so products stay area preserving.
Jacobian2x2 tangent(double theta_next, const MapParams& params);

// Product of tangent maps along the trajectory starting at x, over `steps` iterations.
Jacobian2x2 tangent_product(TorusPoint x, int steps, const MapParams& params);

// Monodromy matrix of a verified periodic orbit. Throws DomainError when the
// stored points are not consecutive images of each other.
Jacobian2x2 monodromy(const OrbitRecord& orbit, const MapParams& params);

// |Tr| < 2 - tol stable, |Tr| > 2 + tol unstable, otherwise marginal.
Stability classify_stability(double trace, double tol = 1e-9);

}  // namespace tongue

#endif
