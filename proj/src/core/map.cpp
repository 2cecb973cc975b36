#include "map.hpp"

#include <cmath>

#include "errors.hpp"

namespace tongue {

const char* to_string(InvolutionCase c) {
    switch (c) {
        case InvolutionCase::A: return "A";
        case InvolutionCase::BPlus: return "B_plus";
        case InvolutionCase::BMinus: return "B_minus";
    }
    return "?";
}

const char* to_string(Stability s) {
    switch (s) {
        case Stability::Stable: return "stable";
        case Stability::Unstable: return "unstable";
        case Stability::Marginal: return "marginal";
    }
    return "?";
}

TorusPoint step(TorusPoint x, const MapParams& params) {
    const double theta_next = wrap_angle(x.theta + x.j);
    const double j_next = wrap_angle(x.j + params.k_tilde * std::sin(theta_next) + kTwoPi * params.omega);
    return {theta_next, j_next};
}

TorusPoint step_inverse(TorusPoint x, const MapParams& params) {
    const double j_prev = wrap_angle(x.j - params.k_tilde * std::sin(x.theta) - kTwoPi * params.omega);
    const double theta_prev = wrap_angle(x.theta - j_prev);
    return {theta_prev, j_prev};
}

TorusPoint involution_a(TorusPoint x) {
    return {wrap_angle(x.theta + x.j), wrap_angle(-x.j)};
}

TorusPoint involution_b(TorusPoint x, const MapParams& params) {
    return {wrap_angle(x.theta),
            wrap_angle(-x.j + params.k_tilde * std::sin(x.theta) + kTwoPi * params.omega)};
}

TorusPoint reversor(TorusPoint x) {
    // momentum flip composed with the free-rotation half of the map
    return {wrap_angle(x.theta + x.j), wrap_angle(-x.j)};
}

Jacobian2x2 tangent(double theta_next, const MapParams& params) {
    const double c = params.k_tilde * std::cos(theta_next);
    return {1.0 + c, c, 1.0, 1.0};
}

Jacobian2x2 tangent_product(TorusPoint x, int steps, const MapParams& params) {
    Jacobian2x2 m = Jacobian2x2::identity();
    for (int i = 0; i < steps; ++i) {
        x = step(x, params);
        m = tangent(x.theta, params) * m;
    }
    return m;
}

Jacobian2x2 monodromy(const OrbitRecord& orbit, const MapParams& params) {
    const int p = orbit.period;
    if (p < 1 || orbit.points.size() != static_cast<size_t>(p))
        throw DomainError("monodromy: orbit record is malformed");
    constexpr double tol = 1e-6;
    for (int i = 0; i < p; ++i) {
        const TorusPoint img = step(orbit.points[static_cast<size_t>(i)], params);
        const TorusPoint& next = orbit.points[static_cast<size_t>((i + 1) % p)];
        if (torus_distance(img.theta, next.theta) > tol || torus_distance(img.j, next.j) > tol)
            throw DomainError("monodromy: points are not a periodic orbit of the given map");
    }
    Jacobian2x2 m = Jacobian2x2::identity();
    for (int i = 1; i <= p; ++i)
        m = tangent(orbit.points[static_cast<size_t>(i % p)].theta, params) * m;
    return m;
}

Stability classify_stability(double trace, double tol) {
    if (!(tol > 0.0)) throw DomainError("classify_stability: tol must be positive");
    const double a = std::fabs(trace);
    if (a < 2.0 - tol) return Stability::Stable;
    if (a > 2.0 + tol) return Stability::Unstable;
    return Stability::Marginal;
}

}  // namespace tongue
