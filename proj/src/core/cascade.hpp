#ifndef TONGUE_CORE_CASCADE_HPP
#define TONGUE_CORE_CASCADE_HPP

#include <vector>

#include "orbit_finder.hpp"

namespace tongue {

// Area-preserving period-doubling universality constants.
inline constexpr double kUniversalDelta = 8.721;
inline constexpr double kUniversalAlpha = -4.018;

struct CascadeReport {
    TongueSpec tongue;
    double omega = 0.0;
    // k_values[n] is the parameter where the 2^n * p orbit turns unstable.
    std::vector<double> k_values;
    // Signed angle gap between tracked points half a period apart, measured at
    // the instability; starts at level dtheta_offset (1 when p is odd).
    std::vector<double> dtheta_values;
    int dtheta_offset = 0;
    // endpoints of each recorded gap: the tracked fixed point and its
    // half-period partner
    std::vector<TorusPoint> gap_from;
    std::vector<TorusPoint> gap_to;
    std::vector<double> delta_ratios;  // (k_{n+1}-k_n)/(k_{n+2}-k_{n+1})
    std::vector<double> alpha_ratios;  // dtheta_n / dtheta_{n+1}
    double delta_est = 0.0;
    double alpha_est = 0.0;
    double k_infinity = 0.0;
    int n_max = 0;         // requested depth
    bool truncated = false;  // the doubled orbit could not be continued
};

struct UniversalityDeviation {
    double delta_dev = 0.0;
    double alpha_dev = 0.0;
};

// Follow the period-doubling cascade of the (p, j) tongue at fixed omega up to
// n_max doublings: locate each trace = -2 crossing by bisection, seed the
// doubled orbit off the bifurcating point along the eigenvector at -1, and
// continue it by damped Newton steps.
CascadeReport follow_cascade(const TongueSpec& t, double omega, const FinderConfig& cfg, int n_max);

// Relative deviations of the report's estimates from the universal constants.
// Requires at least three recorded bifurcations.
UniversalityDeviation universality_check(const CascadeReport& report);

}  // namespace tongue

#endif
