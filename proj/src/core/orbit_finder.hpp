#ifndef TONGUE_CORE_ORBIT_FINDER_HPP
#define TONGUE_CORE_ORBIT_FINDER_HPP

#include <vector>

#include "map.hpp"
#include "perturbative.hpp"

namespace tongue {

struct FinderConfig {
    int grid_points = 4096;    // initial scan resolution over [0, 2*pi)
    double root_tol = 1e-12;   // polish tolerance on theta0
    double match_tol = 1e-8;   // accept threshold on |sin(F_theta/2)|
    int max_iter = 60;         // Newton iteration cap
};

struct ResidualSample {
    double theta0 = 0.0;
    double f_j = 0.0;               // lifted momentum defect after p steps
    double sin_half_f_theta = 0.0;  // sin of half the lifted angle defect
};

// Momentum of the fixed-point line selected by params.involution_case.
double j0_from_case(double theta0, const MapParams& params);

// Iterate p steps from (theta0, J0(theta0)) and report both closure residuals.
// The angle residual is returned as sin(F_theta/2) so the unknown integer
// angle winding drops out of the root search.
ResidualSample residuals(double theta0, const TongueSpec& t, const MapParams& params, long long s);

// Involution-method search: bracket the roots of F_J on a grid (doubled up to
// 2^18 when neighboring roots crowd within 4 cells), polish each root, keep
// the common zeros of both residuals, and return verified orbit records in
// ascending theta0 order. Empty when the tongue has no orbit here.
std::vector<OrbitRecord> find_involution_orbits(const TongueSpec& t, const MapParams& params,
                                                const FinderConfig& cfg);

// Scan case A always, plus B_plus and B_minus for even p; dedupe orbits that
// carry fixed points of more than one line.
std::vector<OrbitRecord> find_orbits_all_cases(const TongueSpec& t, double k, double omega,
                                               const FinderConfig& cfg);

// Build and verify the orbit launched from the fixed-point line at theta0.
// Throws NumericalError when the point does not close after p steps.
OrbitRecord orbit_from_theta0(double theta0, const TongueSpec& t, const MapParams& params);

// Zero-kick orbit of the integrable map at Omega = j/p:
// J0 = (2*pi*s - pi*j*(p-1))/p, theta0 free.
OrbitRecord construct_zero_kick_orbit(int p, int j, long long s, double theta0 = 0.0);

// Shortest momentum distance from x to any of the three fixed-point lines.
double involution_line_distance(TorusPoint x, const MapParams& params);

// Damped Newton iteration on the period-p displacement. Throws
// NoConvergenceError after cfg.max_iter and SingularJacobianError when
// |det(T_p - 1)| < 1e-12 at an iterate.
OrbitRecord find_non_involution_orbit(TorusPoint seed, int p, const MapParams& params,
                                      const FinderConfig& cfg);

// Seeds for orbits avoiding the fixed-point lines: sample the zero-kick orbit
// line J = J0(p, j, s), look for sign changes of the normal displacement of
// its p-th iterate, and bisect each crossing.
std::vector<TorusPoint> noninvolution_seed_candidates(int p, int j, long long s,
                                                      const MapParams& params, int grid_points);

// Re-polish the F_J root nearest theta_prev inside +/- window and rebuild its
// orbit; used to follow one orbit through parameter continuation. Throws
// NumericalError when no matching root remains in the window.
OrbitRecord track_involution_root(double theta_prev, double window, const TongueSpec& t,
                                  const MapParams& params, const FinderConfig& cfg);

// Smallest divisor d of record.period with M^d(points[0]) back at points[0].
int primitive_period(const OrbitRecord& record, const MapParams& params);

// Image of the orbit's point set under an involution, returned in the order
// the map traverses it.
std::vector<TorusPoint> involution_image_orbit(const OrbitRecord& record, const MapParams& params,
                                               bool use_case_a);

// True when the two point sets coincide as sets within tol per coordinate.
bool same_point_set(const std::vector<TorusPoint>& a, const std::vector<TorusPoint>& b, double tol);

}  // namespace tongue

#endif
