#ifndef TONGUE_CORE_TONGUE_TRACER_HPP
#define TONGUE_CORE_TONGUE_TRACER_HPP

#include <vector>

#include "orbit_finder.hpp"

namespace tongue {

enum class Side { Left, Right };
const char* to_string(Side s);

struct TraceConfig {
    FinderConfig finder;
    double boundary_tol = 1e-10;  // |f_ext| at an accepted boundary sample
    double border_tol = 1e-9;     // ||Tr| - 2| at an accepted border sample
    int max_bisect = 80;
};

struct ExtremumResult {
    double theta_ext = 0.0;
    double f_ext = 0.0;
};

struct BoundarySample {
    double k = 0.0;
    double omega = 0.0;
    double f_ext = 0.0;
};

struct BoundaryCurve {
    TongueSpec tongue;
    Side side = Side::Left;
    std::vector<BoundarySample> samples;  // strictly increasing in k
};

struct BorderSample {
    double omega = 0.0;
    double k = 0.0;
    double trace = 0.0;
};

struct BorderCurve {
    TongueSpec tongue;
    std::vector<BorderSample> samples;
};

struct CensusEntry {
    int p = 0;
    long long j = 0;
    int n_stable = 0;
    int n_unstable = 0;
    int n_marginal = 0;
};

struct CensusCell {
    int ik = 0;
    int iomega = 0;
    double k = 0.0;
    double omega = 0.0;
    std::vector<CensusEntry> entries;  // sorted by (p, j), primitive orbits only
};

// Golden-section location of the single interior extremum of F_J inside the
// bracket. Throws DomainError when the samples show no interior extremum or a
// flat residual.
ExtremumResult extremum_of_residual(const TongueSpec& t, const MapParams& params, double theta_lo,
                                    double theta_hi);

// Overshoot method: march k upward from max(1e-4, step); at each level bisect
// Omega on the sign of the tracked extremum of F_J until it vanishes.
BoundaryCurve trace_tongue_boundary(const TongueSpec& t, Side side, double k_max, double step,
                                    const TraceConfig& cfg);

// For each Omega on the grid, bisect k between a stable and an unstable sample
// of the followed orbit's trace crossing -2 (the period-doubling border).
BorderCurve trace_stability_border(const TongueSpec& t, double omega_lo, double omega_hi,
                                   double step, double k_max, const TraceConfig& cfg);

// Per-cell inventory of primitive periodic orbits over a parameter rectangle.
std::vector<CensusCell> census(double k_lo, double k_hi, double omega_lo, double omega_hi, int nk,
                               int nomega, int p_max, const TraceConfig& cfg, int threads = 1);

}  // namespace tongue

#endif
