#include "tongue_tracer.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <thread>

#include "errors.hpp"

namespace tongue {

namespace {

constexpr double kGolden = 0.61803398874989484820;

double f_j_at(double theta0, const TongueSpec& t, const MapParams& params) {
    return residuals(theta0, t, params, 0).f_j;
}

// Golden-section minimization of fn on [a, b] to absolute tolerance xtol.
double golden_min(const std::function<double(double)>& fn, double a, double b, double xtol) {
    double x1 = b - kGolden * (b - a);
    double x2 = a + kGolden * (b - a);
    double f1 = fn(x1), f2 = fn(x2);
    while (b - a > xtol) {
        if (f1 < f2) {
            b = x2; x2 = x1; f2 = f1;
            x1 = b - kGolden * (b - a);
            f1 = fn(x1);
        } else {
            a = x1; x1 = x2; f1 = f2;
            x2 = a + kGolden * (b - a);
            f2 = fn(x2);
        }
    }
    return 0.5 * (a + b);
}

// Locate the extremum of fn of the requested sense near center: scan a local
// window, recenter onto the best grid sample, then refine by golden section.
ExtremumResult local_extremum(const std::function<double(double)>& fn, double center,
                              double half_width, bool maximize, double xtol) {
    constexpr int kSamples = 64;
    double c = center;
    for (int shift = 0; shift < 12; ++shift) {
        int best = -1;
        double best_val = maximize ? -std::numeric_limits<double>::infinity()
                                   : std::numeric_limits<double>::infinity();
        const double h = 2.0 * half_width / kSamples;
        for (int i = 0; i <= kSamples; ++i) {
            const double x = c - half_width + i * h;
            const double v = fn(x);
            if ((maximize && v > best_val) || (!maximize && v < best_val)) {
                best_val = v;
                best = i;
            }
        }
        if (best > 0 && best < kSamples) {
            const double lo = c - half_width + (best - 1) * h;
            const double hi = c - half_width + (best + 1) * h;
            const auto obj = maximize ? std::function<double(double)>([&](double x) { return -fn(x); })
                                      : std::function<double(double)>(fn);
            const double xe = golden_min(obj, lo, hi, xtol);
            return {xe, fn(xe)};
        }
        c = c - half_width + best * h;  // extremum drifted out of the window
    }
    throw NumericalError("local_extremum: extremum kept escaping the search window");
}

}  // namespace

const char* to_string(Side s) { return s == Side::Left ? "left" : "right"; }

ExtremumResult extremum_of_residual(const TongueSpec& t, const MapParams& params, double theta_lo,
                                    double theta_hi) {
    if (!(theta_hi > theta_lo)) throw DomainError("extremum_of_residual: empty bracket");
    const auto fn = [&](double th) { return f_j_at(th, t, params); };
    const double fa = fn(theta_lo), fb = fn(theta_hi);
    const double w = theta_hi - theta_lo;
    const double f1 = fn(theta_lo + (1.0 - kGolden) * w);
    const double f2 = fn(theta_lo + kGolden * w);
    const double hi_inner = std::max(f1, f2), lo_inner = std::min(f1, f2);
    const double hi_edge = std::max(fa, fb), lo_edge = std::min(fa, fb);
    const double scale = std::max({std::fabs(fa), std::fabs(fb), std::fabs(f1), std::fabs(f2), 1.0});
    if (hi_inner - lo_inner < 1e-15 * scale && hi_edge - lo_edge < 1e-15 * scale)
        throw DomainError("extremum_of_residual: residual is flat on the bracket");
    bool maximize;
    if (hi_inner >= hi_edge) maximize = true;
    else if (lo_inner <= lo_edge) maximize = false;
    else throw DomainError("extremum_of_residual: no interior extremum in bracket");
    const auto obj = maximize ? std::function<double(double)>([&](double x) { return -fn(x); })
                              : std::function<double(double)>(fn);
    const double xe = golden_min(obj, theta_lo, theta_hi, 1e-12);
    return {xe, fn(xe)};
}

BoundaryCurve trace_tongue_boundary(const TongueSpec& t, Side side, double k_max, double step,
                                    const TraceConfig& cfg) {
    if (!(step > 0.0)) throw DomainError("trace_tongue_boundary: step must be positive");
    if (std::gcd(static_cast<long long>(t.j), static_cast<long long>(t.p)) != 1)
        throw DomainError("trace_tongue_boundary: tongue label must be coprime");

    BoundaryCurve curve;
    curve.tongue = t;
    curve.side = side;

    const InvolutionCase icase = (t.p % 2 == 0) ? InvolutionCase::BPlus : InvolutionCase::A;
    const double sqrt_p = std::sqrt(static_cast<double>(t.p));
    const double sgn = (side == Side::Left) ? -1.0 : 1.0;
    const bool maximize = (side == Side::Left);  // the root-separating extremum sense
    const double xi = xi_phase({t.j, t.p}, icase);
    // at coalescence vartheta = pi/2 (left edge) or 3*pi/2 (right edge)
    double theta_ext = wrap_angle((side == Side::Left ? 0.5 * kPi : 1.5 * kPi) - xi);
    const double half_window = std::min(kPi / 2.0, kPi / t.p + 0.2);

    double omega_inside = t.vertex();
    for (double k = std::max(1e-4, step); k <= k_max * (1.0 + 1e-12); k += step) {
        const auto f_ext_at = [&](double omega) {
            MapParams params{k, omega, icase};
            const auto fn = [&](double th) { return f_j_at(th, t, params); };
            return local_extremum(fn, theta_ext, half_window, maximize, 1e-12);
        };

        // march outward from a point known to lie inside
        ExtremumResult in = f_ext_at(omega_inside);
        const bool inside_positive = maximize;  // max > 0 inside, min < 0 inside
        if ((in.f_ext > 0.0) != inside_positive) {
            // the seed fell outside (can happen right at the vertex); nudge inward
            omega_inside = t.vertex();
            in = f_ext_at(omega_inside);
            if ((in.f_ext > 0.0) != inside_positive)
                throw NumericalError("trace_tongue_boundary: lost tongue (no inside seed)");
        }
        const double dw = std::max(step / (kTwoPi * sqrt_p), 1e-5);
        double omega_out = omega_inside;
        ExtremumResult out_res = in;
        bool bracketed = false;
        for (int i = 1; i <= 400; ++i) {
            omega_out = omega_inside + sgn * i * dw;
            out_res = f_ext_at(omega_out);
            if ((out_res.f_ext > 0.0) != inside_positive) { bracketed = true; break; }
        }
        if (!bracketed) throw NumericalError("trace_tongue_boundary: lost tongue");

        double lo = omega_inside, hi = omega_out;
        ExtremumResult at_mid = in;
        double mid = lo;
        for (int it = 0; it < cfg.max_bisect; ++it) {
            mid = 0.5 * (lo + hi);
            at_mid = f_ext_at(mid);
            if (std::fabs(at_mid.f_ext) < cfg.boundary_tol) break;
            if ((at_mid.f_ext > 0.0) == inside_positive) lo = mid; else hi = mid;
        }
        curve.samples.push_back({k, mid, at_mid.f_ext});
        theta_ext = at_mid.theta_ext;
        omega_inside = mid;  // the tongue widens with k, so this sits inside next level
    }
    return curve;
}

BorderCurve trace_stability_border(const TongueSpec& t, double omega_lo, double omega_hi,
                                   double step, double k_max, const TraceConfig& cfg) {
    if (!(step > 0.0)) throw DomainError("trace_stability_border: step must be positive");
    BorderCurve curve;
    curve.tongue = t;
    const int n = static_cast<int>(std::floor((omega_hi - omega_lo) / step + 1e-9)) + 1;
    for (int i = 0; i < n; ++i) {
        const double omega = omega_lo + i * step;
        // coarse upward scan for a stable orbit of the tongue
        const double k_start =
            std::max(0.02, kTwoPi * std::sqrt(static_cast<double>(t.p)) *
                                   std::fabs(t.vertex() - omega) - 0.2);
        double k = k_start;
        const double dk = 0.05;
        bool have_stable = false;
        double theta_track = 0.0;
        double k_stable = 0.0, trace_stable = 0.0;
        while (k <= k_max) {
            auto orbits = find_orbits_all_cases(t, k, omega, cfg.finder);
            for (const auto& rec : orbits) {
                if (rec.stability == Stability::Stable) {
                    have_stable = true;
                    theta_track = rec.theta0;
                    k_stable = k;
                    trace_stable = rec.trace;
                    break;
                }
            }
            if (have_stable) break;
            k += dk;
        }
        if (!have_stable)
            throw NumericalError("trace_stability_border: no stable orbit found on this column");

        // the tracked root's involution case is not recorded by the merged
        // scan, so try each case, widening the window when the root moves fast
        const auto track_at = [&](double kk, double theta_prev) -> OrbitRecord {
            const std::vector<InvolutionCase> cases =
                (t.p % 2 == 0)
                    ? std::vector<InvolutionCase>{InvolutionCase::A, InvolutionCase::BPlus,
                                                  InvolutionCase::BMinus}
                    : std::vector<InvolutionCase>{InvolutionCase::A};
            for (double window : {0.2, 0.6, 1.5}) {
                for (InvolutionCase c : cases) {
                    try {
                        return track_involution_root(theta_prev, window, t, MapParams{kk, omega, c},
                                                     cfg.finder);
                    } catch (const NumericalError&) {
                    }
                }
            }
            throw NumericalError("trace_stability_border: tracked orbit lost");
        };

        // march k upward until the followed trace drops through -2
        double k_lo = k_stable;
        double k_hi = k_lo;
        double theta_prev = theta_track;
        bool crossed = false;
        (void)trace_stable;
        while (k_hi < k_max) {
            k_hi = std::min(k_hi + dk, k_max);
            const OrbitRecord tr = track_at(k_hi, theta_prev);
            theta_prev = tr.theta0;
            if (tr.trace <= -2.0) { crossed = true; break; }
            k_lo = k_hi;
        }
        if (!crossed)
            throw NumericalError("trace_stability_border: no crossing below k_max");

        double trace_mid = 0.0, k_mid = k_lo;
        for (int it = 0; it < cfg.max_bisect; ++it) {
            k_mid = 0.5 * (k_lo + k_hi);
            const OrbitRecord tr = track_at(k_mid, theta_prev);
            theta_prev = tr.theta0;
            trace_mid = tr.trace;
            if (std::fabs(trace_mid + 2.0) < cfg.border_tol) break;
            if (trace_mid > -2.0) k_lo = k_mid; else k_hi = k_mid;
        }
        curve.samples.push_back({omega, k_mid, trace_mid});
    }
    return curve;
}

std::vector<CensusCell> census(double k_lo, double k_hi, double omega_lo, double omega_hi, int nk,
                               int nomega, int p_max, const TraceConfig& cfg, int threads) {
    if (nk < 1 || nomega < 1) throw DomainError("census: grid must be at least 1x1");
    if (p_max < 1 || p_max > 16) throw DomainError("census: p_max must be in [1, 16]");

    std::vector<CensusCell> cells(static_cast<size_t>(nk) * nomega);
    const auto run_cell = [&](int ik, int iw) {
        CensusCell cell;
        cell.ik = ik;
        cell.iomega = iw;
        cell.k = k_lo + (ik + 0.5) * (k_hi - k_lo) / nk;
        cell.omega = omega_lo + (iw + 0.5) * (omega_hi - omega_lo) / nomega;
        if (nk == 1) cell.k = 0.5 * (k_lo + k_hi);
        if (nomega == 1) cell.omega = 0.5 * (omega_lo + omega_hi);
        const double margin = cell.k / kTwoPi + 0.1;
        for (int p = 1; p <= p_max; ++p) {
            const long long j_min = static_cast<long long>(std::floor(p * (cell.omega - margin)));
            const long long j_max = static_cast<long long>(std::ceil(p * (cell.omega + margin)));
            for (long long j = j_min; j <= j_max; ++j) {
                TongueSpec t{p, static_cast<int>(j)};
                auto orbits = find_orbits_all_cases(t, cell.k, cell.omega, cfg.finder);
                CensusEntry entry{p, j, 0, 0, 0};
                MapParams params{cell.k, cell.omega, InvolutionCase::A};
                for (const auto& rec : orbits) {
                    if (primitive_period(rec, params) != p) continue;
                    switch (rec.stability) {
                        case Stability::Stable: ++entry.n_stable; break;
                        case Stability::Unstable: ++entry.n_unstable; break;
                        case Stability::Marginal: ++entry.n_marginal; break;
                    }
                }
                if (entry.n_stable + entry.n_unstable + entry.n_marginal > 0)
                    cell.entries.push_back(entry);
            }
        }
        cells[static_cast<size_t>(ik) * nomega + iw] = std::move(cell);
    };

    const int total = nk * nomega;
    int workers = threads;
    if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
    workers = std::clamp(workers, 1, total);
    if (workers == 1) {
        for (int idx = 0; idx < total; ++idx) run_cell(idx / nomega, idx % nomega);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (int idx = w; idx < total; idx += workers) run_cell(idx / nomega, idx % nomega);
            });
        }
        for (auto& th : pool) th.join();
    }
    return cells;
}

}  // namespace tongue
