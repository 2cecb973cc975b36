#include "cascade.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "errors.hpp"

namespace tongue {

namespace {

constexpr double kTraceTol = 1e-8;

struct EigenDirection {
    double d_j = 0.0;
    double d_theta = 0.0;
};

// Unit eigenvector of the expanding (most negative) eigenvalue of a 2x2
// unit-determinant matrix with trace < -2, with a deterministic sign.
EigenDirection expanding_direction(const Jacobian2x2& m) {
    const double tr = m.trace();
    const double disc = tr * tr - 4.0;
    if (disc <= 0.0) throw NumericalError("expanding_direction: matrix is not hyperbolic");
    const double lambda = 0.5 * (tr - std::sqrt(disc));
    // null vector of (m - lambda I), built from the better-conditioned row
    double vj1 = m.b, vth1 = lambda - m.a;
    double vj2 = lambda - m.d, vth2 = m.c;
    double n1 = std::hypot(vj1, vth1), n2 = std::hypot(vj2, vth2);
    double vj, vth;
    if (n1 >= n2) { vj = vj1 / n1; vth = vth1 / n1; }
    else { vj = vj2 / n2; vth = vth2 / n2; }
    if (vth < 0.0 || (std::fabs(vth) < 1e-14 && vj < 0.0)) { vj = -vj; vth = -vth; }
    return {vj, vth};
}

size_t nearest_point_index(const OrbitRecord& rec, TorusPoint z) {
    size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < rec.points.size(); ++i) {
        const double d = std::hypot(torus_distance(rec.points[i].theta, z.theta),
                                    torus_distance(rec.points[i].j, z.j));
        if (d < best_d) { best_d = d; best = i; }
    }
    return best;
}

// The two involution-fixed points of a symmetric even orbit sit half a period
// apart; the doubling gap is read off between them. Falls back to the
// half-period partner of the tracked point when the orbit has no such pair.
double signed_half_period_gap(const OrbitRecord& rec, const MapParams& params, TorusPoint z_fix,
                              TorusPoint* a_out, TorusPoint* w_out) {
    const size_t q = rec.points.size();
    size_t ia = nearest_point_index(rec, z_fix);
    size_t i1 = q, i2 = q;
    double d1 = 1e9, d2 = 1e9;
    for (size_t i = 0; i < q; ++i) {
        const double d = involution_line_distance(rec.points[i], params);
        if (d < d1) { d2 = d1; i2 = i1; d1 = d; i1 = i; }
        else if (d < d2) { d2 = d; i2 = i; }
    }
    if (d1 < 1e-6 && d2 < 1e-6 && (i1 + q / 2) % q == i2) {
        // pick the member of the fixed pair continuing the tracked lineage
        const auto dist = [&](size_t i) {
            return std::hypot(torus_distance(rec.points[i].theta, z_fix.theta),
                              torus_distance(rec.points[i].j, z_fix.j));
        };
        ia = (dist(i1) <= dist(i2)) ? i1 : i2;
    }
    const size_t iw = (ia + q / 2) % q;
    if (a_out) *a_out = rec.points[ia];
    if (w_out) *w_out = rec.points[iw];
    return wrap_signed(rec.points[iw].theta - rec.points[ia].theta);
}

double orbit_separation(const OrbitRecord& a, const OrbitRecord& b) {
    // distance of b's first point from a's point set
    double best = std::numeric_limits<double>::infinity();
    for (const auto& pa : a.points)
        best = std::min(best, std::hypot(torus_distance(pa.theta, b.points[0].theta),
                                         torus_distance(pa.j, b.points[0].j)));
    return best;
}

}  // namespace

CascadeReport follow_cascade(const TongueSpec& t, double omega, const FinderConfig& cfg, int n_max) {
    if (n_max < 1 || n_max > 6) throw DomainError("follow_cascade: n_max must be in [1, 6]");

    CascadeReport report;
    report.tongue = t;
    report.omega = omega;
    report.n_max = n_max;
    report.dtheta_offset = (t.p % 2 == 0) ? 0 : 1;

    // ---- level 0: the seed orbit and its first loss of stability ----
    const double k_b = kTwoPi * std::sqrt(static_cast<double>(t.p)) * std::fabs(t.vertex() - omega);
    const double k_cap = k_b + 4.2 / std::pow(static_cast<double>(t.p), 1.5) + 3.0;
    double k = std::max(0.02, k_b - 0.2);
    const double dk0 = 0.05;
    double theta_prev = 0.0;
    bool have = false;
    while (k <= k_cap) {
        auto orbits = find_orbits_all_cases(t, k, omega, cfg);
        for (const auto& rec : orbits) {
            if (rec.stability == Stability::Stable) {
                theta_prev = rec.theta0;
                have = true;
                break;
            }
        }
        if (have) break;
        k += dk0;
    }
    if (!have) throw NumericalError("follow_cascade: no stable orbit on this tongue line");

    const auto track_at = [&](double kk, double th_prev) -> OrbitRecord {
        const std::vector<InvolutionCase> cases =
            (t.p % 2 == 0) ? std::vector<InvolutionCase>{InvolutionCase::A, InvolutionCase::BPlus,
                                                         InvolutionCase::BMinus}
                           : std::vector<InvolutionCase>{InvolutionCase::A};
        for (double window : {0.2, 0.6, 1.5}) {
            for (InvolutionCase c : cases) {
                try {
                    return track_involution_root(th_prev, window, t, MapParams{kk, omega, c}, cfg);
                } catch (const NumericalError&) {
                }
            }
        }
        throw NumericalError("follow_cascade: seed orbit lost during marching");
    };

    double k_lo = k, k_hi = k;
    while (k_hi < k_cap) {
        k_hi = std::min(k_hi + dk0, k_cap);
        const OrbitRecord rec = track_at(k_hi, theta_prev);
        theta_prev = rec.theta0;
        if (rec.trace <= -2.0) break;
        k_lo = k_hi;
    }
    OrbitRecord current;
    {
        OrbitRecord probe = track_at(k_hi, theta_prev);
        if (probe.trace > -2.0) throw NumericalError("follow_cascade: no doubling below the scan cap");
        double km = k_hi;
        for (int it = 0; it < 200; ++it) {
            km = 0.5 * (k_lo + k_hi);
            probe = track_at(km, theta_prev);
            theta_prev = probe.theta0;
            if (std::fabs(probe.trace + 2.0) < kTraceTol || (k_hi - k_lo) < 1e-13) break;
            if (probe.trace > -2.0) k_lo = km; else k_hi = km;
        }
        report.k_values.push_back(km);
        current = probe;
    }
    TorusPoint z = current.points[0];       // phase-space lineage for reseeding
    TorusPoint z_fix = current.points[0];   // fixed-point lineage for the gap sign
    if (t.p % 2 == 0) {
        MapParams mp{report.k_values[0], omega, InvolutionCase::A};
        TorusPoint w{};
        report.dtheta_values.push_back(signed_half_period_gap(current, mp, z_fix, &z_fix, &w));
        report.gap_from.push_back(z_fix);
        report.gap_to.push_back(w);
    }

    // ---- levels >= 1: eigen-seeded doubling plus Newton continuation ----
    MapParams nparams{report.k_values[0], omega, InvolutionCase::A};
    for (int n = 1; n <= n_max; ++n) {
        const int q = current.period;
        const int q2 = 2 * q;
        const double k_n = report.k_values.back();
        const double d_prev = (report.k_values.size() >= 2)
                                  ? k_n - report.k_values[report.k_values.size() - 2]
                                  : 0.0;

        // offsetting in k must stay well below the next (geometrically
        // shrinking) bifurcation interval
        double jump0 = (d_prev > 0.0) ? std::min(1e-3, d_prev / 30.0) : 1e-3;
        OrbitRecord child;
        double k_seed = 0.0;
        bool seeded = false;
        for (double jump = jump0; jump > 1e-10 && !seeded; jump *= 0.25) {
            k_seed = k_n + jump;
            nparams.k_tilde = k_seed;
            try {
                const OrbitRecord parent = find_non_involution_orbit(z, q, nparams, cfg);
                const Jacobian2x2 tq = monodromy(parent, nparams);
                const EigenDirection v = expanding_direction(tq);
                for (double eps : {1e-4, 3e-4, 1e-3, 3e-3, 1e-2, 3e-2, 1e-1}) {
                    TorusPoint seed{wrap_angle(parent.points[0].theta + eps * v.d_theta),
                                    wrap_angle(parent.points[0].j + eps * v.d_j)};
                    try {
                        OrbitRecord cand = find_non_involution_orbit(seed, q2, nparams, cfg);
                        if (primitive_period(cand, nparams) != q2) continue;
                        if (cand.winding_j != 2 * current.winding_j) continue;
                        if (orbit_separation(parent, cand) < 1e-6) continue;
                        if (cand.trace <= -2.0) break;  // overshot this level; shrink the jump
                        child = std::move(cand);
                        seeded = true;
                        break;
                    } catch (const NumericalError&) {
                    }
                }
            } catch (const NumericalError&) {
            }
        }
        if (!seeded) {
            report.truncated = true;
            break;
        }

        // march k upward, continuing the child by Newton from its last points
        double dk = (d_prev > 0.0) ? std::clamp(d_prev / 30.0, 1e-7, 0.05) : 0.05;
        double lo = k_seed, hi = k_seed;
        OrbitRecord at_lo = child;
        bool crossed = false;
        bool lost = false;
        while (!crossed && !lost) {
            const double next = hi + dk;
            nparams.k_tilde = next;
            try {
                OrbitRecord cand = find_non_involution_orbit(at_lo.points[0], q2, nparams, cfg);
                if (primitive_period(cand, nparams) != q2)
                    throw NumericalError("collapsed to the parent");
                hi = next;
                if (cand.trace <= -2.0) {
                    crossed = true;
                    child = std::move(cand);
                } else {
                    lo = next;
                    at_lo = std::move(cand);
                }
            } catch (const NumericalError&) {
                dk *= 0.5;
                if (dk < 1e-9) lost = true;
            }
            if (hi > k_cap) lost = true;
        }
        if (lost) {
            report.truncated = true;
            break;
        }

        double km = hi;
        OrbitRecord probe = child;
        for (int it = 0; it < 200; ++it) {
            km = 0.5 * (lo + hi);
            nparams.k_tilde = km;
            try {
                probe = find_non_involution_orbit(at_lo.points[0], q2, nparams, cfg);
            } catch (const NumericalError&) {
                report.truncated = true;
                break;
            }
            if (std::fabs(probe.trace + 2.0) < kTraceTol || (hi - lo) < 1e-13) break;
            if (probe.trace > -2.0) {
                lo = km;
                at_lo = probe;
            } else {
                hi = km;
            }
        }
        if (report.truncated) break;

        report.k_values.push_back(km);
        z = probe.points[nearest_point_index(probe, z)];
        nparams.k_tilde = km;
        TorusPoint w{};
        const double gap = signed_half_period_gap(probe, nparams, z_fix, &z_fix, &w);
        // each doubling flips the orientation of the local frame; record the
        // gap in the renormalized orientation so successive ratios estimate
        // the signed universal scaling constant
        const double frame = (report.dtheta_values.size() % 2 == 0) ? 1.0 : -1.0;
        report.dtheta_values.push_back(frame * std::fabs(gap));
        report.gap_from.push_back(z_fix);
        report.gap_to.push_back(w);
        current = std::move(probe);
    }

    // ---- scaling estimates ----
    for (size_t i = 0; i + 2 < report.k_values.size(); ++i) {
        const double d1 = report.k_values[i + 1] - report.k_values[i];
        const double d2 = report.k_values[i + 2] - report.k_values[i + 1];
        if (d2 != 0.0) report.delta_ratios.push_back(d1 / d2);
    }
    for (size_t i = 0; i + 1 < report.dtheta_values.size(); ++i) {
        if (report.dtheta_values[i + 1] != 0.0)
            report.alpha_ratios.push_back(report.dtheta_values[i] / report.dtheta_values[i + 1]);
    }
    report.delta_est = report.delta_ratios.empty() ? 0.0 : report.delta_ratios.back();
    report.alpha_est = report.alpha_ratios.empty() ? 0.0 : report.alpha_ratios.back();
    if (report.k_values.size() >= 3) {
        const size_t m = report.k_values.size();
        const double d1 = report.k_values[m - 2] - report.k_values[m - 3];
        const double d2 = report.k_values[m - 1] - report.k_values[m - 2];
        if (d1 != d2) report.k_infinity = report.k_values[m - 1] + d2 * d2 / (d1 - d2);
    }
    return report;
}

UniversalityDeviation universality_check(const CascadeReport& report) {
    if (report.k_values.size() < 3)
        throw DomainError("universality_check: need at least three bifurcation points");
    UniversalityDeviation dev;
    dev.delta_dev = std::fabs(report.delta_est - kUniversalDelta) / kUniversalDelta;
    dev.alpha_dev = std::fabs(report.alpha_est - kUniversalAlpha) / std::fabs(kUniversalAlpha);
    return dev;
}

}  // namespace tongue
