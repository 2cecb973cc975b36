#include "orbit_finder.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>

#include "errors.hpp"

namespace tongue {

namespace {

constexpr double kClosureTol = 1e-9;
constexpr int kMaxGridPoints = 1 << 18;

struct ResidualRaw {
    double f_j = 0.0;
    double f_theta_raw = 0.0;  // before subtracting 2*pi*s
};

// One sweep of p torus steps from the fixed-point line, accumulating the
// weighted sine sums that make up both closure residuals.
ResidualRaw residual_raw(double theta0, int p, long long j, const MapParams& params) {
    const double j0 = wrap_angle(j0_from_case(theta0, params));
    TorusPoint x{wrap_angle(theta0), j0};
    double s1 = 0.0, sw = 0.0;
    for (int n = 1; n <= p; ++n) {
        x = step(x, params);
        const double sn = std::sin(x.theta);
        s1 += sn;
        sw += static_cast<double>(p - n) * sn;
    }
    ResidualRaw r;
    r.f_j = params.k_tilde * s1 + kTwoPi * (params.omega * p - static_cast<double>(j));
    r.f_theta_raw = p * j0 + params.k_tilde * sw + kPi * params.omega * p * (p - 1);
    return r;
}

// Safeguarded secant iteration inside a sign-change bracket.
double polish_root(const std::function<double(double)>& f, double a, double b, double fa, double fb,
                   double tol) {
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        double x = 0.5 * (a + b);
        const double denom = fb - fa;
        if (denom != 0.0) {
            const double xs = b - fb * (b - a) / denom;
            if (xs > a && xs < b) x = xs;
        }
        // keep strictly shrinking; fall back to the midpoint when the secant
        // point hugs an endpoint
        if (x - a < 0.01 * (b - a) || b - x < 0.01 * (b - a)) x = 0.5 * (a + b);
        const double fx = f(x);
        if (fx == 0.0) return x;
        if ((fa < 0.0) != (fx < 0.0)) {
            b = x; fb = fx;
        } else {
            a = x; fa = fx;
        }
    }
    return 0.5 * (a + b);
}

std::optional<OrbitRecord> build_orbit_record(double theta0, const TongueSpec& t,
                                              const MapParams& params, bool strict) {
    const double j0 = wrap_angle(j0_from_case(theta0, params));
    TorusPoint x{wrap_angle(theta0), j0};
    OrbitRecord rec;
    rec.period = t.p;
    rec.theta0 = x.theta;
    rec.points.reserve(static_cast<size_t>(t.p));
    rec.points.push_back(x);
    double s1 = 0.0, sw = 0.0;
    TorusPoint y = x;
    for (int n = 1; n <= t.p; ++n) {
        y = step(y, params);
        const double sn = std::sin(y.theta);
        s1 += sn;
        sw += static_cast<double>(t.p - n) * sn;
        if (n < t.p) rec.points.push_back(y);
    }
    const double dj_lift = params.k_tilde * s1 + kTwoPi * params.omega * t.p;
    const double dtheta_lift = t.p * j0 + params.k_tilde * sw + kPi * params.omega * t.p * (t.p - 1);
    rec.winding_j = std::llround(dj_lift / kTwoPi);
    rec.winding_s = std::llround(dtheta_lift / kTwoPi);
    const double ej = std::fabs(dj_lift - kTwoPi * static_cast<double>(rec.winding_j));
    const double es = std::fabs(dtheta_lift - kTwoPi * static_cast<double>(rec.winding_s));
    if (ej > kClosureTol || es > kClosureTol || rec.winding_j != t.j) {
        if (strict)
            throw NumericalError("find_involution_orbits: accepted root failed closure; "
                                 "match_tol and root_tol are inconsistent");
        return std::nullopt;
    }
    rec.trace = monodromy(rec, params).trace();
    rec.stability = classify_stability(rec.trace);
    rec.found_case = params.involution_case;
    return rec;
}

// Canonical key: rotate the point list so the lexicographically smallest
// point leads, then compare pointwise.
std::vector<TorusPoint> canonical_points(const std::vector<TorusPoint>& pts) {
    size_t best = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].theta < pts[best].theta - 1e-9 ||
            (std::fabs(pts[i].theta - pts[best].theta) <= 1e-9 && pts[i].j < pts[best].j))
            best = i;
    }
    std::vector<TorusPoint> out;
    out.reserve(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) out.push_back(pts[(best + i) % pts.size()]);
    return out;
}

bool same_orbit(const OrbitRecord& a, const OrbitRecord& b, double tol) {
    if (a.period != b.period) return false;
    return same_point_set(a.points, b.points, tol);
}

}  // namespace

double j0_from_case(double theta0, const MapParams& params) {
    switch (params.involution_case) {
        case InvolutionCase::A:
            return 0.0;
        case InvolutionCase::BPlus:
            return 0.5 * params.k_tilde * std::sin(theta0) + kPi * params.omega;
        case InvolutionCase::BMinus:
            return 0.5 * params.k_tilde * std::sin(theta0) + kPi * params.omega + kPi;
    }
    throw DomainError("j0_from_case: bad involution case");
}

ResidualSample residuals(double theta0, const TongueSpec& t, const MapParams& params, long long s) {
    if (t.p < 1) throw DomainError("residuals: p must be >= 1");
    const ResidualRaw raw = residual_raw(theta0, t.p, t.j, params);
    ResidualSample out;
    out.theta0 = theta0;
    out.f_j = raw.f_j;
    out.sin_half_f_theta = std::sin(0.5 * raw.f_theta_raw - kPi * static_cast<double>(s));
    return out;
}

std::vector<OrbitRecord> find_involution_orbits(const TongueSpec& t, const MapParams& params,
                                                const FinderConfig& cfg) {
    if (t.p < 1) throw DomainError("find_involution_orbits: p must be >= 1");
    if (cfg.grid_points < 64) throw DomainError("find_involution_orbits: grid_points must be >= 64");
    if (params.k_tilde < 0.0) throw DomainError("find_involution_orbits: k must be >= 0");

    const auto f = [&](double th) { return residual_raw(th, t.p, t.j, params).f_j; };

    int n = cfg.grid_points;
    std::vector<double> roots;
    while (true) {
        roots.clear();
        const double h = kTwoPi / n;
        double prev_theta = 0.0;
        double prev_f = f(prev_theta);
        bool crowded = false;
        double last_root = std::numeric_limits<double>::quiet_NaN();
        for (int i = 1; i <= n; ++i) {
            const double theta = i * h;
            const double fv = f(theta);
            double root = std::numeric_limits<double>::quiet_NaN();
            if (prev_f == 0.0) {
                root = prev_theta;
            } else if ((prev_f < 0.0) != (fv < 0.0)) {
                root = polish_root(f, prev_theta, theta, prev_f, fv, cfg.root_tol);
            }
            if (!std::isnan(root)) {
                if (!roots.empty() && root - last_root < 4.0 * h) crowded = true;
                if (roots.empty() || root - last_root > cfg.root_tol * 4.0) {
                    roots.push_back(root);
                    last_root = root;
                }
            }
            prev_theta = theta;
            prev_f = fv;
        }
        // wraparound: a root at 2*pi duplicates one at 0, and closeness across
        // the seam counts as crowding too
        if (roots.size() >= 2) {
            if ((roots.front() + kTwoPi) - roots.back() < 4.0 * cfg.root_tol) roots.pop_back();
            else if ((roots.front() + kTwoPi) - roots.back() < 4.0 * h) crowded = true;
        }
        if (!crowded || n >= kMaxGridPoints) break;
        n *= 2;
    }

    const long long s_ref = 0;  // magnitude of sin(F_theta/2) is winding independent
    std::vector<OrbitRecord> out;
    const auto h = [&](double th) { return residuals(th, t, params, s_ref).sin_half_f_theta; };
    for (double root : roots) {
        const ResidualSample rs = residuals(root, t, params, s_ref);
        if (std::fabs(rs.sin_half_f_theta) >= cfg.match_tol) continue;
        // In strongly stretched regimes the angle residual varies by e^{lambda*p}
        // across the width of the F_J root, so re-polish theta0 on the angle
        // residual itself; a match with no nearby crossing is a coincidence.
        if (rs.sin_half_f_theta != 0.0) {
            double w = std::max(cfg.root_tol, 1e-13);
            bool bracketed = false;
            double lo = root, hi = root, flo = 0.0, fhi = 0.0;
            while (w <= 1e-6) {
                lo = root - w;
                hi = root + w;
                flo = h(lo);
                fhi = h(hi);
                if ((flo < 0.0) != (fhi < 0.0)) { bracketed = true; break; }
                w *= 4.0;
            }
            if (!bracketed) continue;
            root = polish_root(h, lo, hi, flo, fhi, 1e-15);
        }
        auto rec = build_orbit_record(root, t, params, /*strict=*/true);
        if (rec) out.push_back(std::move(*rec));
    }
    std::sort(out.begin(), out.end(),
              [](const OrbitRecord& a, const OrbitRecord& b) { return a.theta0 < b.theta0; });
    return out;
}

std::vector<OrbitRecord> find_orbits_all_cases(const TongueSpec& t, double k, double omega,
                                               const FinderConfig& cfg) {
    std::vector<InvolutionCase> cases{InvolutionCase::A};
    if (t.p % 2 == 0) {
        cases.push_back(InvolutionCase::BPlus);
        cases.push_back(InvolutionCase::BMinus);
    }
    std::vector<OrbitRecord> all;
    for (InvolutionCase c : cases) {
        MapParams params{k, omega, c};
        for (auto& rec : find_involution_orbits(t, params, cfg)) {
            bool dup = false;
            for (const auto& kept : all)
                if (same_orbit(kept, rec, 1e-7)) { dup = true; break; }
            if (!dup) all.push_back(std::move(rec));
        }
    }
    std::sort(all.begin(), all.end(), [](const OrbitRecord& a, const OrbitRecord& b) {
        const auto ca = canonical_points(a.points), cb = canonical_points(b.points);
        if (std::fabs(ca[0].theta - cb[0].theta) > 1e-12) return ca[0].theta < cb[0].theta;
        return ca[0].j < cb[0].j;
    });
    return all;
}

OrbitRecord orbit_from_theta0(double theta0, const TongueSpec& t, const MapParams& params) {
    auto rec = build_orbit_record(theta0, t, params, /*strict=*/false);
    if (!rec) throw NumericalError("orbit_from_theta0: point does not close after p steps");
    return *rec;
}

OrbitRecord construct_zero_kick_orbit(int p, int j, long long s, double theta0) {
    if (p < 1) throw DomainError("construct_zero_kick_orbit: p must be >= 1");
    const double j0_raw = (kTwoPi * static_cast<double>(s) - kPi * static_cast<double>(j) * (p - 1)) /
                          static_cast<double>(p);
    const MapParams params{0.0, static_cast<double>(j) / p, InvolutionCase::A};
    OrbitRecord rec;
    rec.period = p;
    rec.winding_j = j;
    TorusPoint x{wrap_angle(theta0), wrap_angle(j0_raw)};
    // angle winding in the canonical lift, where J starts on [0, 2*pi)
    rec.winding_s = std::llround((p * x.j + kPi * static_cast<double>(j) * (p - 1)) / kTwoPi);
    rec.theta0 = x.theta;
    for (int i = 0; i < p; ++i) {
        rec.points.push_back(x);
        x = step(x, params);
    }
    rec.trace = 2.0;  // zero kick: shear tangent map, unit off-diagonal block
    rec.stability = Stability::Marginal;
    return rec;
}

double involution_line_distance(TorusPoint x, const MapParams& params) {
    const double jb = 0.5 * params.k_tilde * std::sin(x.theta) + kPi * params.omega;
    const double da = torus_distance(x.j, 0.0);
    const double dbp = torus_distance(x.j, jb);
    const double dbm = torus_distance(x.j, jb + kPi);
    return std::min({da, dbp, dbm});
}

OrbitRecord find_non_involution_orbit(TorusPoint seed, int p, const MapParams& params,
                                      const FinderConfig& cfg) {
    if (p < 1) throw DomainError("find_non_involution_orbit: p must be >= 1");

    const auto displacement = [&](TorusPoint x0) {
        TorusPoint y = x0;
        for (int i = 0; i < p; ++i) y = step(y, params);
        return std::pair<double, double>{wrap_signed(y.j - x0.j), wrap_signed(y.theta - x0.theta)};
    };
    const auto norm = [](const std::pair<double, double>& g) {
        return std::max(std::fabs(g.first), std::fabs(g.second));
    };

    TorusPoint x{wrap_angle(seed.theta), wrap_angle(seed.j)};
    auto g = displacement(x);
    double gn = norm(g);
    for (int it = 0; it < cfg.max_iter; ++it) {
        if (gn < cfg.root_tol) break;
        const Jacobian2x2 tp = tangent_product(x, p, params);
        const Jacobian2x2 a{tp.a - 1.0, tp.b, tp.c, tp.d - 1.0};
        const double det = a.det();
        if (std::fabs(det) < 1e-12)
            throw SingularJacobianError("find_non_involution_orbit: singular Jacobian "
                                        "(parabolic or tangent orbit)");
        const double dj = (-g.first * a.d + g.second * a.b) / det;
        const double dtheta = (-g.second * a.a + g.first * a.c) / det;
        double lambda = 1.0;
        bool improved = false;
        for (int halving = 0; halving < 40; ++halving) {
            TorusPoint trial{wrap_angle(x.theta + lambda * dtheta), wrap_angle(x.j + lambda * dj)};
            const auto gt = displacement(trial);
            const double gtn = norm(gt);
            if (gtn < gn) {
                x = trial; g = gt; gn = gtn;
                improved = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!improved)
            throw NoConvergenceError("find_non_involution_orbit: no convergence (line search stalled)");
    }
    if (gn >= cfg.root_tol)
        throw NoConvergenceError("find_non_involution_orbit: no convergence");

    OrbitRecord rec;
    rec.period = p;
    rec.theta0 = x.theta;
    rec.points.reserve(static_cast<size_t>(p));
    // canonical lift: start from the torus representative and let the
    // momentum accumulate unwrapped from there
    TorusPoint y = x;
    double j_lift = x.j;
    double dtheta_lift = 0.0;
    for (int i = 0; i < p; ++i) {
        rec.points.push_back(y);
        dtheta_lift += j_lift;
        const TorusPoint z = step(y, params);
        j_lift += params.k_tilde * std::sin(z.theta) + kTwoPi * params.omega;
        y = z;
    }
    const double dj_lift = j_lift - x.j;
    rec.winding_j = std::llround(dj_lift / kTwoPi);
    rec.winding_s = std::llround(dtheta_lift / kTwoPi);
    if (std::fabs(dj_lift - kTwoPi * static_cast<double>(rec.winding_j)) > kClosureTol ||
        std::fabs(dtheta_lift - kTwoPi * static_cast<double>(rec.winding_s)) > kClosureTol)
        throw NumericalError("find_non_involution_orbit: converged point failed winding closure");
    rec.trace = monodromy(rec, params).trace();
    rec.stability = classify_stability(rec.trace);
    return rec;
}

std::vector<TorusPoint> noninvolution_seed_candidates(int p, int j, long long s,
                                                      const MapParams& params, int grid_points) {
    if (p < 1 || grid_points < 16) throw DomainError("noninvolution_seed_candidates: bad arguments");
    const double j0 = wrap_angle(
        (kTwoPi * static_cast<double>(s) - kPi * static_cast<double>(j) * (p - 1)) / p);
    const auto normal_defect = [&](double theta) {
        TorusPoint y{wrap_angle(theta), j0};
        for (int i = 0; i < p; ++i) y = step(y, params);
        return wrap_signed(y.j - j0);
    };
    std::vector<TorusPoint> seeds;
    const double h = kTwoPi / grid_points;
    double prev = normal_defect(0.0);
    for (int i = 1; i <= grid_points; ++i) {
        const double theta = i * h;
        const double cur = normal_defect(theta);
        if (prev == 0.0) {
            seeds.push_back({wrap_angle(theta - h), j0});
        } else if ((prev < 0.0) != (cur < 0.0)) {
            const double root = polish_root(normal_defect, theta - h, theta, prev, cur, 1e-12);
            seeds.push_back({wrap_angle(root), j0});
        }
        prev = cur;
    }
    return seeds;
}

OrbitRecord track_involution_root(double theta_prev, double window, const TongueSpec& t,
                                  const MapParams& params, const FinderConfig& cfg) {
    const auto f = [&](double th) { return residuals(th, t, params, 0).f_j; };
    constexpr int kLocal = 256;
    const double h = 2.0 * window / kLocal;
    double a = theta_prev - window;
    double fa = f(a);
    double best_root = std::numeric_limits<double>::quiet_NaN();
    for (int i = 1; i <= kLocal; ++i) {
        const double b = theta_prev - window + i * h;
        const double fb = f(b);
        if (fa == 0.0 || (fa < 0.0) != (fb < 0.0)) {
            const double root = polish_root(f, a, b, fa, fb, cfg.root_tol);
            if (std::isnan(best_root) ||
                std::fabs(root - theta_prev) < std::fabs(best_root - theta_prev)) {
                const ResidualSample rs = residuals(root, t, params, 0);
                if (std::fabs(rs.sin_half_f_theta) < cfg.match_tol) best_root = root;
            }
        }
        a = b;
        fa = fb;
    }
    if (std::isnan(best_root)) throw NumericalError("track_involution_root: tracked root lost");
    return orbit_from_theta0(best_root, t, params);
}

int primitive_period(const OrbitRecord& record, const MapParams& params) {
    (void)params;
    const int p = record.period;
    for (int d = 1; d < p; ++d) {
        if (p % d != 0) continue;
        bool closes = true;
        for (int i = 0; i < p && closes; ++i) {
            const TorusPoint& a = record.points[static_cast<size_t>(i)];
            const TorusPoint& b = record.points[static_cast<size_t>((i + d) % p)];
            if (torus_distance(a.theta, b.theta) > 1e-8 || torus_distance(a.j, b.j) > 1e-8)
                closes = false;
        }
        if (closes) return d;
    }
    return p;
}

std::vector<TorusPoint> involution_image_orbit(const OrbitRecord& record, const MapParams& params,
                                               bool use_case_a) {
    // The image of x_0 starts a periodic orbit traversed in reversed time.
    TorusPoint start = use_case_a ? involution_a(record.points[0])
                                  : involution_b(record.points[0], params);
    std::vector<TorusPoint> out;
    out.reserve(record.points.size());
    TorusPoint y = start;
    for (size_t i = 0; i < record.points.size(); ++i) {
        out.push_back(y);
        y = step(y, params);
    }
    return out;
}

bool same_point_set(const std::vector<TorusPoint>& a, const std::vector<TorusPoint>& b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& pa : a) {
        bool found = false;
        for (size_t i = 0; i < b.size(); ++i) {
            if (used[i]) continue;
            if (torus_distance(pa.theta, b[i].theta) < tol && torus_distance(pa.j, b[i].j) < tol) {
                used[i] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace tongue
