#include "tongue_atlas.h"

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "core/cascade.hpp"
#include "core/errors.hpp"
#include "core/gauss_sums.hpp"
#include "core/map.hpp"
#include "core/orbit_finder.hpp"
#include "core/perturbative.hpp"
#include "core/tongue_tracer.hpp"

namespace {

thread_local std::string g_last_error;

ta_status fail(ta_status code, const char* what) {
    g_last_error = what;
    return code;
}

// Run fn, translating exceptions into status codes.
template <typename Fn>
ta_status guarded(Fn&& fn) {
    try {
        fn();
        return TA_OK;
    } catch (const tongue::SingularJacobianError& e) {
        return fail(TA_ERR_SINGULAR, e.what());
    } catch (const tongue::NoConvergenceError& e) {
        return fail(TA_ERR_NO_CONVERGENCE, e.what());
    } catch (const tongue::DomainError& e) {
        return fail(TA_ERR_INVALID_ARGUMENT, e.what());
    } catch (const tongue::NumericalError& e) {
        return fail(TA_ERR_NUMERICAL, e.what());
    } catch (const std::exception& e) {
        return fail(TA_ERR_NUMERICAL, e.what());
    }
}

tongue::InvolutionCase to_case(int c) {
    switch (c) {
        case TA_CASE_A: return tongue::InvolutionCase::A;
        case TA_CASE_B_PLUS: return tongue::InvolutionCase::BPlus;
        case TA_CASE_B_MINUS: return tongue::InvolutionCase::BMinus;
    }
    throw tongue::DomainError("invalid involution case");
}

tongue::MapParams to_params(const ta_map_params* p) {
    if (!p) throw tongue::DomainError("params must not be null");
    if (p->k_tilde < 0.0) throw tongue::DomainError("k_tilde must be >= 0");
    return {p->k_tilde, p->omega, to_case(p->involution_case)};
}

tongue::FinderConfig to_finder(const ta_finder_config* cfg) {
    tongue::FinderConfig out;
    if (cfg) {
        out.grid_points = cfg->grid_points;
        out.root_tol = cfg->root_tol;
        out.match_tol = cfg->match_tol;
        out.max_iter = cfg->max_iter;
    }
    return out;
}

tongue::TraceConfig to_trace(const ta_finder_config* cfg) {
    tongue::TraceConfig out;
    out.finder = to_finder(cfg);
    if (cfg) {
        out.boundary_tol = cfg->boundary_tol;
        out.border_tol = cfg->border_tol;
    }
    return out;
}

ta_point from_point(tongue::TorusPoint x) { return {x.theta, x.j}; }
tongue::TorusPoint to_point(const ta_point* x) {
    if (!x) throw tongue::DomainError("point must not be null");
    return {x->theta, x->momentum};
}

int from_stability(tongue::Stability s) {
    switch (s) {
        case tongue::Stability::Stable: return TA_STABLE;
        case tongue::Stability::Unstable: return TA_UNSTABLE;
        case tongue::Stability::Marginal: return TA_MARGINAL;
    }
    return TA_MARGINAL;
}

int from_case(tongue::InvolutionCase c) {
    switch (c) {
        case tongue::InvolutionCase::A: return TA_CASE_A;
        case tongue::InvolutionCase::BPlus: return TA_CASE_B_PLUS;
        case tongue::InvolutionCase::BMinus: return TA_CASE_B_MINUS;
    }
    return TA_CASE_A;
}

}  // namespace

struct ta_orbit_list {
    std::vector<tongue::OrbitRecord> orbits;
};

struct ta_curve {
    // k, omega, aux triples
    std::vector<double> k, omega, aux;
};

struct ta_census {
    std::vector<ta_census_row> rows;
};

struct ta_cascade {
    tongue::CascadeReport report;
};

struct ta_portrait {
    std::vector<int> seed_id;
    std::vector<int> iter;
    std::vector<ta_point> pts;
};

extern "C" {

const char* ta_status_name(ta_status status) {
    switch (status) {
        case TA_OK: return "ok";
        case TA_ERR_INVALID_ARGUMENT: return "invalid argument";
        case TA_ERR_NO_CONVERGENCE: return "no convergence";
        case TA_ERR_SINGULAR: return "singular Jacobian";
        case TA_ERR_NUMERICAL: return "numerical failure";
    }
    return "unknown";
}

const char* ta_last_error(void) { return g_last_error.c_str(); }

void ta_finder_config_default(ta_finder_config* cfg) {
    if (!cfg) return;
    tongue::FinderConfig f;
    tongue::TraceConfig t;
    cfg->grid_points = f.grid_points;
    cfg->root_tol = f.root_tol;
    cfg->match_tol = f.match_tol;
    cfg->max_iter = f.max_iter;
    cfg->boundary_tol = t.boundary_tol;
    cfg->border_tol = t.border_tol;
}

ta_status ta_map_step(const ta_map_params* params, const ta_point* x, ta_point* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = from_point(tongue::step(to_point(x), to_params(params)));
    });
}

ta_status ta_map_step_inverse(const ta_map_params* params, const ta_point* x, ta_point* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = from_point(tongue::step_inverse(to_point(x), to_params(params)));
    });
}

ta_status ta_involution_a(const ta_point* x, ta_point* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = from_point(tongue::involution_a(to_point(x)));
    });
}

ta_status ta_involution_b(const ta_map_params* params, const ta_point* x, ta_point* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = from_point(tongue::involution_b(to_point(x), to_params(params)));
    });
}

ta_status ta_reversor(const ta_point* x, ta_point* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = from_point(tongue::reversor(to_point(x)));
    });
}

ta_status ta_tangent(const ta_map_params* params, double theta_next, double out_matrix[4]) {
    return guarded([&] {
        if (!out_matrix) throw tongue::DomainError("out must not be null");
        const tongue::Jacobian2x2 m = tongue::tangent(theta_next, to_params(params));
        out_matrix[0] = m.a;
        out_matrix[1] = m.b;
        out_matrix[2] = m.c;
        out_matrix[3] = m.d;
    });
}

ta_status ta_classify_stability(double trace, double tol, int* out_stability) {
    return guarded([&] {
        if (!out_stability) throw tongue::DomainError("out must not be null");
        *out_stability = from_stability(tongue::classify_stability(trace, tol));
    });
}

ta_status ta_totient(int64_t p, int64_t* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::totient(p);
    });
}

ta_status ta_mod_inverse(int64_t j, int64_t p, int64_t* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::mod_inverse(j, p);
    });
}

ta_status ta_legendre(int64_t a, int64_t q, int* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::legendre(a, q);
    });
}

ta_status ta_jacobi(int64_t a, int64_t b, int* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::jacobi(a, b);
    });
}

ta_status ta_gauss_case_l(int64_t p, int64_t j, int involution_case, int64_t* out_l) {
    return guarded([&] {
        if (!out_l) throw tongue::DomainError("out must not be null");
        *out_l = tongue::gauss_case_l({j, p}, to_case(involution_case));
    });
}

ta_status ta_xi_phase(int64_t p, int64_t j, int involution_case, double* out_phase) {
    return guarded([&] {
        if (!out_phase) throw tongue::DomainError("out must not be null");
        *out_phase = tongue::xi_phase({j, p}, to_case(involution_case));
    });
}

ta_status ta_gauss_sum_direct(int64_t p, int64_t j, int64_t l, double* out_re, double* out_im) {
    return guarded([&] {
        if (!out_re || !out_im) throw tongue::DomainError("out must not be null");
        const auto g = tongue::gauss_sum_direct({j, p}, l);
        *out_re = g.real();
        *out_im = g.imag();
    });
}

ta_status ta_tongue_edges(int p, int j, double k, double* out_lo, double* out_hi) {
    return guarded([&] {
        if (!out_lo || !out_hi) throw tongue::DomainError("out must not be null");
        const auto [lo, hi] = tongue::tongue_edges({p, j}, k);
        *out_lo = lo;
        *out_hi = hi;
    });
}

ta_status ta_solve_vartheta(int p, int j, double k, double omega, double* out_stable,
                            double* out_unstable) {
    return guarded([&] {
        if (!out_stable || !out_unstable) throw tongue::DomainError("out must not be null");
        const auto v = tongue::solve_vartheta({p, j}, {k, omega, tongue::InvolutionCase::A});
        *out_stable = v.stable;
        *out_unstable = v.unstable;
    });
}

ta_status ta_winding_s(int p, int j, int64_t* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::winding_s({p, j});
    });
}

ta_status ta_perturbative_trace(int p, double k, double vartheta, double* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::perturbative_trace({p, 1}, k, vartheta);
    });
}

ta_status ta_coalescence_gap(int p, double k, double d_omega, double* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::coalescence_gap({p, 1}, k, d_omega);
    });
}

ta_status ta_p1_boundary(double omega, double* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::p1_boundary(omega);
    });
}

ta_status ta_p1_stability_border(double omega, double* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::p1_stability_border(omega);
    });
}

ta_status ta_resonance3_eta(ta_resonance3* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        const auto r = tongue::resonance3_eta();
        out->eta = r.eta;
        out->c_val = r.c_val;
        out->c_prime = r.c_prime;
        out->a_val = r.a_val;
        out->a_prime = r.a_prime;
        out->omega_freq = r.omega_freq;
    });
}

ta_status ta_residuals(const ta_map_params* params, int p, int j, int64_t s, double theta0,
                       double* out_f_j, double* out_sin_half_f_theta) {
    return guarded([&] {
        if (!out_f_j || !out_sin_half_f_theta) throw tongue::DomainError("out must not be null");
        const auto r = tongue::residuals(theta0, {p, j}, to_params(params), s);
        *out_f_j = r.f_j;
        *out_sin_half_f_theta = r.sin_half_f_theta;
    });
}

ta_status ta_find_involution_orbits(const ta_map_params* params, int p, int j,
                                    const ta_finder_config* cfg, ta_orbit_list** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        auto orbits = tongue::find_involution_orbits({p, j}, to_params(params), to_finder(cfg));
        auto list = new ta_orbit_list;
        list->orbits = std::move(orbits);
        *out = list;
    });
}

ta_status ta_find_orbits_all_cases(double k, double omega, int p, int j,
                                   const ta_finder_config* cfg, ta_orbit_list** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        if (k < 0.0) throw tongue::DomainError("k must be >= 0");
        auto orbits = tongue::find_orbits_all_cases({p, j}, k, omega, to_finder(cfg));
        auto list = new ta_orbit_list;
        list->orbits = std::move(orbits);
        *out = list;
    });
}

ta_status ta_find_non_involution_orbit(const ta_map_params* params, const ta_point* seed, int p,
                                       const ta_finder_config* cfg, ta_orbit_list** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        auto rec = tongue::find_non_involution_orbit(to_point(seed), p, to_params(params),
                                                     to_finder(cfg));
        auto list = new ta_orbit_list;
        list->orbits.push_back(std::move(rec));
        *out = list;
    });
}

ta_status ta_construct_zero_kick_orbit(int p, int j, int64_t s, double theta0,
                                       ta_orbit_list** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        auto rec = tongue::construct_zero_kick_orbit(p, j, s, theta0);
        auto list = new ta_orbit_list;
        list->orbits.push_back(std::move(rec));
        *out = list;
    });
}

ta_status ta_noninvolution_seeds(const ta_map_params* params, int p, int j, int64_t s,
                                 int grid_points, ta_point** out_seeds, size_t* out_count) {
    return guarded([&] {
        if (!out_seeds || !out_count) throw tongue::DomainError("out must not be null");
        const auto seeds =
            tongue::noninvolution_seed_candidates(p, j, s, to_params(params), grid_points);
        auto* arr = new ta_point[seeds.size()];
        for (size_t i = 0; i < seeds.size(); ++i) arr[i] = from_point(seeds[i]);
        *out_seeds = arr;
        *out_count = seeds.size();
    });
}

void ta_points_free(ta_point* points) { delete[] points; }

ta_status ta_involution_line_distance(const ta_map_params* params, const ta_point* x,
                                      double* out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        *out = tongue::involution_line_distance(to_point(x), to_params(params));
    });
}

size_t ta_orbit_list_size(const ta_orbit_list* list) { return list ? list->orbits.size() : 0; }

ta_status ta_orbit_info_get(const ta_orbit_list* list, size_t index, ta_orbit_info* out) {
    return guarded([&] {
        if (!list || !out) throw tongue::DomainError("null argument");
        if (index >= list->orbits.size()) throw tongue::DomainError("orbit index out of range");
        const auto& rec = list->orbits[index];
        out->period = rec.period;
        out->winding_j = rec.winding_j;
        out->winding_s = rec.winding_s;
        out->trace = rec.trace;
        out->stability = from_stability(rec.stability);
        out->involution_case = rec.found_case ? from_case(*rec.found_case) : -1;
        out->theta0 = rec.theta0;
    });
}

ta_status ta_orbit_point_get(const ta_orbit_list* list, size_t index, size_t step, ta_point* out) {
    return guarded([&] {
        if (!list || !out) throw tongue::DomainError("null argument");
        if (index >= list->orbits.size()) throw tongue::DomainError("orbit index out of range");
        const auto& pts = list->orbits[index].points;
        if (step >= pts.size()) throw tongue::DomainError("step index out of range");
        *out = from_point(pts[step]);
    });
}

void ta_orbit_list_free(ta_orbit_list* list) { delete list; }

ta_status ta_trace_tongue_boundary(int p, int j, int side, double k_max, double step,
                                   const ta_finder_config* cfg, ta_curve** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        if (side != TA_SIDE_LEFT && side != TA_SIDE_RIGHT)
            throw tongue::DomainError("invalid side");
        const auto curve = tongue::trace_tongue_boundary(
            {p, j}, side == TA_SIDE_LEFT ? tongue::Side::Left : tongue::Side::Right, k_max, step,
            to_trace(cfg));
        auto* c = new ta_curve;
        for (const auto& s : curve.samples) {
            c->k.push_back(s.k);
            c->omega.push_back(s.omega);
            c->aux.push_back(s.f_ext);
        }
        *out = c;
    });
}

ta_status ta_trace_stability_border(int p, int j, double omega_lo, double omega_hi, double step,
                                    double k_max, const ta_finder_config* cfg, ta_curve** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        const auto curve =
            tongue::trace_stability_border({p, j}, omega_lo, omega_hi, step, k_max, to_trace(cfg));
        auto* c = new ta_curve;
        for (const auto& s : curve.samples) {
            c->k.push_back(s.k);
            c->omega.push_back(s.omega);
            c->aux.push_back(s.trace);
        }
        *out = c;
    });
}

size_t ta_curve_size(const ta_curve* curve) { return curve ? curve->k.size() : 0; }

ta_status ta_curve_get(const ta_curve* curve, size_t index, double* out_k, double* out_omega,
                       double* out_aux) {
    return guarded([&] {
        if (!curve) throw tongue::DomainError("null curve");
        if (index >= curve->k.size()) throw tongue::DomainError("curve index out of range");
        if (out_k) *out_k = curve->k[index];
        if (out_omega) *out_omega = curve->omega[index];
        if (out_aux) *out_aux = curve->aux[index];
    });
}

void ta_curve_free(ta_curve* curve) { delete curve; }

ta_status ta_census_run(double k_lo, double k_hi, double omega_lo, double omega_hi, int nk,
                        int nomega, int p_max, int threads, const ta_finder_config* cfg,
                        ta_census** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        const auto cells =
            tongue::census(k_lo, k_hi, omega_lo, omega_hi, nk, nomega, p_max, to_trace(cfg),
                           threads);
        auto* c = new ta_census;
        for (const auto& cell : cells) {
            for (const auto& e : cell.entries) {
                c->rows.push_back({cell.ik, cell.iomega, cell.k, cell.omega, e.p, e.j, e.n_stable,
                                   e.n_unstable, e.n_marginal});
            }
        }
        *out = c;
    });
}

size_t ta_census_size(const ta_census* census) { return census ? census->rows.size() : 0; }

ta_status ta_census_get(const ta_census* census, size_t index, ta_census_row* out) {
    return guarded([&] {
        if (!census || !out) throw tongue::DomainError("null argument");
        if (index >= census->rows.size()) throw tongue::DomainError("census index out of range");
        *out = census->rows[index];
    });
}

void ta_census_free(ta_census* census) { delete census; }

ta_status ta_follow_cascade(int p, int j, double omega, int n_max, const ta_finder_config* cfg,
                            ta_cascade** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        auto report = tongue::follow_cascade({p, j}, omega, to_finder(cfg), n_max);
        auto* c = new ta_cascade;
        c->report = std::move(report);
        *out = c;
    });
}

ta_status ta_cascade_summary(const ta_cascade* cascade, double* out_delta, double* out_alpha,
                             double* out_k_infinity, int* out_truncated) {
    return guarded([&] {
        if (!cascade) throw tongue::DomainError("null cascade");
        if (out_delta) *out_delta = cascade->report.delta_est;
        if (out_alpha) *out_alpha = cascade->report.alpha_est;
        if (out_k_infinity) *out_k_infinity = cascade->report.k_infinity;
        if (out_truncated) *out_truncated = cascade->report.truncated ? 1 : 0;
    });
}

size_t ta_cascade_k_count(const ta_cascade* cascade) {
    return cascade ? cascade->report.k_values.size() : 0;
}

ta_status ta_cascade_k_get(const ta_cascade* cascade, size_t index, double* out) {
    return guarded([&] {
        if (!cascade || !out) throw tongue::DomainError("null argument");
        if (index >= cascade->report.k_values.size())
            throw tongue::DomainError("cascade index out of range");
        *out = cascade->report.k_values[index];
    });
}

size_t ta_cascade_dtheta_count(const ta_cascade* cascade) {
    return cascade ? cascade->report.dtheta_values.size() : 0;
}

ta_status ta_cascade_dtheta_get(const ta_cascade* cascade, size_t index, double* out) {
    return guarded([&] {
        if (!cascade || !out) throw tongue::DomainError("null argument");
        if (index >= cascade->report.dtheta_values.size())
            throw tongue::DomainError("cascade index out of range");
        *out = cascade->report.dtheta_values[index];
    });
}

ta_status ta_cascade_dtheta_offset(const ta_cascade* cascade, int* out) {
    return guarded([&] {
        if (!cascade || !out) throw tongue::DomainError("null argument");
        *out = cascade->report.dtheta_offset;
    });
}

ta_status ta_universality_check(const ta_cascade* cascade, double* out_delta_dev,
                                double* out_alpha_dev) {
    return guarded([&] {
        if (!cascade) throw tongue::DomainError("null cascade");
        const auto dev = tongue::universality_check(cascade->report);
        if (out_delta_dev) *out_delta_dev = dev.delta_dev;
        if (out_alpha_dev) *out_alpha_dev = dev.alpha_dev;
    });
}

void ta_cascade_free(ta_cascade* cascade) { delete cascade; }

ta_status ta_portrait_run(const ta_map_params* params, int n_seeds, int n_iters,
                          ta_portrait** out) {
    return guarded([&] {
        if (!out) throw tongue::DomainError("out must not be null");
        if (n_seeds < 1 || n_iters < 0) throw tongue::DomainError("bad portrait size");
        const tongue::MapParams mp = to_params(params);
        auto* pt = new ta_portrait;
        const int m = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_seeds))));
        for (int s = 0; s < n_seeds; ++s) {
            tongue::TorusPoint x{tongue::kTwoPi * ((s % m) + 0.5) / m,
                                 tongue::kTwoPi * ((s / m) + 0.5) / m};
            for (int it = 0; it <= n_iters; ++it) {
                pt->seed_id.push_back(s);
                pt->iter.push_back(it);
                pt->pts.push_back(from_point(x));
                x = tongue::step(x, mp);
            }
        }
        *out = pt;
    });
}

size_t ta_portrait_size(const ta_portrait* portrait) {
    return portrait ? portrait->pts.size() : 0;
}

ta_status ta_portrait_get(const ta_portrait* portrait, size_t index, int* out_seed_id,
                          int* out_iter, ta_point* out_point) {
    return guarded([&] {
        if (!portrait) throw tongue::DomainError("null portrait");
        if (index >= portrait->pts.size())
            throw tongue::DomainError("portrait index out of range");
        if (out_seed_id) *out_seed_id = portrait->seed_id[index];
        if (out_iter) *out_iter = portrait->iter[index];
        if (out_point) *out_point = portrait->pts[index];
    });
}

void ta_portrait_free(ta_portrait* portrait) { delete portrait; }

}  // extern "C"
