/* tongue_atlas.h - C interface to the kicked-torus-map periodic orbit library.
 *
 * All functions return a ta_status; results travel through out parameters or
 * opaque handles. Handles are freed with the matching *_free function. On any
 * failure ta_last_error() carries a thread-local description. */

#ifndef TONGUE_ATLAS_H
#define TONGUE_ATLAS_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ta_status {
    TA_OK = 0,
    TA_ERR_INVALID_ARGUMENT = 1,
    TA_ERR_NO_CONVERGENCE = 2,
    TA_ERR_SINGULAR = 3,
    TA_ERR_NUMERICAL = 4
} ta_status;

typedef enum ta_involution_case {
    TA_CASE_A = 0,
    TA_CASE_B_PLUS = 1,
    TA_CASE_B_MINUS = 2
} ta_involution_case;

typedef enum ta_stability {
    TA_STABLE = 0,
    TA_UNSTABLE = 1,
    TA_MARGINAL = 2
} ta_stability;

typedef enum ta_side { TA_SIDE_LEFT = 0, TA_SIDE_RIGHT = 1 } ta_side;

typedef struct ta_point {
    double theta;
    double momentum;
} ta_point;

typedef struct ta_map_params {
    double k_tilde;
    double omega;
    int involution_case; /* ta_involution_case */
} ta_map_params;

typedef struct ta_finder_config {
    int grid_points;
    double root_tol;
    double match_tol;
    int max_iter;
    double boundary_tol;
    double border_tol;
} ta_finder_config;

const char* ta_status_name(ta_status status);
const char* ta_last_error(void);
void ta_finder_config_default(ta_finder_config* cfg);

/* ---- exact map operations ---- */
ta_status ta_map_step(const ta_map_params* params, const ta_point* x, ta_point* out);
ta_status ta_map_step_inverse(const ta_map_params* params, const ta_point* x, ta_point* out);
ta_status ta_involution_a(const ta_point* x, ta_point* out);
ta_status ta_involution_b(const ta_map_params* params, const ta_point* x, ta_point* out);
ta_status ta_reversor(const ta_point* x, ta_point* out);
/* row-major [dJ'/dJ, dJ'/dtheta, dtheta'/dJ, dtheta'/dtheta] at the updated angle */
ta_status ta_tangent(const ta_map_params* params, double theta_next, double out_matrix[4]);
ta_status ta_classify_stability(double trace, double tol, int* out_stability);

/* ---- integer helpers and Gauss sums ---- */
ta_status ta_totient(int64_t p, int64_t* out);
ta_status ta_mod_inverse(int64_t j, int64_t p, int64_t* out);
ta_status ta_legendre(int64_t a, int64_t q, int* out);
ta_status ta_jacobi(int64_t a, int64_t b, int* out);
ta_status ta_gauss_case_l(int64_t p, int64_t j, int involution_case, int64_t* out_l);
ta_status ta_xi_phase(int64_t p, int64_t j, int involution_case, double* out_phase);
ta_status ta_gauss_sum_direct(int64_t p, int64_t j, int64_t l, double* out_re, double* out_im);

/* ---- first-order predictions ---- */
ta_status ta_tongue_edges(int p, int j, double k, double* out_lo, double* out_hi);
ta_status ta_solve_vartheta(int p, int j, double k, double omega, double* out_stable,
                            double* out_unstable);
ta_status ta_winding_s(int p, int j, int64_t* out);
ta_status ta_perturbative_trace(int p, double k, double vartheta, double* out);
ta_status ta_coalescence_gap(int p, double k, double d_omega, double* out);
ta_status ta_p1_boundary(double omega, double* out);
ta_status ta_p1_stability_border(double omega, double* out);

typedef struct ta_resonance3 {
    double eta;
    double c_val;
    double c_prime;
    double a_val;
    double a_prime;
    double omega_freq;
} ta_resonance3;

ta_status ta_resonance3_eta(ta_resonance3* out);

/* ---- orbit finding ---- */
typedef struct ta_orbit_list ta_orbit_list;

typedef struct ta_orbit_info {
    int period;
    int64_t winding_j;
    int64_t winding_s;
    double trace;
    int stability;       /* ta_stability */
    int involution_case; /* ta_involution_case, or -1 when found off the lines */
    double theta0;
} ta_orbit_info;

ta_status ta_residuals(const ta_map_params* params, int p, int j, int64_t s, double theta0,
                       double* out_f_j, double* out_sin_half_f_theta);
ta_status ta_find_involution_orbits(const ta_map_params* params, int p, int j,
                                    const ta_finder_config* cfg, ta_orbit_list** out);
ta_status ta_find_orbits_all_cases(double k, double omega, int p, int j,
                                   const ta_finder_config* cfg, ta_orbit_list** out);
ta_status ta_find_non_involution_orbit(const ta_map_params* params, const ta_point* seed, int p,
                                       const ta_finder_config* cfg, ta_orbit_list** out);
ta_status ta_construct_zero_kick_orbit(int p, int j, int64_t s, double theta0,
                                       ta_orbit_list** out);
ta_status ta_noninvolution_seeds(const ta_map_params* params, int p, int j, int64_t s,
                                 int grid_points, ta_point** out_seeds, size_t* out_count);
void ta_points_free(ta_point* points);
ta_status ta_involution_line_distance(const ta_map_params* params, const ta_point* x,
                                      double* out);
size_t ta_orbit_list_size(const ta_orbit_list* list);
ta_status ta_orbit_info_get(const ta_orbit_list* list, size_t index, ta_orbit_info* out);
ta_status ta_orbit_point_get(const ta_orbit_list* list, size_t index, size_t step, ta_point* out);
void ta_orbit_list_free(ta_orbit_list* list);

/* ---- continuation curves ---- */
typedef struct ta_curve ta_curve;

ta_status ta_trace_tongue_boundary(int p, int j, int side, double k_max, double step,
                                   const ta_finder_config* cfg, ta_curve** out);
ta_status ta_trace_stability_border(int p, int j, double omega_lo, double omega_hi, double step,
                                    double k_max, const ta_finder_config* cfg, ta_curve** out);
size_t ta_curve_size(const ta_curve* curve);
/* boundary curves: aux = residual extremum; border curves: aux = trace */
ta_status ta_curve_get(const ta_curve* curve, size_t index, double* out_k, double* out_omega,
                       double* out_aux);
void ta_curve_free(ta_curve* curve);

/* ---- parameter-plane census ---- */
typedef struct ta_census ta_census;

typedef struct ta_census_row {
    int cell_k;
    int cell_omega;
    double k;
    double omega;
    int period;
    int64_t winding_j;
    int n_stable;
    int n_unstable;
    int n_marginal;
} ta_census_row;

ta_status ta_census_run(double k_lo, double k_hi, double omega_lo, double omega_hi, int nk,
                        int nomega, int p_max, int threads, const ta_finder_config* cfg,
                        ta_census** out);
size_t ta_census_size(const ta_census* census);
ta_status ta_census_get(const ta_census* census, size_t index, ta_census_row* out);
void ta_census_free(ta_census* census);

/* ---- period-doubling cascades ---- */
typedef struct ta_cascade ta_cascade;

ta_status ta_follow_cascade(int p, int j, double omega, int n_max, const ta_finder_config* cfg,
                            ta_cascade** out);
ta_status ta_cascade_summary(const ta_cascade* cascade, double* out_delta, double* out_alpha,
                             double* out_k_infinity, int* out_truncated);
size_t ta_cascade_k_count(const ta_cascade* cascade);
ta_status ta_cascade_k_get(const ta_cascade* cascade, size_t index, double* out);
size_t ta_cascade_dtheta_count(const ta_cascade* cascade);
ta_status ta_cascade_dtheta_get(const ta_cascade* cascade, size_t index, double* out);
ta_status ta_cascade_dtheta_offset(const ta_cascade* cascade, int* out);
ta_status ta_universality_check(const ta_cascade* cascade, double* out_delta_dev,
                                double* out_alpha_dev);
void ta_cascade_free(ta_cascade* cascade);

/* ---- deterministic phase portrait sampling ---- */
typedef struct ta_portrait ta_portrait;

ta_status ta_portrait_run(const ta_map_params* params, int n_seeds, int n_iters,
                          ta_portrait** out);
size_t ta_portrait_size(const ta_portrait* portrait);
ta_status ta_portrait_get(const ta_portrait* portrait, size_t index, int* out_seed_id,
                          int* out_iter, ta_point* out_point);
void ta_portrait_free(ta_portrait* portrait);

#ifdef __cplusplus
}
#endif

#endif /* TONGUE_ATLAS_H */
