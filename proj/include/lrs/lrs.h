/*
 * lrs: correlation spreading in long-range quantum spin lattices.
 *
 * C interface over the C++ core. All objects are opaque handles created by
 * lrs_*_create / producer functions and released with the matching
 * lrs_*_destroy. Every fallible call returns an lrs_status; on failure the
 * message is available from lrs_last_error() on the calling thread until the
 * next failing call on that thread.
 */
#ifndef LRS_LRS_H
#define LRS_LRS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(LRS_BUILDING_LIBRARY)
#    define LRS_API __declspec(dllexport)
#  else
#    define LRS_API __declspec(dllimport)
#  endif
#else
#  define LRS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

#define LRS_ABI_VERSION 1u

typedef enum lrs_status {
  LRS_OK = 0,
  LRS_ERR_INPUT = 1,        /* invalid argument or malformed input file */
  LRS_ERR_PRECONDITION = 2, /* outside an operation's validity window */
  LRS_ERR_DOMAIN = 3,       /* e.g. long-range bound requested with alpha <= D */
  LRS_ERR_CONVERGENCE = 4,  /* Krylov propagation failed at its dimension cap */
  LRS_ERR_EMPTY_FRONT = 5,  /* no distance row reached the threshold */
  LRS_ERR_IO = 6,
  LRS_ERR_INTERNAL = 99
} lrs_status;

typedef struct lrs_context_s* lrs_context;
typedef struct lrs_lattice_s* lrs_lattice;
typedef struct lrs_curve_s* lrs_curve;
typedef struct lrs_field_s* lrs_field;
typedef struct lrs_front_s* lrs_front;
typedef struct lrs_scaling_s* lrs_scaling;
typedef struct lrs_bound_report_s* lrs_bound_report;

LRS_API uint32_t lrs_abi_version(void);
LRS_API const char* lrs_version(void);
LRS_API const char* lrs_last_error(void);
LRS_API const char* lrs_status_name(lrs_status status);

/* ---- context: worker count for data-parallel kernels ------------------- */

LRS_API lrs_status lrs_context_create(lrs_context* out);
LRS_API void lrs_context_destroy(lrs_context ctx);
/* 0 selects the available hardware parallelism. Results never depend on it. */
LRS_API lrs_status lrs_context_set_workers(lrs_context ctx, int workers);
LRS_API int lrs_context_workers(lrs_context ctx);

/* ---- lattice ------------------------------------------------------------ */

LRS_API lrs_status lrs_lattice_create(const int* extents, int dimension, lrs_lattice* out);
LRS_API void lrs_lattice_destroy(lrs_lattice lattice);
LRS_API int lrs_lattice_dimension(lrs_lattice lattice);
LRS_API int64_t lrs_lattice_size(lrs_lattice lattice);
LRS_API int64_t lrs_lattice_center(lrs_lattice lattice);
LRS_API lrs_status lrs_lattice_distance(lrs_lattice lattice, int64_t i, int64_t j, int* out);
/* counts[l] for l = 0..min(capacity, l_max+1)-1; *l_max receives l_max. */
LRS_API lrs_status lrs_lattice_shell_counts(lrs_lattice lattice, int64_t origin, int64_t* counts,
                                            size_t capacity, int* l_max);
LRS_API lrs_status lrs_lattice_shell_sum(lrs_lattice lattice, int64_t origin, int delta,
                                         double exponent, double* out);

/* ---- quantum channel signal probabilities -------------------------------- */

typedef enum lrs_initial_state { LRS_STATE_PRODUCT_PLUS = 0, LRS_STATE_GHZ = 1 } lrs_initial_state;
typedef enum lrs_curve_kind { LRS_CURVE_EXACT = 0, LRS_CURVE_LOWER_BOUND = 1 } lrs_curve_kind;

typedef struct lrs_channel_setup {
  int64_t origin; /* negative: lattice centre */
  int delta;      /* receivers are all sites with dist(origin, j) >= delta */
  double alpha;
  lrs_initial_state initial_state;
} lrs_channel_setup;

LRS_API lrs_status lrs_product_signal(lrs_lattice lattice, const lrs_channel_setup* setup,
                                      double t, double* out);
LRS_API lrs_status lrs_product_signal_lower_bound(lrs_lattice lattice,
                                                  const lrs_channel_setup* setup, double t,
                                                  double* out);
LRS_API lrs_status lrs_ghz_signal(lrs_lattice lattice, const lrs_channel_setup* setup, double t,
                                  double* out);
LRS_API lrs_status lrs_ghz_coupling_sum(lrs_lattice lattice, const lrs_channel_setup* setup,
                                        double* out);
LRS_API lrs_status lrs_ghz_front_exponent(lrs_lattice lattice, double alpha, int delta_lo,
                                          int delta_hi, double* slope);
LRS_API lrs_status lrs_receiver_size(lrs_lattice lattice, const lrs_channel_setup* setup,
                                     int64_t* out);

LRS_API lrs_status lrs_signal_curve(lrs_context ctx, lrs_lattice lattice,
                                    const lrs_channel_setup* setup, lrs_curve_kind kind,
                                    const double* times, size_t n_times, lrs_curve* out);
LRS_API void lrs_curve_destroy(lrs_curve curve);
LRS_API size_t lrs_curve_size(lrs_curve curve);
LRS_API lrs_status lrs_curve_point(lrs_curve curve, size_t i, double* t, double* p);
/* CSV `t,p`; JSON sidecar with alpha, D, delta, |B|, state kind. */
LRS_API lrs_status lrs_curve_write(lrs_curve curve, const char* csv_path, const char* meta_path);

typedef struct lrs_bound_params {
  double C;
  double v;
  double xi;
  double epsilon;
  int64_t size_a;
  int64_t size_b;
} lrs_bound_params;

LRS_API lrs_status lrs_lr_bound_envelope(const lrs_bound_params* params, double alpha,
                                         int dimension, int delta, double t, double* out);
LRS_API lrs_status lrs_causal_boundary(const lrs_bound_params* params, double alpha,
                                       int dimension, int delta, double* out);

/* ---- long-range Ising closed forms (|+>^N initial state) ---------------- */

LRS_API lrs_status lrs_ising_magnetization_x(lrs_lattice lattice, double J, double alpha,
                                             int64_t site, double t, double* out);
LRS_API lrs_status lrs_ising_connected_xx(lrs_lattice lattice, double J, double alpha,
                                          int64_t origin, int64_t site, double t, double* out);
/* origin < 0 selects the centre; receivers at origin + delta along axis 0. */
LRS_API lrs_status lrs_ising_field(lrs_context ctx, lrs_lattice lattice, double J, double alpha,
                                   int64_t origin, int delta_max, const double* times,
                                   size_t n_times, lrs_field* out);
LRS_API double lrs_rescaled_time(double t, int64_t n_sites, double alpha);

/* ---- long-range XXZ quench by exact diagonalization -------------------- */

enum { LRS_OBS_ZZ_CONNECTED = 1u, LRS_OBS_PM = 2u };

typedef struct lrs_quench_config {
  int n_sites;
  double alpha;
  double j_perp;
  double j_z;
  double t_max;
  double dt;
  int sample_stride;
  int origin;    /* negative: central site */
  int delta_max; /* <= 0: up to the right edge */
  int krylov_dim;
  int krylov_cap;
  double tolerance;
  int max_sites;
  unsigned observables; /* bitmask of LRS_OBS_* */
} lrs_quench_config;

LRS_API void lrs_quench_config_default(lrs_quench_config* cfg);
/* Either output may be NULL when its observable is not requested. */
LRS_API lrs_status lrs_xxz_quench(lrs_context ctx, const lrs_quench_config* cfg,
                                  lrs_field* zz_out, lrs_field* pm_out);

/* ---- correlation fields ------------------------------------------------- */

LRS_API void lrs_field_destroy(lrs_field field);
LRS_API lrs_status lrs_field_shape(lrs_field field, size_t* n_distances, size_t* n_times);
LRS_API lrs_status lrs_field_distance(lrs_field field, size_t i, int* out);
LRS_API lrs_status lrs_field_time(lrs_field field, size_t k, double* out);
LRS_API lrs_status lrs_field_value(lrs_field field, size_t i, size_t k, double* out);
LRS_API const char* lrs_field_observable(lrs_field field);
/* CSV `delta,t,value`; meta_path may be NULL. */
LRS_API lrs_status lrs_field_write(lrs_field field, const char* csv_path, const char* meta_path);
LRS_API lrs_status lrs_field_read(const char* csv_path, const char* meta_path, lrs_field* out);
/* Running maximum over distance of |C| at every time. */
LRS_API lrs_status lrs_field_destagger(lrs_field field, lrs_field* out);

/* ---- causal fronts and fits --------------------------------------------- */

typedef struct lrs_power_fit {
  double exponent;
  double prefactor;
  double residual;
  int n_points;
  int window_min;
  int window_max;
} lrs_power_fit;

LRS_API lrs_status lrs_extract_front(lrs_field field, double epsilon, lrs_front* out);
LRS_API void lrs_front_destroy(lrs_front front);
LRS_API size_t lrs_front_size(lrs_front front);
LRS_API int lrs_front_omitted(lrs_front front);
LRS_API double lrs_front_epsilon(lrs_front front);
LRS_API lrs_status lrs_front_point(lrs_front front, size_t i, int* delta, double* t_star);
/* CSV `delta,t_star`. */
LRS_API lrs_status lrs_front_write(lrs_front front, const char* csv_path);
/* Epsilon is not part of the CSV; pass the value used to produce it. */
LRS_API lrs_status lrs_front_read(const char* csv_path, double epsilon, lrs_front* out);
LRS_API lrs_status lrs_fit_power_law(lrs_front front, int window_min, int window_max,
                                     lrs_power_fit* out);
/* JSON {q, prefactor, residual, epsilon, window, ...}. */
LRS_API lrs_status lrs_fit_report_write(lrs_front front, const lrs_power_fit* fit,
                                        const char* json_path);

/* ---- finite-size scaling ------------------------------------------------- */

LRS_API lrs_status lrs_scaling_study(lrs_context ctx, double alpha, double J, const int64_t* sizes,
                                     size_t n_sizes, const double* taus, size_t n_taus,
                                     const int* distances, size_t n_distances, lrs_scaling* out);
LRS_API void lrs_scaling_destroy(lrs_scaling s);
LRS_API size_t lrs_scaling_series_count(lrs_scaling s);
LRS_API lrs_status lrs_scaling_value(lrs_scaling s, size_t series, size_t size_index,
                                     size_t distance_index, double* out);
LRS_API lrs_status lrs_scaling_extrapolated(lrs_scaling s, size_t series, size_t distance_index,
                                            double* intercept, double* slope);
LRS_API lrs_status lrs_scaling_spread(lrs_scaling s, size_t series, double* spread, double* mean);
/* values CSV `tau,n,delta,value`; extrapolation CSV `tau,delta,intercept,slope,residual`;
 * JSON summary per tau. */
LRS_API lrs_status lrs_scaling_write(lrs_scaling s, const char* values_csv, const char* extrap_csv,
                                     const char* summary_json);

/* ---- comparison with the long-range bound ------------------------------- */

LRS_API lrs_status lrs_compare_with_bound(lrs_front front, const lrs_bound_params* params,
                                          double alpha, int dimension, int window_min,
                                          int window_max, lrs_bound_report* out);
LRS_API void lrs_bound_report_destroy(lrs_bound_report r);
LRS_API int lrs_bound_report_empty(lrs_bound_report r);
LRS_API size_t lrs_bound_report_size(lrs_bound_report r);
LRS_API lrs_status lrs_bound_report_ratio(lrs_bound_report r, size_t i, int* delta, double* ratio);
LRS_API lrs_status lrs_bound_report_summary(lrs_bound_report r, double* min_ratio,
                                            double* median_ratio);
/* CSV `delta,t_star,t_bound,ratio` and JSON summary. */
LRS_API lrs_status lrs_bound_report_write(lrs_bound_report r, const char* csv_path,
                                          const char* json_path);

#ifdef __cplusplus
}
#endif

#endif /* LRS_LRS_H */
