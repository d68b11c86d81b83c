/* dunkl.h - public C interface of the Dunkl harmonic analysis library.
 *
 * The library implements rational Dunkl analysis for Z_2^N root systems:
 * weighted quadrature grids, the discrete Dunkl transform and its operator
 * calculus (translations, convolutions, semigroups, multiplier systems), the
 * Chang-Fefferman atomic decomposition and the constructive Fefferman-Stein
 * decomposition of compactly supported BMO functions.
 *
 * All entry points are thread-compatible: a session is immutable after
 * creation except for its error slot, and fields are independent objects.
 */

#ifndef DUNKL_H_INCLUDED
#define DUNKL_H_INCLUDED

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dunkl_status {
  DUNKL_OK = 0,
  DUNKL_ERR_CHECK_FAILED = 1,   /* a verification subcommand reported failures */
  DUNKL_ERR_CONFIG = 2,         /* invalid configuration or arguments */
  DUNKL_ERR_NONCONVERGENCE = 3, /* quadrature/iteration failed to converge */
  DUNKL_ERR_IO = 4,
  DUNKL_ERR_INTERNAL = 5
} dunkl_status;

typedef struct dunkl_session dunkl_session;
typedef struct dunkl_field dunkl_field;

/* ---- lifecycle ---------------------------------------------------------- */

/* Create a session from a JSON configuration (see docs/cli.md for the keys).
 * Builds the weighted grids and the cached transform tables. */
dunkl_status dunkl_session_create(const char* config_json, dunkl_session** out);
dunkl_status dunkl_session_create_from_file(const char* config_path, dunkl_session** out);
void dunkl_session_destroy(dunkl_session* s);

const char* dunkl_status_name(dunkl_status st);
/* Message of the last failing call on this session (empty when none). */
const char* dunkl_session_last_error(const dunkl_session* s);
/* Thread-local JSON record of the most recent failure (covers session
 * creation, where no session exists to ask); names the offending config key
 * when the problem is a bad configuration. */
const char* dunkl_last_error_json(void);
const char* dunkl_version(void);

/* ---- configuration queries ---------------------------------------------- */

int dunkl_dimension(const dunkl_session* s);
size_t dunkl_grid_size(const dunkl_session* s);
double dunkl_homogeneous_dimension(const dunkl_session* s);
/* c_k = int exp(-|x|^2/2) dw. */
double dunkl_normalization(const dunkl_session* s);

/* ---- pointwise kernels --------------------------------------------------- */

dunkl_status dunkl_weight_density(const dunkl_session* s, const double* x, double* out);
dunkl_status dunkl_orbit_distance(const dunkl_session* s, const double* x, const double* y,
                                  double* out);
/* Dunkl kernel E(x, y) for real arguments (|x_i y_i| <= 700). */
dunkl_status dunkl_kernel(dunkl_session* s, const double* x, const double* y, double* out);
dunkl_status dunkl_ball_volume(dunkl_session* s, const double* center, double r, double* out);
dunkl_status dunkl_heat_profile(dunkl_session* s, double t, const double* x, double* out);
/* Two-point heat kernel h_t(x, y). */
dunkl_status dunkl_heat_kernel(dunkl_session* s, double t, const double* x, const double* y,
                               double* out);
dunkl_status dunkl_poisson_profile(const dunkl_session* s, const double* x, double* out);

/* ---- grid fields --------------------------------------------------------- */

/* Create a field from interleaved samples; im may be NULL for real data.
 * n must equal dunkl_grid_size(). */
dunkl_status dunkl_field_create(dunkl_session* s, const double* re, const double* im, size_t n,
                                dunkl_field** out);
void dunkl_field_destroy(dunkl_field* f);
size_t dunkl_field_size(const dunkl_field* f);
dunkl_status dunkl_field_values(const dunkl_field* f, double* re, double* im);
/* Node coordinates of flat index i. */
dunkl_status dunkl_field_node(const dunkl_field* f, size_t i, double* coords);

/* norm_kind: 0 = L2(dw), 1 = L1(dw), 2 = sup. */
dunkl_status dunkl_field_norm(const dunkl_field* f, int norm_kind, double* out);
dunkl_status dunkl_field_integral(const dunkl_field* f, double* re, double* im);

/* CSV (coordinates..., re, im) and binary ("DUNKLGF1") serialization. */
dunkl_status dunkl_field_write_csv(const dunkl_field* f, const char* path);
dunkl_status dunkl_field_write_binary(const dunkl_field* f, const char* path);
dunkl_status dunkl_field_read_csv(dunkl_session* s, const char* path, dunkl_field** out);
dunkl_status dunkl_field_read_binary(dunkl_session* s, const char* path, dunkl_field** out);

/* ---- operators ----------------------------------------------------------- */

dunkl_status dunkl_transform_forward(dunkl_session* s, const dunkl_field* f, dunkl_field** out);
dunkl_status dunkl_transform_inverse(dunkl_session* s, const dunkl_field* g, dunkl_field** out);
dunkl_status dunkl_translate(dunkl_session* s, const dunkl_field* f, const double* x,
                             dunkl_field** out);
dunkl_status dunkl_convolve(dunkl_session* s, const dunkl_field* f, const dunkl_field* g,
                            dunkl_field** out);
dunkl_status dunkl_heat_semigroup(dunkl_session* s, double t, const dunkl_field* f,
                                  dunkl_field** out);
dunkl_status dunkl_poisson_semigroup(dunkl_session* s, double t, const dunkl_field* f,
                                     dunkl_field** out);
/* Riesz transform along an axis (multiplier -i xi_a / |xi|). */
dunkl_status dunkl_riesz(dunkl_session* s, int axis, const dunkl_field* f, dunkl_field** out);
/* T_axis, the Dunkl difference-differential derivative (spectral route). */
dunkl_status dunkl_derivative(dunkl_session* s, int axis, const dunkl_field* f, dunkl_field** out);

/* Relative Plancherel defect | |Ff|_2 - |f|_2 | / |f|_2. */
dunkl_status dunkl_plancherel_defect(dunkl_session* s, const dunkl_field* f, double* out);

/* ---- experiment runner ---------------------------------------------------
 * Runs a CLI subcommand (transform-check, heat-check, triangle-check, atoms,
 * carleson, decompose, report) writing artifacts under the configured
 * output directory. The returned status matches the CLI exit code; on
 * failure a machine-readable JSON description is available via
 * dunkl_session_last_error(). */
dunkl_status dunkl_run(dunkl_session* s, const char* subcommand);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DUNKL_H_INCLUDED */
