/* C API for the circular-array massive MIMO rate toolkit.
 *
 * Every function returns a dmimo_status; outputs are written through pointer
 * arguments only on DMIMO_OK. After a failing call, dmimo_last_error() gives
 * a thread-local description of what went wrong.
 */
#ifndef DMIMO_H
#define DMIMO_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dmimo_status {
    DMIMO_OK = 0,
    DMIMO_ERR_INVALID_ARGUMENT = 1, /* bad parameter or unknown key */
    DMIMO_ERR_DOMAIN = 2,           /* input outside the mathematical domain */
    DMIMO_ERR_SINGULAR = 3,         /* geometry or matrix is singular */
    DMIMO_ERR_NUMERIC = 4,          /* an algorithm failed to converge */
    DMIMO_ERR_IO = 5,               /* file could not be read or written */
    DMIMO_ERR_INTERNAL = 6          /* unexpected failure */
} dmimo_status;

const char* dmimo_status_name(dmimo_status status);

/* Message for the most recent failure on this thread; empty if none. The
 * pointer stays valid until the next failing call on the same thread. */
const char* dmimo_last_error(void);

const char* dmimo_version(void);

/* ---- scenarios ------------------------------------------------------- */

typedef struct dmimo_scenario dmimo_scenario;

/* A new scenario carrying the default configuration. */
dmimo_status dmimo_scenario_create(dmimo_scenario** out);
dmimo_status dmimo_scenario_load(const char* path, dmimo_scenario** out);
dmimo_status dmimo_scenario_save(const dmimo_scenario* scenario, const char* path);
void dmimo_scenario_free(dmimo_scenario* scenario);

/* Keys: cell_radius_m, ring_radius_m, antenna_count, user_count, exponent_v,
 * power_db, power_normalization (midpoint|none), trials, master_seed,
 * min_distance_m, threads, output_path. Values are parsed and checked
 * immediately. */
dmimo_status dmimo_scenario_set(dmimo_scenario* scenario, const char* key, const char* value);
dmimo_status dmimo_scenario_get(const dmimo_scenario* scenario, const char* key, char* buffer,
                                size_t buffer_size);

/* ---- low-level kernels ------------------------------------------------ */

/* Legendre function of the first kind P_nu(z), z >= 1. */
dmimo_status dmimo_legendre(double nu, double z, double* out);

/* Large-antenna interference kernel of a ring of radius r seen from user
 * radius ru with path-loss exponent v in [2, 6]. */
dmimo_status dmimo_circle_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                             double* out);

/* Elementary equivalent of the kernel; exponent must be 2, 4, or 6. */
dmimo_status dmimo_closed_form_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                                  double* out);

/* Finite-ring average (1/M) sum of d_m^{-v} over M equally spaced antennas. */
dmimo_status dmimo_riemann_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                              uint64_t antenna_count, double* out);

/* Constant relating the two elementary rate bounds; 1 at v = 2 and v = 4. */
dmimo_status dmimo_bound_gap_coefficient(double exponent_v, double* out);

typedef struct dmimo_radius_solution {
    double t0;
    double ratio;     /* optimal ring radius / cell radius */
    double r_opt_m;
    double residual;
    int at_exponent_limit; /* 1 when v == 2 (limiting solution) */
} dmimo_radius_solution;

/* Ring radius maximizing the closed-form cell-average bound. */
dmimo_status dmimo_solve_radius(double exponent_v, double cell_radius_m,
                                dmimo_radius_solution* out);

/* ---- rate reports ------------------------------------------------------ */

/* Which elementary bound sits above the rate. */
typedef enum dmimo_bound_ordering {
    DMIMO_B1_UPPER = 0, /* 2 < v < 4 */
    DMIMO_B1_LOWER = 1, /* 4 < v <= 6 */
    DMIMO_BOUNDS_EQUAL = 2 /* v = 2 or v = 4 */
} dmimo_bound_ordering;

typedef struct dmimo_user_rate_result {
    double user_radius_m;
    double p_eff;            /* normalized transmit power */
    double asymptotic_bits;  /* large-antenna limit of the rate */
    double kernel_i0;
    double legendre_argument;
    double b1_bits;
    double b2_bits;
    int ordering;            /* dmimo_bound_ordering */
    int has_mc;              /* 1 when the simulation ran (trials > 0) */
    double mc_bits;
    double mc_half_width_95;
    uint64_t mc_trials;
    uint64_t mc_resampled;
} dmimo_user_rate_result;

/* Asymptotic rate, bounds, and (when trials > 0) the simulated ergodic
 * zero-forcing rate for a user at the given radius. */
dmimo_status dmimo_rate_user(const dmimo_scenario* scenario, double user_radius_m,
                             dmimo_user_rate_result* out);

typedef struct dmimo_average_rate_result {
    double p_eff;
    double b1_average_bits;  /* closed-form cell average of bound b1 */
    double b2_average_bits;  /* closed-form cell average of bound b2 */
    double quadrature_bits;  /* numerical cell average of the asymptotic rate */
    int approx_ok;           /* closed forms trustworthy at this power */
    int ordering;            /* dmimo_bound_ordering */
    int has_mc;
    double mc_bits;
    double mc_half_width_95;
    uint64_t mc_trials;
    uint64_t mc_resampled;
} dmimo_average_rate_result;

dmimo_status dmimo_rate_average(const dmimo_scenario* scenario, dmimo_average_rate_result* out);

/* ---- parameter sweeps -------------------------------------------------- */

typedef enum dmimo_sweep_axis {
    DMIMO_AXIS_USER_RADIUS = 0,
    DMIMO_AXIS_RING_RADIUS = 1,
    DMIMO_AXIS_ANTENNAS = 2,
    DMIMO_AXIS_POWER_DB = 3
} dmimo_sweep_axis;

typedef enum dmimo_sweep_target {
    DMIMO_TARGET_USER = 0, /* per-user rate at a fixed user radius */
    DMIMO_TARGET_CELL = 1  /* cell-average rate */
} dmimo_sweep_target;

typedef struct dmimo_sweep_table dmimo_sweep_table;

typedef struct dmimo_sweep_row {
    double axis_value;
    int has_asymptotic;
    int has_b1;
    int has_b2;
    int has_mc;
    double asymptotic_bits;
    double b1_bits;
    double b2_bits;
    double mc_bits;
    double mc_half_width_95;
    char note[16]; /* "", "singular", or "mc_skipped" */
} dmimo_sweep_row;

/* Evaluates the target along `steps` grid points from start to stop;
 * user_radius_m fixes the studied user for per-user targets on other axes. */
dmimo_status dmimo_sweep_run(const dmimo_scenario* scenario, dmimo_sweep_axis axis,
                             double start, double stop, uint64_t steps,
                             dmimo_sweep_target target, double user_radius_m,
                             dmimo_sweep_table** out);
dmimo_status dmimo_sweep_row_count(const dmimo_sweep_table* table, uint64_t* out);
dmimo_status dmimo_sweep_get_row(const dmimo_sweep_table* table, uint64_t index,
                                 dmimo_sweep_row* out);

/* CSV rendering of the table. The _alloc variant hands over a NUL-terminated
 * buffer to release with dmimo_string_free. */
dmimo_status dmimo_sweep_csv_alloc(const dmimo_sweep_table* table, char** out);
dmimo_status dmimo_sweep_write_csv(const dmimo_sweep_table* table, const char* path);
void dmimo_sweep_free(dmimo_sweep_table* table);

void dmimo_string_free(char* text);

/* ---- validation --------------------------------------------------------- */

typedef struct dmimo_validation_options {
    uint64_t master_seed;
    unsigned threads;
    /* Multiplies the bound-gap coefficient inside the identity checks; 1.0
     * for a faithful run. Values != 1 must make those checks fail. */
    double coefficient_fault;
} dmimo_validation_options;

typedef struct dmimo_validation_report dmimo_validation_report;

/* Runs the full acceptance suite. `options` may be NULL for defaults
 * (seed 2016, 1 thread, no fault). */
dmimo_status dmimo_validate_run(const dmimo_validation_options* options,
                                dmimo_validation_report** out);
dmimo_status dmimo_validation_count(const dmimo_validation_report* report, uint64_t* out);
dmimo_status dmimo_validation_all_passed(const dmimo_validation_report* report, int* out);
/* One formatted line per criterion: "PASS C01 elementary-equivalence: ...". */
dmimo_status dmimo_validation_line(const dmimo_validation_report* report, uint64_t index,
                                   char* buffer, size_t buffer_size);
void dmimo_validation_free(dmimo_validation_report* report);

#ifdef __cplusplus
}
#endif

#endif /* DMIMO_H */
