// Exercises the shared-library C interface end to end: handle lifecycle,
// error reporting, and a few frozen numerical anchors routed through the ABI.
#undef NDEBUG  // the checks below must survive release builds
#include <assert.h>
#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "dmimo/dmimo.h"

static int close_rel(double a, double b, double rel) {
    const double scale = fabs(b) > 1.0 ? fabs(b) : 1.0;
    return fabs(a - b) <= rel * scale;
}

static void test_status_and_version(void) {
    assert(strcmp(dmimo_status_name(DMIMO_OK), "ok") == 0);
    assert(strcmp(dmimo_status_name(DMIMO_ERR_INVALID_ARGUMENT), "invalid_argument") == 0);
    assert(strcmp(dmimo_status_name(DMIMO_ERR_DOMAIN), "domain") == 0);
    assert(strcmp(dmimo_status_name(DMIMO_ERR_SINGULAR), "singular") == 0);
    assert(strcmp(dmimo_status_name(DMIMO_ERR_NUMERIC), "numeric") == 0);
    assert(strcmp(dmimo_status_name(DMIMO_ERR_IO), "io") == 0);
    assert(strcmp(dmimo_status_name(DMIMO_ERR_INTERNAL), "internal") == 0);
    assert(strcmp(dmimo_version(), "1.0.0") == 0);
}

static void test_scenario_roundtrip(void) {
    dmimo_scenario* sc = NULL;
    assert(dmimo_scenario_create(&sc) == DMIMO_OK);
    assert(sc != NULL);

    char buf[128];
    assert(dmimo_scenario_get(sc, "ring_radius_m", buf, sizeof buf) == DMIMO_OK);
    assert(strcmp(buf, "500") == 0);
    assert(dmimo_scenario_set(sc, "ring_radius_m", "450") == DMIMO_OK);
    assert(dmimo_scenario_get(sc, "ring_radius_m", buf, sizeof buf) == DMIMO_OK);
    assert(strcmp(buf, "450") == 0);

    assert(dmimo_scenario_set(sc, "no_such_key", "1") == DMIMO_ERR_INVALID_ARGUMENT);
    assert(strlen(dmimo_last_error()) > 0);
    assert(dmimo_scenario_set(sc, "exponent_v", "9") == DMIMO_ERR_INVALID_ARGUMENT);

    /* A too-small buffer must fail without writing past the end. */
    char tiny[2];
    assert(dmimo_scenario_get(sc, "ring_radius_m", tiny, sizeof tiny) ==
           DMIMO_ERR_INVALID_ARGUMENT);

    const char* path = "capi_scenario_roundtrip.cfg";
    assert(dmimo_scenario_save(sc, path) == DMIMO_OK);
    dmimo_scenario* back = NULL;
    assert(dmimo_scenario_load(path, &back) == DMIMO_OK);
    assert(dmimo_scenario_get(back, "ring_radius_m", buf, sizeof buf) == DMIMO_OK);
    assert(strcmp(buf, "450") == 0);
    dmimo_scenario_free(back);
    dmimo_scenario_free(sc);
    remove(path);

    dmimo_scenario* missing = NULL;
    assert(dmimo_scenario_load("no/such/file.cfg", &missing) == DMIMO_ERR_IO);
    assert(missing == NULL);
}

static void test_kernels(void) {
    double out = 0.0;
    assert(dmimo_circle_i0(500.0, 300.0, 3.6, &out) == DMIMO_OK);
    assert(close_rel(out, 7.5508885596694252207e-10, 1e-10));

    assert(dmimo_legendre(0.8, 2.125, &out) == DMIMO_OK);
    assert(close_rel(out, 1.7596003088349842228, 1e-10));
    assert(dmimo_legendre(0.8, 0.5, &out) == DMIMO_ERR_DOMAIN);

    assert(dmimo_closed_form_i0(500.0, 300.0, 4.0, &out) == DMIMO_OK);
    assert(close_rel(out, 8.30078125e-11, 1e-12));
    assert(dmimo_closed_form_i0(500.0, 300.0, 3.6, &out) == DMIMO_ERR_INVALID_ARGUMENT);

    assert(dmimo_riemann_i0(500.0, 300.0, 2.0, 2, &out) == DMIMO_OK);
    assert(close_rel(out, 1.328125e-5, 1e-14));

    assert(dmimo_bound_gap_coefficient(6.0, &out) == DMIMO_OK);
    assert(close_rel(out, 1.5, 1e-12));

    assert(dmimo_circle_i0(500.0, 500.0, 3.6, &out) == DMIMO_ERR_SINGULAR);
}

static void test_solver(void) {
    dmimo_radius_solution sol;
    assert(dmimo_solve_radius(3.6, 1000.0, &sol) == DMIMO_OK);
    assert(close_rel(sol.ratio, 0.759441179754, 1e-9));
    assert(close_rel(sol.r_opt_m, 759.441179754, 1e-9));
    assert(sol.residual <= 1e-12);
    assert(sol.at_exponent_limit == 0);

    assert(dmimo_solve_radius(2.0, 1000.0, &sol) == DMIMO_OK);
    assert(sol.at_exponent_limit == 1);
    assert(dmimo_solve_radius(1.5, 1000.0, &sol) == DMIMO_ERR_DOMAIN);
}

static void test_rate_reports(void) {
    dmimo_scenario* sc = NULL;
    assert(dmimo_scenario_create(&sc) == DMIMO_OK);
    assert(dmimo_scenario_set(sc, "trials", "0") == DMIMO_OK);

    dmimo_user_rate_result user;
    assert(dmimo_rate_user(sc, 300.0, &user) == DMIMO_OK);
    assert(user.has_mc == 0);
    assert(close_rel(user.asymptotic_bits, 13.5250580762284, 1e-6));
    assert(user.ordering == DMIMO_B1_UPPER);
    assert(user.b1_bits >= user.asymptotic_bits);
    assert(user.b2_bits <= user.asymptotic_bits);

    assert(dmimo_rate_user(sc, 500.0, &user) == DMIMO_ERR_SINGULAR);

    assert(dmimo_scenario_set(sc, "antenna_count", "64") == DMIMO_OK);
    assert(dmimo_scenario_set(sc, "user_count", "4") == DMIMO_OK);
    assert(dmimo_scenario_set(sc, "trials", "64") == DMIMO_OK);
    assert(dmimo_rate_user(sc, 300.0, &user) == DMIMO_OK);
    assert(user.has_mc == 1);
    assert(user.mc_trials == 64);
    assert(user.mc_half_width_95 > 0.0);

    dmimo_average_rate_result avg;
    assert(dmimo_scenario_set(sc, "trials", "0") == DMIMO_OK);
    assert(dmimo_scenario_set(sc, "antenna_count", "300") == DMIMO_OK);
    assert(dmimo_rate_average(sc, &avg) == DMIMO_OK);
    assert(avg.has_mc == 0);
    assert(avg.approx_ok == 1);
    assert(close_rel(avg.b1_average_bits, 13.3788490774644852, 1e-9));
    assert(close_rel(avg.b2_average_bits, 13.299590102442973, 1e-9));
    assert(avg.quadrature_bits < avg.b1_average_bits + 0.01);
    assert(avg.quadrature_bits > avg.b2_average_bits - 0.01);

    dmimo_scenario_free(sc);
}

static void test_sweep(void) {
    dmimo_scenario* sc = NULL;
    assert(dmimo_scenario_create(&sc) == DMIMO_OK);
    assert(dmimo_scenario_set(sc, "trials", "0") == DMIMO_OK);

    dmimo_sweep_table* table = NULL;
    assert(dmimo_sweep_run(sc, DMIMO_AXIS_USER_RADIUS, 100.0, 400.0, 4, DMIMO_TARGET_USER,
                           300.0, &table) == DMIMO_OK);
    uint64_t rows = 0;
    assert(dmimo_sweep_row_count(table, &rows) == DMIMO_OK);
    assert(rows == 4);

    dmimo_sweep_row row;
    assert(dmimo_sweep_get_row(table, 0, &row) == DMIMO_OK);
    assert(row.axis_value == 100.0);
    assert(row.has_asymptotic == 1);
    assert(row.has_mc == 0);
    assert(strcmp(row.note, "") == 0);
    assert(dmimo_sweep_get_row(table, 4, &row) == DMIMO_ERR_INVALID_ARGUMENT);

    char* csv = NULL;
    assert(dmimo_sweep_csv_alloc(table, &csv) == DMIMO_OK);
    assert(csv != NULL);
    assert(strncmp(csv, "user_radius_m,", 14) == 0);

    const char* path = "capi_sweep.csv";
    assert(dmimo_sweep_write_csv(table, path) == DMIMO_OK);
    FILE* f = fopen(path, "rb");
    assert(f != NULL);
    char file_buf[4096];
    const size_t n = fread(file_buf, 1, sizeof file_buf, f);
    fclose(f);
    remove(path);
    assert(n == strlen(csv));
    assert(memcmp(file_buf, csv, n) == 0);

    dmimo_string_free(csv);
    dmimo_sweep_free(table);

    /* cell-average target cannot vary the user radius */
    assert(dmimo_sweep_run(sc, DMIMO_AXIS_USER_RADIUS, 100.0, 400.0, 4, DMIMO_TARGET_CELL,
                           0.0, &table) == DMIMO_ERR_INVALID_ARGUMENT);
    dmimo_scenario_free(sc);
}

static void test_null_arguments(void) {
    double out = 0.0;
    dmimo_user_rate_result user;
    assert(dmimo_rate_user(NULL, 300.0, &user) == DMIMO_ERR_INVALID_ARGUMENT);
    assert(dmimo_circle_i0(500.0, 300.0, 3.6, NULL) == DMIMO_ERR_INVALID_ARGUMENT);
    assert(dmimo_scenario_create(NULL) == DMIMO_ERR_INVALID_ARGUMENT);
    uint64_t count = 0;
    assert(dmimo_validation_count(NULL, &count) == DMIMO_ERR_INVALID_ARGUMENT);
    assert(dmimo_legendre(0.8, 2.125, &out) == DMIMO_OK); /* library still usable */
    (void)out;
}

int main(void) {
    test_status_and_version();
    test_scenario_roundtrip();
    test_kernels();
    test_solver();
    test_rate_reports();
    test_sweep();
    test_null_arguments();
    printf("capi tests passed\n");
    return 0;
}
