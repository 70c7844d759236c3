#include "dmimo/dmimo.h"

#include <cstdio>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "average.hpp"
#include "config.hpp"
#include "error.hpp"
#include "optimizer.hpp"
#include "reports.hpp"
#include "sweep.hpp"
#include "validation.hpp"

struct dmimo_scenario {
    dmimo::ScenarioConfig cfg;
};

struct dmimo_sweep_table {
    std::vector<dmimo::SweepRow> rows;
    dmimo::SweepAxis axis = dmimo::SweepAxis::user_radius;
};

struct dmimo_validation_report {
    std::vector<dmimo::CriterionResult> results;
};

namespace {

thread_local std::string g_last_error;

dmimo_status fail(dmimo_status status, const std::string& message) {
    g_last_error = message;
    return status;
}

dmimo_status status_from(dmimo::ErrorCode code) {
    switch (code) {
        case dmimo::ErrorCode::invalid_argument: return DMIMO_ERR_INVALID_ARGUMENT;
        case dmimo::ErrorCode::domain: return DMIMO_ERR_DOMAIN;
        case dmimo::ErrorCode::singular: return DMIMO_ERR_SINGULAR;
        case dmimo::ErrorCode::numeric: return DMIMO_ERR_NUMERIC;
        case dmimo::ErrorCode::io: return DMIMO_ERR_IO;
    }
    return DMIMO_ERR_INTERNAL;
}

template <typename Fn>
dmimo_status guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const dmimo::Error& e) {
        return fail(status_from(e.code()), e.what());
    } catch (const std::bad_alloc&) {
        return fail(DMIMO_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(DMIMO_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(DMIMO_ERR_INTERNAL, "unknown error");
    }
}

dmimo_status require(const void* ptr, const char* what) {
    if (ptr) return DMIMO_OK;
    return fail(DMIMO_ERR_INVALID_ARGUMENT, std::string(what) + " must not be NULL");
}

dmimo_status copy_string(const std::string& text, char* buffer, size_t buffer_size) {
    if (!buffer) return fail(DMIMO_ERR_INVALID_ARGUMENT, "buffer must not be NULL");
    if (buffer_size < text.size() + 1)
        return fail(DMIMO_ERR_INVALID_ARGUMENT,
                    "buffer too small: need " + std::to_string(text.size() + 1) + " bytes");
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    return DMIMO_OK;
}

int ordering_to_int(dmimo::BoundOrdering ordering) {
    switch (ordering) {
        case dmimo::BoundOrdering::b1_upper: return DMIMO_B1_UPPER;
        case dmimo::BoundOrdering::b1_lower: return DMIMO_B1_LOWER;
        case dmimo::BoundOrdering::equal: return DMIMO_BOUNDS_EQUAL;
    }
    return DMIMO_BOUNDS_EQUAL;
}

} // namespace

extern "C" {

const char* dmimo_status_name(dmimo_status status) {
    switch (status) {
        case DMIMO_OK: return "ok";
        case DMIMO_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case DMIMO_ERR_DOMAIN: return "domain";
        case DMIMO_ERR_SINGULAR: return "singular";
        case DMIMO_ERR_NUMERIC: return "numeric";
        case DMIMO_ERR_IO: return "io";
        case DMIMO_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* dmimo_last_error(void) { return g_last_error.c_str(); }

const char* dmimo_version(void) { return "1.0.0"; }

dmimo_status dmimo_scenario_create(dmimo_scenario** out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        *out = new dmimo_scenario{};
        return DMIMO_OK;
    });
}

dmimo_status dmimo_scenario_load(const char* path, dmimo_scenario** out) {
    if (dmimo_status st = require(path, "path"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        auto scenario = new dmimo_scenario{};
        try {
            scenario->cfg = dmimo::load_config(path);
        } catch (...) {
            delete scenario;
            throw;
        }
        *out = scenario;
        return DMIMO_OK;
    });
}

dmimo_status dmimo_scenario_save(const dmimo_scenario* scenario, const char* path) {
    if (dmimo_status st = require(scenario, "scenario"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(path, "path"); st != DMIMO_OK) return st;
    return guarded([&] {
        dmimo::save_config(scenario->cfg, path);
        return DMIMO_OK;
    });
}

void dmimo_scenario_free(dmimo_scenario* scenario) { delete scenario; }

dmimo_status dmimo_scenario_set(dmimo_scenario* scenario, const char* key, const char* value) {
    if (dmimo_status st = require(scenario, "scenario"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(key, "key"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(value, "value"); st != DMIMO_OK) return st;
    return guarded([&] {
        dmimo::config_set(scenario->cfg, key, value);
        return DMIMO_OK;
    });
}

dmimo_status dmimo_scenario_get(const dmimo_scenario* scenario, const char* key, char* buffer,
                                size_t buffer_size) {
    if (dmimo_status st = require(scenario, "scenario"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(key, "key"); st != DMIMO_OK) return st;
    return guarded([&] {
        return copy_string(dmimo::config_get(scenario->cfg, key), buffer, buffer_size);
    });
}

dmimo_status dmimo_legendre(double nu, double z, double* out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        *out = dmimo::legendre_halfint(nu, z);
        return DMIMO_OK;
    });
}

dmimo_status dmimo_circle_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                             double* out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        *out = dmimo::circle_i0(ring_radius_m, user_radius_m, exponent_v);
        return DMIMO_OK;
    });
}

dmimo_status dmimo_closed_form_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                                  double* out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        *out = dmimo::closed_form_i0(ring_radius_m, user_radius_m, exponent_v);
        return DMIMO_OK;
    });
}

dmimo_status dmimo_riemann_i0(double ring_radius_m, double user_radius_m, double exponent_v,
                              uint64_t antenna_count, double* out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        *out = dmimo::riemann_i0(ring_radius_m, user_radius_m, exponent_v,
                                 static_cast<std::size_t>(antenna_count));
        return DMIMO_OK;
    });
}

dmimo_status dmimo_bound_gap_coefficient(double exponent_v, double* out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        *out = dmimo::bound_gap_coefficient(exponent_v);
        return DMIMO_OK;
    });
}

dmimo_status dmimo_solve_radius(double exponent_v, double cell_radius_m,
                                dmimo_radius_solution* out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        const dmimo::RadiusSolution s = dmimo::solve_radius(exponent_v, cell_radius_m);
        out->t0 = s.t0;
        out->ratio = s.ratio;
        out->r_opt_m = s.r_opt_m;
        out->residual = s.residual;
        out->at_exponent_limit = s.at_exponent_limit ? 1 : 0;
        return DMIMO_OK;
    });
}

dmimo_status dmimo_rate_user(const dmimo_scenario* scenario, double user_radius_m,
                             dmimo_user_rate_result* out) {
    if (dmimo_status st = require(scenario, "scenario"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        const dmimo::UserRateReport rep = dmimo::rate_user_report(scenario->cfg, user_radius_m);
        *out = dmimo_user_rate_result{};
        out->user_radius_m = rep.user_radius_m;
        out->p_eff = rep.p_eff;
        out->asymptotic_bits = rep.asymptotic.rate_bits;
        out->kernel_i0 = rep.asymptotic.i0;
        out->legendre_argument = rep.asymptotic.z;
        out->b1_bits = rep.bounds.b1_bits;
        out->b2_bits = rep.bounds.b2_bits;
        out->ordering = ordering_to_int(rep.bounds.ordering);
        if (rep.mc) {
            out->has_mc = 1;
            out->mc_bits = rep.mc->mean_bits;
            out->mc_half_width_95 = rep.mc->half_width_95;
            out->mc_trials = rep.mc->trials_used;
            out->mc_resampled = rep.mc->resampled;
        }
        return DMIMO_OK;
    });
}

dmimo_status dmimo_rate_average(const dmimo_scenario* scenario, dmimo_average_rate_result* out) {
    if (dmimo_status st = require(scenario, "scenario"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        const dmimo::AverageRateReport rep = dmimo::rate_average_report(scenario->cfg);
        *out = dmimo_average_rate_result{};
        out->p_eff = rep.p_eff;
        out->b1_average_bits = rep.b1_average_bits;
        out->b2_average_bits = rep.b2_average_bits;
        out->quadrature_bits = rep.quadrature_bits;
        out->approx_ok = rep.approx_ok ? 1 : 0;
        out->ordering = ordering_to_int(rep.ordering);
        if (rep.mc) {
            out->has_mc = 1;
            out->mc_bits = rep.mc->mean_bits;
            out->mc_half_width_95 = rep.mc->half_width_95;
            out->mc_trials = rep.mc->trials_used;
            out->mc_resampled = rep.mc->resampled;
        }
        return DMIMO_OK;
    });
}

dmimo_status dmimo_sweep_run(const dmimo_scenario* scenario, dmimo_sweep_axis axis, double start,
                             double stop, uint64_t steps, dmimo_sweep_target target,
                             double user_radius_m, dmimo_sweep_table** out) {
    if (dmimo_status st = require(scenario, "scenario"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        dmimo::SweepAxis core_axis;
        switch (axis) {
            case DMIMO_AXIS_USER_RADIUS: core_axis = dmimo::SweepAxis::user_radius; break;
            case DMIMO_AXIS_RING_RADIUS: core_axis = dmimo::SweepAxis::ring_radius; break;
            case DMIMO_AXIS_ANTENNAS: core_axis = dmimo::SweepAxis::antennas; break;
            case DMIMO_AXIS_POWER_DB: core_axis = dmimo::SweepAxis::power_db; break;
            default:
                return fail(DMIMO_ERR_INVALID_ARGUMENT, "unknown sweep axis");
        }
        dmimo::SweepTarget core_target;
        switch (target) {
            case DMIMO_TARGET_USER: core_target = dmimo::SweepTarget::per_user; break;
            case DMIMO_TARGET_CELL: core_target = dmimo::SweepTarget::cell_average; break;
            default:
                return fail(DMIMO_ERR_INVALID_ARGUMENT, "unknown sweep target");
        }
        auto table = new dmimo_sweep_table{};
        try {
            table->axis = core_axis;
            table->rows = dmimo::run_sweep(scenario->cfg, core_axis, start, stop,
                                           static_cast<std::size_t>(steps), core_target,
                                           user_radius_m);
        } catch (...) {
            delete table;
            throw;
        }
        *out = table;
        return DMIMO_OK;
    });
}

dmimo_status dmimo_sweep_row_count(const dmimo_sweep_table* table, uint64_t* out) {
    if (dmimo_status st = require(table, "table"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    *out = table->rows.size();
    return DMIMO_OK;
}

dmimo_status dmimo_sweep_get_row(const dmimo_sweep_table* table, uint64_t index,
                                 dmimo_sweep_row* out) {
    if (dmimo_status st = require(table, "table"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    if (index >= table->rows.size())
        return fail(DMIMO_ERR_INVALID_ARGUMENT,
                    "row index " + std::to_string(index) + " out of range");
    const dmimo::SweepRow& row = table->rows[static_cast<std::size_t>(index)];
    *out = dmimo_sweep_row{};
    out->axis_value = row.axis_value;
    if (row.asymptotic_bits) {
        out->has_asymptotic = 1;
        out->asymptotic_bits = *row.asymptotic_bits;
    }
    if (row.b1_bits) {
        out->has_b1 = 1;
        out->b1_bits = *row.b1_bits;
    }
    if (row.b2_bits) {
        out->has_b2 = 1;
        out->b2_bits = *row.b2_bits;
    }
    if (row.mc_bits) {
        out->has_mc = 1;
        out->mc_bits = *row.mc_bits;
        out->mc_half_width_95 = row.mc_half_width_95 ? *row.mc_half_width_95 : 0.0;
    }
    std::snprintf(out->note, sizeof(out->note), "%s", row.note.c_str());
    return DMIMO_OK;
}

dmimo_status dmimo_sweep_csv_alloc(const dmimo_sweep_table* table, char** out) {
    if (dmimo_status st = require(table, "table"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        const std::string csv = dmimo::sweep_csv(table->rows, table->axis);
        char* buffer = new char[csv.size() + 1];
        std::memcpy(buffer, csv.c_str(), csv.size() + 1);
        *out = buffer;
        return DMIMO_OK;
    });
}

dmimo_status dmimo_sweep_write_csv(const dmimo_sweep_table* table, const char* path) {
    if (dmimo_status st = require(table, "table"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(path, "path"); st != DMIMO_OK) return st;
    return guarded([&] {
        const std::string csv = dmimo::sweep_csv(table->rows, table->axis);
        std::FILE* f = std::fopen(path, "wb");
        if (!f) return fail(DMIMO_ERR_IO, std::string("cannot open '") + path + "' for writing");
        const size_t written = std::fwrite(csv.data(), 1, csv.size(), f);
        const int closed = std::fclose(f);
        if (written != csv.size() || closed != 0)
            return fail(DMIMO_ERR_IO, std::string("failed writing CSV to '") + path + "'");
        return DMIMO_OK;
    });
}

void dmimo_sweep_free(dmimo_sweep_table* table) { delete table; }

void dmimo_string_free(char* text) { delete[] text; }

dmimo_status dmimo_validate_run(const dmimo_validation_options* options,
                                dmimo_validation_report** out) {
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    return guarded([&] {
        dmimo::ValidationOptions opts;
        if (options) {
            opts.master_seed = options->master_seed;
            opts.threads = options->threads;
            opts.coefficient_fault = options->coefficient_fault;
        }
        auto report = new dmimo_validation_report{};
        try {
            report->results = dmimo::run_validation(opts);
        } catch (...) {
            delete report;
            throw;
        }
        *out = report;
        return DMIMO_OK;
    });
}

dmimo_status dmimo_validation_count(const dmimo_validation_report* report, uint64_t* out) {
    if (dmimo_status st = require(report, "report"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    *out = report->results.size();
    return DMIMO_OK;
}

dmimo_status dmimo_validation_all_passed(const dmimo_validation_report* report, int* out) {
    if (dmimo_status st = require(report, "report"); st != DMIMO_OK) return st;
    if (dmimo_status st = require(out, "out"); st != DMIMO_OK) return st;
    *out = dmimo::all_passed(report->results) ? 1 : 0;
    return DMIMO_OK;
}

dmimo_status dmimo_validation_line(const dmimo_validation_report* report, uint64_t index,
                                   char* buffer, size_t buffer_size) {
    if (dmimo_status st = require(report, "report"); st != DMIMO_OK) return st;
    if (index >= report->results.size())
        return fail(DMIMO_ERR_INVALID_ARGUMENT,
                    "criterion index " + std::to_string(index) + " out of range");
    return guarded([&] {
        return copy_string(dmimo::format_criterion(report->results[static_cast<std::size_t>(index)]),
                           buffer, buffer_size);
    });
}

void dmimo_validation_free(dmimo_validation_report* report) { delete report; }

} // extern "C"
