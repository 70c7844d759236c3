#include "sweep.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "error.hpp"
#include "reports.hpp"

namespace dmimo {

SweepAxis parse_sweep_axis(const std::string& name) {
    if (name == "user_radius") return SweepAxis::user_radius;
    if (name == "ring_radius") return SweepAxis::ring_radius;
    if (name == "antennas") return SweepAxis::antennas;
    if (name == "power_db") return SweepAxis::power_db;
    throw Error(ErrorCode::invalid_argument,
                "unknown sweep axis '" + name +
                    "' (expected user_radius, ring_radius, antennas, or power_db)");
}

SweepTarget parse_sweep_target(const std::string& name) {
    if (name == "user") return SweepTarget::per_user;
    if (name == "cell") return SweepTarget::cell_average;
    throw Error(ErrorCode::invalid_argument,
                "unknown sweep target '" + name + "' (expected user or cell)");
}

std::string sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::user_radius: return "user_radius";
        case SweepAxis::ring_radius: return "ring_radius";
        case SweepAxis::antennas: return "antennas";
        case SweepAxis::power_db: return "power_db";
    }
    throw Error(ErrorCode::invalid_argument, "invalid sweep axis");
}

std::string sweep_target_name(SweepTarget target) {
    return target == SweepTarget::per_user ? "user" : "cell";
}

namespace {

std::string axis_column(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::user_radius: return "user_radius_m";
        case SweepAxis::ring_radius: return "ring_radius_m";
        case SweepAxis::antennas: return "antenna_count";
        case SweepAxis::power_db: return "power_db";
    }
    throw Error(ErrorCode::invalid_argument, "invalid sweep axis");
}

std::vector<double> axis_grid(SweepAxis axis, double start, double stop, std::size_t steps) {
    if (!(std::isfinite(start) && std::isfinite(stop)))
        throw Error(ErrorCode::invalid_argument, "sweep range must be finite");
    if (steps == 0)
        throw Error(ErrorCode::invalid_argument, "sweep needs at least one step");
    std::vector<double> values;
    values.reserve(steps);
    if (steps == 1) {
        values.push_back(start);
    } else {
        const double span = (stop - start) / static_cast<double>(steps - 1);
        for (std::size_t i = 0; i < steps; ++i)
            values.push_back(start + span * static_cast<double>(i));
    }
    if (axis == SweepAxis::antennas) {
        // Integer axis: round, drop non-positives, and deduplicate.
        std::vector<double> rounded;
        rounded.reserve(values.size());
        for (double x : values) {
            const double r = std::round(x);
            if (r < 1.0) continue;
            if (!rounded.empty() && rounded.back() == r) continue;
            rounded.push_back(r);
        }
        if (rounded.empty())
            throw Error(ErrorCode::invalid_argument, "antenna sweep produced no valid counts");
        return rounded;
    }
    return values;
}

std::string format_cell(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", x);
    return buf;
}

} // namespace

std::vector<SweepRow> run_sweep(const ScenarioConfig& cfg, SweepAxis axis, double start,
                                double stop, std::size_t steps, SweepTarget target,
                                double user_radius_m) {
    validate_config(cfg);
    if (target == SweepTarget::cell_average && axis == SweepAxis::user_radius)
        throw Error(ErrorCode::invalid_argument,
                    "the cell-average target does not vary with user radius");

    const std::vector<double> grid = axis_grid(axis, start, stop, steps);
    std::vector<SweepRow> rows;
    rows.reserve(grid.size());

    for (double value : grid) {
        ScenarioConfig point = cfg;
        double ru = user_radius_m;
        switch (axis) {
            case SweepAxis::user_radius: ru = value; break;
            case SweepAxis::ring_radius: point.ring_radius_m = value; break;
            case SweepAxis::antennas:
                point.antenna_count = static_cast<std::size_t>(value);
                break;
            case SweepAxis::power_db: point.power_db = value; break;
        }

        SweepRow row;
        row.axis_value = value;
        try {
            if (target == SweepTarget::per_user) {
                // Analytic columns first so an MC-only failure can keep them.
                ScenarioConfig analytic_only = point;
                analytic_only.trials = 0;
                const UserRateReport base = rate_user_report(analytic_only, ru);
                row.asymptotic_bits = base.asymptotic.rate_bits;
                row.b1_bits = base.bounds.b1_bits;
                row.b2_bits = base.bounds.b2_bits;
                if (point.trials > 0) {
                    try {
                        const UserRateReport full = rate_user_report(point, ru);
                        if (full.mc) {
                            row.mc_bits = full.mc->mean_bits;
                            row.mc_half_width_95 = full.mc->half_width_95;
                        }
                    } catch (const Error& e) {
                        if (e.code() != ErrorCode::singular && e.code() != ErrorCode::numeric)
                            throw;
                        row.note = "mc_skipped";
                    }
                }
            } else {
                const AverageRateReport report = rate_average_report(point);
                row.asymptotic_bits = report.quadrature_bits;
                row.b1_bits = report.b1_average_bits;
                row.b2_bits = report.b2_average_bits;
                if (report.mc) {
                    row.mc_bits = report.mc->mean_bits;
                    row.mc_half_width_95 = report.mc->half_width_95;
                }
            }
        } catch (const Error& e) {
            if (e.code() != ErrorCode::singular) throw;
            row.note = "singular";
        }
        rows.push_back(row);
    }
    return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, SweepAxis axis) {
    std::ostringstream out;
    out << axis_column(axis)
        << ",asymptotic_bits,b1_bits,b2_bits,mc_bits,mc_half_width_95,note\n";
    for (const SweepRow& row : rows) {
        out << format_cell(row.axis_value) << ',';
        const std::optional<double> cells[] = {row.asymptotic_bits, row.b1_bits, row.b2_bits,
                                               row.mc_bits, row.mc_half_width_95};
        for (const std::optional<double>& cell : cells) {
            if (cell) out << format_cell(*cell);
            out << ',';
        }
        out << row.note << '\n';
    }
    return out.str();
}

} // namespace dmimo
