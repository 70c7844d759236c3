// Command-line front end; talks to the library exclusively through the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <iterator>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "dmimo/dmimo.h"

namespace {

struct ScenarioDeleter {
    void operator()(dmimo_scenario* s) const { dmimo_scenario_free(s); }
};
using ScenarioPtr = std::unique_ptr<dmimo_scenario, ScenarioDeleter>;

bool check(dmimo_status status) {
    if (status == DMIMO_OK) return true;
    std::fprintf(stderr, "error (%s): %s\n", dmimo_status_name(status), dmimo_last_error());
    return false;
}

void print_kv(const char* key, double value) { std::printf("%s = %.12g\n", key, value); }
void print_kv(const char* key, unsigned long long value) {
    std::printf("%s = %llu\n", key, value);
}
void print_kv(const char* key, const char* value) { std::printf("%s = %s\n", key, value); }

const char* ordering_name(int ordering) {
    switch (ordering) {
        case DMIMO_B1_UPPER: return "b1_upper";
        case DMIMO_B1_LOWER: return "b1_lower";
        default: return "equal";
    }
}

std::string get_key(const dmimo_scenario* scenario, const char* key) {
    char buf[512];
    if (dmimo_scenario_get(scenario, key, buf, sizeof(buf)) != DMIMO_OK) return {};
    return buf;
}

void print_scenario_echo(const dmimo_scenario* scenario) {
    print_kv("trials", get_key(scenario, "trials").c_str());
    print_kv("master_seed", get_key(scenario, "master_seed").c_str());
}

int run_rate_user(const dmimo_scenario* scenario, double user_radius_m) {
    dmimo_user_rate_result res;
    if (!check(dmimo_rate_user(scenario, user_radius_m, &res))) return 1;
    print_kv("user_radius_m", res.user_radius_m);
    print_kv("p_eff", res.p_eff);
    print_kv("asymptotic_bits", res.asymptotic_bits);
    print_kv("kernel_i0", res.kernel_i0);
    print_kv("legendre_argument", res.legendre_argument);
    print_kv("b1_bits", res.b1_bits);
    print_kv("b2_bits", res.b2_bits);
    print_kv("ordering", ordering_name(res.ordering));
    print_scenario_echo(scenario);
    if (res.has_mc) {
        print_kv("mc_bits", res.mc_bits);
        print_kv("mc_half_width_95", res.mc_half_width_95);
        print_kv("mc_resampled", static_cast<unsigned long long>(res.mc_resampled));
    }
    return 0;
}

int run_rate_average(const dmimo_scenario* scenario) {
    dmimo_average_rate_result res;
    if (!check(dmimo_rate_average(scenario, &res))) return 1;
    print_kv("p_eff", res.p_eff);
    print_kv("b1_average_bits", res.b1_average_bits);
    print_kv("b2_average_bits", res.b2_average_bits);
    print_kv("quadrature_bits", res.quadrature_bits);
    print_kv("approx_ok", res.approx_ok ? "true" : "false");
    print_kv("ordering", ordering_name(res.ordering));
    print_kv("user_count", get_key(scenario, "user_count").c_str());
    print_scenario_echo(scenario);
    if (res.has_mc) {
        print_kv("mc_bits", res.mc_bits);
        print_kv("mc_half_width_95", res.mc_half_width_95);
        print_kv("mc_resampled", static_cast<unsigned long long>(res.mc_resampled));
    }
    return 0;
}

int run_optimize(const dmimo_scenario* scenario) {
    const double exponent_v = std::strtod(get_key(scenario, "exponent_v").c_str(), nullptr);
    const double cell_radius_m = std::strtod(get_key(scenario, "cell_radius_m").c_str(), nullptr);
    dmimo_radius_solution sol;
    if (!check(dmimo_solve_radius(exponent_v, cell_radius_m, &sol))) return 1;
    print_kv("exponent_v", exponent_v);
    print_kv("cell_radius_m", cell_radius_m);
    print_kv("t0", sol.t0);
    print_kv("ratio", sol.ratio);
    print_kv("r_opt_m", sol.r_opt_m);
    print_kv("residual", sol.residual);
    print_kv("at_exponent_limit", sol.at_exponent_limit ? "true" : "false");
    return 0;
}

int run_sweep(const dmimo_scenario* scenario, const std::string& axis_name, double from,
              double to, std::uint64_t steps, std::string target_name, double user_radius_m) {
    dmimo_sweep_axis axis;
    if (axis_name == "user_radius")
        axis = DMIMO_AXIS_USER_RADIUS;
    else if (axis_name == "ring_radius")
        axis = DMIMO_AXIS_RING_RADIUS;
    else if (axis_name == "antennas")
        axis = DMIMO_AXIS_ANTENNAS;
    else if (axis_name == "power_db")
        axis = DMIMO_AXIS_POWER_DB;
    else {
        std::fprintf(stderr,
                     "error: unknown axis '%s' (expected user_radius, ring_radius, antennas, "
                     "or power_db)\n",
                     axis_name.c_str());
        return 1;
    }
    if (target_name.empty()) target_name = axis == DMIMO_AXIS_USER_RADIUS ? "user" : "cell";
    dmimo_sweep_target target;
    if (target_name == "user")
        target = DMIMO_TARGET_USER;
    else if (target_name == "cell")
        target = DMIMO_TARGET_CELL;
    else {
        std::fprintf(stderr, "error: unknown target '%s' (expected user or cell)\n",
                     target_name.c_str());
        return 1;
    }

    dmimo_sweep_table* table = nullptr;
    if (!check(dmimo_sweep_run(scenario, axis, from, to, steps, target, user_radius_m, &table)))
        return 1;

    const std::string output_path = get_key(scenario, "output_path");
    int rc = 0;
    if (!output_path.empty()) {
        if (!check(dmimo_sweep_write_csv(table, output_path.c_str()))) rc = 1;
    } else {
        char* csv = nullptr;
        if (check(dmimo_sweep_csv_alloc(table, &csv))) {
            std::fputs(csv, stdout);
            dmimo_string_free(csv);
        } else {
            rc = 1;
        }
    }
    dmimo_sweep_free(table);
    return rc;
}

int run_validate(const dmimo_scenario* scenario, double coefficient_fault) {
    dmimo_validation_options opts;
    opts.master_seed = std::strtoull(get_key(scenario, "master_seed").c_str(), nullptr, 10);
    opts.threads = static_cast<unsigned>(
        std::strtoul(get_key(scenario, "threads").c_str(), nullptr, 10));
    opts.coefficient_fault = coefficient_fault;

    dmimo_validation_report* report = nullptr;
    if (!check(dmimo_validate_run(&opts, &report))) return 1;

    uint64_t count = 0;
    dmimo_validation_count(report, &count);
    for (uint64_t i = 0; i < count; ++i) {
        char line[2048];
        if (dmimo_validation_line(report, i, line, sizeof(line)) == DMIMO_OK)
            std::printf("%s\n", line);
    }
    int passed = 0;
    dmimo_validation_all_passed(report, &passed);
    dmimo_validation_free(report);
    print_kv("result", passed ? "pass" : "fail");
    return passed ? 0 : 2;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Uplink rate toolkit for a circularly distributed antenna array"};
    app.require_subcommand(0, 1);

    std::string config_path, write_config_path;
    app.add_option("--config", config_path, "Load a scenario config file first");
    app.add_option("--write-config", write_config_path,
                   "Write the effective configuration to this path");

    // Pass-through scenario settings; applied to the scenario after --config.
    const std::pair<const char*, const char*> pass_flags[] = {
        {"--cell-radius", "cell_radius_m"}, {"--ring-radius", "ring_radius_m"},
        {"--antennas", "antenna_count"},    {"--users", "user_count"},
        {"--exponent", "exponent_v"},       {"--power-db", "power_db"},
        {"--normalization", "power_normalization"},
        {"--trials", "trials"},             {"--seed", "master_seed"},
        {"--min-distance", "min_distance_m"},
        {"--threads", "threads"},           {"--output", "output_path"},
    };
    std::vector<std::string> pass_values(std::size(pass_flags));
    std::vector<CLI::Option*> pass_options(std::size(pass_flags));
    for (std::size_t i = 0; i < std::size(pass_flags); ++i) {
        pass_options[i] = app.add_option(pass_flags[i].first, pass_values[i],
                                         std::string("Scenario key ") + pass_flags[i].second);
    }
    const std::size_t kSeedFlagIndex = 8;  // --seed

    auto* cmd_rate_user = app.add_subcommand("rate-user", "Rate of one user at a given radius");
    cmd_rate_user->fallthrough();
    double user_radius_m = 300.0;
    cmd_rate_user->add_option("--user-radius", user_radius_m, "User distance from the centre [m]");

    auto* cmd_rate_average = app.add_subcommand("rate-average", "Cell-average rate");
    cmd_rate_average->fallthrough();

    auto* cmd_sweep = app.add_subcommand("sweep", "Evaluate rates along one swept parameter");
    cmd_sweep->fallthrough();
    std::string axis_name, target_name;
    double sweep_from = 0.0, sweep_to = 0.0;
    std::uint64_t sweep_steps = 11;
    double sweep_user_radius_m = 300.0;
    cmd_sweep->add_option("--axis", axis_name, "user_radius, ring_radius, antennas, or power_db")
        ->required();
    cmd_sweep->add_option("--from", sweep_from, "First grid value")->required();
    cmd_sweep->add_option("--to", sweep_to, "Last grid value")->required();
    cmd_sweep->add_option("--steps", sweep_steps, "Number of grid points");
    cmd_sweep->add_option("--target", target_name,
                          "user or cell (default: user for the user_radius axis, else cell)");
    cmd_sweep->add_option("--user-radius", sweep_user_radius_m,
                          "Studied user's radius for per-user sweeps [m]");

    auto* cmd_optimize = app.add_subcommand("optimize", "Ring radius maximizing the cell average");
    cmd_optimize->fallthrough();

    auto* cmd_validate = app.add_subcommand("validate", "Run the acceptance criteria");
    cmd_validate->fallthrough();
    double coefficient_fault = 1.0;
    cmd_validate->add_option("--inject-coefficient-fault", coefficient_fault,
                             "Self-test hook: scale the bound-gap coefficient (1 = off)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    dmimo_scenario* raw = nullptr;
    if (!config_path.empty()) {
        if (!check(dmimo_scenario_load(config_path.c_str(), &raw))) return 1;
    } else {
        if (!check(dmimo_scenario_create(&raw))) return 1;
    }
    ScenarioPtr scenario(raw);

    // Precedence: flag > DMIMO_SEED environment > config file > default.
    if (pass_options[kSeedFlagIndex]->count() == 0) {
        if (const char* env_seed = std::getenv("DMIMO_SEED")) {
            if (!check(dmimo_scenario_set(scenario.get(), "master_seed", env_seed))) return 1;
        }
    }
    for (std::size_t i = 0; i < std::size(pass_flags); ++i) {
        if (pass_options[i]->count() == 0) continue;
        if (!check(dmimo_scenario_set(scenario.get(), pass_flags[i].second,
                                      pass_values[i].c_str())))
            return 1;
    }

    if (!write_config_path.empty()) {
        if (!check(dmimo_scenario_save(scenario.get(), write_config_path.c_str()))) return 1;
    }

    if (app.got_subcommand(cmd_rate_user)) return run_rate_user(scenario.get(), user_radius_m);
    if (app.got_subcommand(cmd_rate_average)) return run_rate_average(scenario.get());
    if (app.got_subcommand(cmd_sweep))
        return run_sweep(scenario.get(), axis_name, sweep_from, sweep_to, sweep_steps,
                         target_name, sweep_user_radius_m);
    if (app.got_subcommand(cmd_optimize)) return run_optimize(scenario.get());
    if (app.got_subcommand(cmd_validate)) return run_validate(scenario.get(), coefficient_fault);

    if (write_config_path.empty()) {
        std::fputs(app.help().c_str(), stderr);
        return 1;
    }
    return 0;
}
