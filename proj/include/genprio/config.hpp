#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "genprio/bench.hpp"
#include "genprio/grid.hpp"

namespace genprio {

/// Settings shared by the CLI subcommands. Every field is optional so that a
/// config file and command-line flags can be layered (flags applied last).
struct RunConfig {
    std::optional<std::filesystem::path> data_dir;
    std::optional<std::filesystem::path> output_dir;
    std::optional<std::vector<Method>> methods;
    std::optional<int> window_start;
    std::optional<int> window_end;
    std::optional<std::filesystem::path> stage_config;
    std::optional<bool> rows_per_stage;
    std::optional<bool> parallel_methods;

    std::optional<double> solar_pct;
    std::optional<double> hydro_pct;
    std::optional<double> wind_pct;
    std::optional<double> other_pct;
    std::optional<double> min_renewable_pct;

    std::optional<double> pf_tolerance;
    std::optional<int> pf_max_iterations;
    std::optional<double> loss_adder;
    std::optional<bool> enforce_branch_ratings;
    std::optional<double> milp_gap;
    std::optional<double> milp_time_limit;

    /// Fields set in `over` replace the ones here.
    void merge(const RunConfig& over);
    /// Range and consistency checks; throws ConfigError.
    void validate() const;
    /// Bench options with goal, solver and harness settings applied. Stage
    /// handling is left to the caller.
    BenchOptions bench_options() const;
};

/// `key = value` lines; `#` starts a comment. Unknown keys and malformed
/// values raise ConfigError naming the line.
RunConfig parse_run_config(const std::string& text, const std::string& source = "config");
RunConfig load_run_config(const std::filesystem::path& path);

/// "uss,milp,mng" or "all".
std::vector<Method> parse_methods(const std::string& text);

}  // namespace genprio
