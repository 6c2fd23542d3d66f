#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "genprio/baselines.hpp"
#include "genprio/grid.hpp"
#include "genprio/ingest.hpp"
#include "genprio/opf.hpp"
#include "genprio/powerflow.hpp"
#include "genprio/scenario.hpp"

namespace genprio {

/// Renewable pg over energized-bus active load, from a converged flow.
double renewable_share(const GridCase& grid, const PowerFlowSolution& solution);
/// Same ratio from a schedule's setpoints.
double renewable_share(const GridCase& grid, const Schedule& schedule);

struct PeriodRecord {
    std::string window;
    Method method = Method::uss;
    int period = 0;
    bool working = false;
    double elapsed = 0.0;
    int enabled_conventional = 0;
    double renewable_share = 0.0;
    int step_reached = 0;
    std::string error;  // scheduler exception text, if any
};

struct MethodRow {
    std::string window;
    Method method = Method::uss;
    int periods = 0;
    int working = 0;
    int not_working = 0;
    double total_elapsed = 0.0;
    double avg_enabled_conventional = 0.0;
    double avg_renewable_share = 0.0;
    double elapsed_vs_uss = 0.0;  // total_elapsed / USS total_elapsed, 0 without a USS row
};

struct BenchmarkReport {
    std::vector<MethodRow> rows;  // window order, then method order
    std::vector<PeriodRecord> periods;
    std::vector<std::string> warnings;
    double default_heat_rate = kDefaultHeatRate;

    const MethodRow* find(const std::string& window, Method method) const;
};

struct BenchOptions {
    ScenarioOptions scenario;
    OpfOptions opf;
    MilpOptions milp;
    /// Split the window into one row group per restoration stage.
    bool rows_per_stage = false;
    /// Run the methods concurrently; timings are then not comparable.
    bool parallel_methods = false;
    /// When set, per-period schedules and GPWD lists are written here.
    std::optional<std::filesystem::path> output_dir;
};

/// Hourly loop over [first, last] for each method. Scenario construction is
/// done up front; only scheduler calls are timed. A scheduler exception
/// counts as a non-working period.
BenchmarkReport run_window(const GridCase& base, const TimeseriesSet& ts, const std::vector<Method>& methods,
                           int first, int last, const BenchOptions& options = {});

/// Rows rebuilt from the per-period records.
std::vector<MethodRow> aggregate(const std::vector<PeriodRecord>& periods, const std::vector<Method>& methods);

enum class ReportFormat { csv, json, text };

void emit_report(std::ostream& out, const BenchmarkReport& report, ReportFormat format);
/// Writes report.csv, report.json and report.txt into `dir`.
void write_report_files(const std::filesystem::path& dir, const BenchmarkReport& report);

/// Parsers for the csv and json renderings (rows only).
std::vector<MethodRow> rows_from_csv(const std::string& text);
std::vector<MethodRow> rows_from_json(const std::string& text);

void write_schedule_csv(std::ostream& out, const GridCase& grid, const Schedule& schedule);

}  // namespace genprio
