#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "genprio/grid.hpp"

namespace genprio {

/// Non-fatal findings collected while reading a dataset.
struct Diagnostics {
    std::vector<std::string> warnings;
};

/// Reads bus.csv / branch.csv / gen.csv in the public RTS-GMLC column layout.
/// `dir` may be the dataset root (containing SourceData/) or SourceData itself.
GridCase load_case(const std::filesystem::path& dir, Diagnostics* diag = nullptr);

/// Hourly forecasts. Rows are addressed by absolute period index (hour of 2020,
/// 1-based); a dataset may cover a contiguous sub-range of the year.
struct TimeseriesSet {
    int first_period = 1;
    int period_count = 0;
    std::vector<int> areas;                          // column order of area_load_mw
    std::vector<std::vector<double>> area_load_mw;   // [row][area column]
    std::map<std::string, std::vector<double>> unit_available_mw;
    std::vector<std::string> profile_less;           // renewable units without a column

    int last_period() const { return first_period + period_count - 1; }
    bool contains(int period) const { return period >= first_period && period <= last_period(); }

    double area_load(int period, int area) const;
    /// Largest area load over all loaded rows.
    double area_peak(int area) const;
    /// Available MW for a renewable unit; nullopt for profile-less units.
    std::optional<double> available(const std::string& unit_id, int period) const;
};

struct TimeseriesOptions {
    /// When set, every series must have exactly this many rows.
    std::optional<int> expected_periods;
};

inline constexpr int kPeriodsIn2020 = 8784;

/// Reads the DAY_AHEAD tables (regional load, PV, RTPV, WIND, Hydro). Unit
/// columns must name renewable units of `grid`.
TimeseriesSet load_timeseries(const std::filesystem::path& dir, const GridCase& grid,
                              const TimeseriesOptions& options = {},
                              Diagnostics* diag = nullptr);

struct PeriodDate {
    int month = 1;
    int day = 1;
    int hour = 1;  // 1..24
};

/// 1-based hour-of-year for 2020 (a leap year). Throws ConfigError on invalid input.
int period_index(int month, int day, int hour, int year = 2020);
PeriodDate period_date(int period);

/// Parses "MM/DD H" (also "MM/DD TP-H").
int parse_period(const std::string& text);
std::string format_period(int period);

/// Normalized JSON dump with stable key order; identical cases give identical bytes.
std::string case_to_json(const GridCase& grid);
GridCase case_from_json(const std::string& text);

}  // namespace genprio
