#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genprio/grid.hpp"
#include "genprio/ingest.hpp"

namespace genprio {

/// Target shares of total load per renewable resource type.
struct GoalPortfolio {
    double solar_pct = 0.005;
    double hydro_pct = 0.4675;
    double wind_pct = 0.105;
    double other_pct = 0.0225;
    double min_renewable_pct = 0.20;

    void validate() const;
};

/// What shape_renewable_portfolio did in one period.
struct ShapingSummary {
    double total_load = 0.0;
    double solar_goal = 0.0;  // fractions of total_load after redistribution
    double wind_goal = 0.0;
    double hydro_goal = 0.0;
    std::map<GenType, double> forecast_mw;  // enabled units only
    std::map<GenType, double> shaped_mw;
    double floor_topup_mw = 0.0;
    double floor_shortfall_mw = 0.0;  // > 0 when the floor could not be met
};

/// newMW = oldMW * area_load(period) / (area's total default active demand).
/// The loads already in `grid` are taken as the default values.
GridCase rescale_active_loads(const GridCase& grid, const TimeseriesSet& ts, int period);
/// newMVar = oldMVar * area_load(period) / (area's peak active load in the series).
GridCase rescale_reactive_loads(const GridCase& grid, const TimeseriesSet& ts, int period);
GridCase shape_renewable_portfolio(const GridCase& grid, const TimeseriesSet& ts, int period,
                                   const GoalPortfolio& goal, ShapingSummary* summary = nullptr);

/// Limits of an added synchronous condenser for a bus with the given total
/// enabled renewable capacity (MW): returns {qgmin, qgmax}.
std::pair<double, double> sync_cond_limits(double renewable_mw);
GridCase augment_sync_conds(const GridCase& grid);
GridCase disable_storage(const GridCase& grid);

struct RestorationStage {
    std::string name;
    int first_period = 1;
    int last_period = kPeriodsIn2020;
    std::map<int, std::set<int>> energized;  // area -> kV classes

    bool energizes(int area, double base_kv) const;
};

/// Parses the declarative stage file:
///
///     [stage]
///     name  = CSZ Earthquake Disaster
///     start = 01/26 22
///     end   = 01/29 9
///     area  = 3: 138 230
std::vector<RestorationStage> parse_stage_config(const std::string& text);
std::vector<RestorationStage> load_stage_config(const std::filesystem::path& path);
std::string format_stage_config(const std::vector<RestorationStage>& stages);
/// The four-stage Cascadia timeline, Jan 26 through Feb 8.
std::vector<RestorationStage> default_csz_stages();
const RestorationStage* stage_for_period(const std::vector<RestorationStage>& stages, int period);

GridCase apply_restoration_stage(const GridCase& grid, const RestorationStage& stage);

struct ScenarioOptions {
    GoalPortfolio goal;
    const std::vector<RestorationStage>* stages = nullptr;
};

/// Full per-period case construction: staging, storage off, load rescaling,
/// renewable shaping, synchronous condenser augmentation. `base` is the
/// ingested default case and is never modified.
GridCase build_period_case(const GridCase& base, const TimeseriesSet& ts, int period,
                           const ScenarioOptions& options = {}, ShapingSummary* summary = nullptr);

}  // namespace genprio
