#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "genprio/gpwd.hpp"
#include "genprio/grid.hpp"
#include "genprio/ingest.hpp"
#include "genprio/opf.hpp"

namespace genprio {

struct AreaGoals {
    int area = 0;
    double mw_goal = 0.0;
    double mvar_goal = 0.0;
};

struct UssContext {
    int hour_of_day = 1;
    double renew_pct = 0.0;
    std::vector<std::string> slack_units;  // one per sourced island
    std::map<int, AreaGoals> goals;        // prepare-time goals, per energized area
    std::vector<int> unservable_islands;   // first bus of islands without a conventional unit
    int step_reached = 0;
    /// Scenario case with every conventional unit off except the slack seeds.
    GridCase seeded;
    /// Conventional units the walks may enable (enabled in the scenario case).
    std::set<std::string> eligible;
};

/// Deduction coefficients applied when a unit is enabled during a walk.
struct StepRule {
    double pgmin_weight = 0.0;
    double pgmax_weight = 0.0;
    double qgmax_weight = 0.0;
};

StepRule step1_rule();
/// Active-power bracket of step 2, keyed by the renewable share (upper edges inclusive).
StepRule step2_rule(double renew_pct);
/// Reactive bracket of step 3, keyed by hour of day 1..24.
StepRule step3_rule(int hour_of_day);

/// Goal bookkeeping before any walk: conventional units off, slack seeds on,
/// per-area MW / MVar goals.
UssContext prepare_uss(const GridCase& grid, int period);

enum class WalkCriterion { mw_or_mvar, mw_only, mvar_only };

/// Units the walk enables, in list order. Skips ineligible and already
/// enabled units; stops as soon as no area has a positive goal.
std::vector<std::string> walk_ranked_list(const UssContext& ctx,
                                          const std::vector<GpwdBreakdown>& ranked,
                                          const GridCase& grid, WalkCriterion criterion,
                                          const StepRule& rule);

struct StepOutcome {
    std::vector<std::string> enabled;  // walk result, excluding slack seeds
    OpfResult check;
    GridCase final_case;
};

StepOutcome uss_step1(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                      const OpfOptions& options = {});
StepOutcome uss_step2(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                      const OpfOptions& options = {});
StepOutcome uss_step3(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                      const OpfOptions& options = {});

/// Case with the given conventional units enabled on top of the seeds.
GridCase with_enabled(const GridCase& seeded, const std::vector<std::string>& units);

/// Schedule from an evaluated case and its check.
Schedule make_schedule(const GridCase& grid, const OpfResult& check, int period, Method method);

struct UssRun {
    Schedule schedule;
    UssContext context;
    std::vector<GpwdBreakdown> ranking;
    OpfResult check;
};

/// prepare -> rank -> step 1, escalating to steps 2 and 3 while the check fails.
UssRun run_uss(const GridCase& grid, int period, const Schedule* previous,
               const OpfOptions& options = {});

}  // namespace genprio
