#pragma once

#include <map>
#include <string>

#include "genprio/grid.hpp"
#include "genprio/powerflow.hpp"

namespace genprio {

/// Fallback fuel conversion when a unit has no heat-rate data.
inline constexpr double kDefaultHeatRate = 9.5;  // MMBTU/MWh

/// Mean of the average-cost values ($/MWh) at the unit's cost breakpoints.
double average_operating_cost(const Generator& gen);
/// Fuel price converted to $/MWh with the unit's heat rate (or the default).
double fuel_cost_per_mwh(const Generator& gen);
/// Merit-order price: operating plus fuel cost. Renewables are free.
double merit_cost(const Generator& gen);

struct DispatchOptions {
    double loss_adder = 0.02;  // fraction added to every area demand
};

struct DispatchSolution {
    std::map<std::string, double> gen_setpoints;  // MW, enabled units
    double objective = 0.0;                       // $/h
    bool feasible = false;
};

/// Merit-order allocation of each area's demand over its enabled units,
/// renewables first. Area shortfalls are then covered from the remaining
/// headroom system-wide. Every unit produces at least pgmin.
DispatchSolution economic_dispatch(const GridCase& grid, const std::map<int, double>& area_demand_mw,
                                   const DispatchOptions& options = {});

/// In-service active demand per energized area.
std::map<int, double> area_active_demand(const GridCase& grid);

struct OpfOptions {
    DispatchOptions dispatch;
    PowerFlowOptions power_flow;
    bool enforce_branch_ratings = false;
    double limit_tolerance = 1e-6;  // MW / MVar
};

struct OpfResult {
    DispatchSolution dispatch;
    PowerFlowSolution flow;
    bool working = false;
    std::string reason;  // why the check failed, empty when working
};

/// Dispatch, then power flow: the feasibility oracle for a commitment. Working
/// iff the flow converges, every slack injection lies within [0, pgmax] and
/// the reactive limits of its units, and (optionally) branch ratings hold.
OpfResult opf_check(const GridCase& grid, const OpfOptions& options = {});

}  // namespace genprio
