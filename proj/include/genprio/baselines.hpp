#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "genprio/gpwd.hpp"
#include "genprio/grid.hpp"
#include "genprio/opf.hpp"

namespace genprio {

struct MilpUnit {
    std::string id;
    double avg_cost = 0.0;      // $/MWh
    double fuel_cost = 0.0;     // $/MWh
    double startup_cost = 0.0;  // $, 0 when on in the previous period
    double pgmin = 0.0;
    double pgmax = 0.0;
    double ramp = 0.0;  // MW/h, 0 = no ramp data
    bool prev_on = false;
    double prev_pg = 0.0;

    double marginal_cost() const { return avg_cost + fuel_cost; }
    /// Dispatch bounds once committed: box limits intersected with the ramp window.
    double lower() const;
    double upper() const;
};

struct MilpInstance {
    int area = 0;
    int period = 0;
    std::vector<MilpUnit> units;
    double demand_target = 0.0;  // MW
};

struct MilpSolution {
    std::vector<bool> commitment;
    std::vector<double> dispatch;
    double objective = 0.0;
    bool feasible = false;
    bool optimal = false;
    double gap = 0.0;
    int nodes = 0;

    int committed_count() const;
};

struct MilpOptions {
    double gap_tolerance = 1e-6;
    double time_limit = 10.0;  // seconds per instance
    double reserve_factor = 1.05;
    /// When set, every instance is written here as <period>_area<N>.lp.
    std::optional<std::filesystem::path> dump_dir;
};

/// Per-area instance from a scenario-built case. Demand is the area load less
/// its enabled renewable capacity, inflated by the reserve factor.
MilpInstance build_milp_instance(const GridCase& grid, int period, int area, const Schedule* previous,
                                 double reserve_factor = 1.05);

/// Cheapest merit-order dispatch for a fixed commitment; nullopt if infeasible.
std::optional<MilpSolution> dispatch_commitment(const MilpInstance& inst, const std::vector<bool>& commitment);

/// Best-first branch-and-bound over the LP relaxation.
MilpSolution solve_milp(const MilpInstance& inst, double gap_tolerance = 1e-6, double time_limit = 10.0);

/// CPLEX-LP text of the instance.
void write_lp_format(std::ostream& out, const MilpInstance& inst);

struct MilpRun {
    Schedule schedule;
    std::vector<MilpInstance> instances;
    std::vector<MilpSolution> solutions;
    OpfResult check;
};

/// Solves every energized area separately, unions the commitments and checks
/// the result with opf_check.
MilpRun run_milp_uc(const GridCase& grid, int period, const Schedule* previous,
                    const MilpOptions& milp = {}, const OpfOptions& options = {});

struct MngRun {
    Schedule schedule;
    std::vector<GpwdBreakdown> ranking;
    std::vector<std::string> slack_units;
    std::vector<std::string> prefix;  // ranked units enabled on top of the slack seeds
    int trials = 0;
    OpfResult check;
};

/// Enables GPWD-ranked units one at a time until opf_check passes.
MngRun run_mng(const GridCase& grid, int period, const Schedule* previous, const OpfOptions& options = {});

}  // namespace genprio
