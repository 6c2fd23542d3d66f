#pragma once

#include <complex>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "genprio/grid.hpp"

namespace genprio {

struct PowerFlowOptions {
    double tolerance = 1e-8;  // p.u. mismatch, infinity norm
    int max_iterations = 30;
    bool enforce_q_limits = true;
    double q_limit_slack = 1e-6;  // MVar
    /// Line-delimited iteration trace (iterations, mismatch history).
    std::ostream* trace = nullptr;
};

struct BusVoltage {
    double vm = 1.0;  // p.u.
    double va = 0.0;  // rad
};

struct GenOutput {
    double pg = 0.0;  // MW
    double qg = 0.0;  // MVar
};

struct SlackInjection {
    int bus_id = 0;
    double p = 0.0;  // MW supplied by the units at the slack bus
    double q = 0.0;  // MVar
};

struct PowerFlowSolution {
    bool converged = false;
    int iterations = 0;
    double mismatch_inf_norm = 0.0;
    std::map<int, BusVoltage> bus_voltages;
    std::map<std::string, GenOutput> gen_outputs;  // enabled units on energized buses
    std::vector<SlackInjection> slack;             // one per sourced island
    std::vector<int> switched_to_pq;               // PV buses held at a reactive limit
    std::string failure;                           // empty when converged
};

/// Newton-Raphson power flow in polar coordinates from a flat start.
///
/// Bus kinds are taken from the case (see assign_slack_buses). Non-slack
/// generators inject their `pg`; PV buses hold `voltage_setpoint` until the
/// summed reactive limits of their enabled units bind, at which point they are
/// fixed at the limit and re-solved as PQ. Throws SolverError when a sourced
/// island has no slack bus. Islands with load but no source yield a
/// non-converged solution.
PowerFlowSolution solve_power_flow(const GridCase& grid, const PowerFlowOptions& options = {});

/// Complex power flowing into a branch at its from and to ends (MVA), from a
/// solved voltage profile.
struct BranchFlow {
    std::complex<double> from;
    std::complex<double> to;
};
BranchFlow branch_flow(const GridCase& grid, const Branch& br,
                       const std::map<int, BusVoltage>& voltages);

}  // namespace genprio
