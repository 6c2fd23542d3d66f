#include "genprio/opf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

namespace genprio {

double average_operating_cost(const Generator& gen) {
    double sum = 0.0;
    int count = 0;
    for (const auto& p : gen.cost_points) {
        if (p.mw <= 0.0) continue;
        sum += p.cost_per_hour / p.mw;
        ++count;
    }
    return count > 0 ? sum / count : 0.0;
}

double fuel_cost_per_mwh(const Generator& gen) {
    const double heat_rate = gen.heat_rate > 0.0 ? gen.heat_rate : kDefaultHeatRate;
    return gen.fuel_price * heat_rate;
}

double merit_cost(const Generator& gen) {
    if (gen.type != GenType::conventional) return 0.0;
    return average_operating_cost(gen) + fuel_cost_per_mwh(gen);
}

std::map<int, double> area_active_demand(const GridCase& grid) {
    std::map<int, double> demand;
    for (const auto& b : grid.buses) {
        if (b.in_service) demand[b.area] += b.pd;
    }
    return demand;
}

DispatchSolution economic_dispatch(const GridCase& grid, const std::map<int, double>& area_demand_mw,
                                   const DispatchOptions& options) {
    struct Unit {
        const Generator* gen;
        int area;
        double cost;
        double pg;
    };
    std::vector<Unit> units;
    for (const auto& g : grid.generators) {
        if (!g.status || !grid.bus(g.bus_id).in_service) continue;
        if (g.pgmax <= 0.0 && g.pgmin <= 0.0) continue;
        units.push_back({&g, grid.area_of(g), merit_cost(g), g.pgmin});
    }
    std::stable_sort(units.begin(), units.end(), [](const Unit& a, const Unit& b) {
        if (a.cost != b.cost) return a.cost < b.cost;
        return a.gen->id < b.gen->id;
    });

    auto fill = [](Unit& u, double& remaining) {
        const double take = std::min(remaining, u.gen->pgmax - u.pg);
        if (take > 0.0) {
            u.pg += take;
            remaining -= take;
        }
    };

    double shortfall = 0.0;
    for (const auto& [area, demand] : area_demand_mw) {
        double remaining = demand * (1.0 + options.loss_adder);
        for (const auto& u : units) {
            if (u.area == area) remaining -= u.pg;
        }
        for (auto& u : units) {
            if (remaining <= 0.0) break;
            if (u.area == area) fill(u, remaining);
        }
        if (remaining > 0.0) shortfall += remaining;
    }
    for (auto& u : units) {
        if (shortfall <= 0.0) break;
        fill(u, shortfall);
    }

    DispatchSolution sol;
    sol.feasible = shortfall <= 1e-9;
    for (const auto& u : units) {
        sol.gen_setpoints[u.gen->id] = u.pg;
        sol.objective += u.cost * u.pg;
    }
    return sol;
}

OpfResult opf_check(const GridCase& grid, const OpfOptions& options) {
    OpfResult res;
    GridCase work = grid;
    assign_slack_buses(work);
    res.dispatch = economic_dispatch(work, area_active_demand(work), options.dispatch);
    for (auto& g : work.generators) {
        auto it = res.dispatch.gen_setpoints.find(g.id);
        g.pg = it == res.dispatch.gen_setpoints.end() ? 0.0 : it->second;
    }
    res.flow = solve_power_flow(work, options.power_flow);
    if (!res.flow.converged) {
        res.reason = "power flow: " + res.flow.failure;
        return res;
    }

    const double tol = options.limit_tolerance;
    std::ostringstream why;
    for (const auto& s : res.flow.slack) {
        double pmax = 0.0;
        double qmin = 0.0;
        double qmax = 0.0;
        for (const auto& g : work.generators) {
            if (!g.status || g.bus_id != s.bus_id) continue;
            pmax += g.pgmax;
            qmin += g.qgmin;
            qmax += g.qgmax;
        }
        if (s.p < -tol || s.p > pmax + tol) {
            why << "slack bus " << s.bus_id << " P " << s.p << " MW outside [0, " << pmax << "]; ";
        }
        if (s.q < qmin - tol || s.q > qmax + tol) {
            why << "slack bus " << s.bus_id << " Q " << s.q << " MVar outside [" << qmin << ", "
                << qmax << "]; ";
        }
    }
    for (const auto& g : work.generators) {
        auto it = res.flow.gen_outputs.find(g.id);
        if (it == res.flow.gen_outputs.end() || work.bus(g.bus_id).kind == BusKind::slack) continue;
        if (it->second.qg > g.qgmax + tol || it->second.qg < g.qgmin - tol) {
            why << "unit " << g.id << " Q " << it->second.qg << " outside limits; ";
        }
    }
    if (options.enforce_branch_ratings) {
        for (const auto& br : work.branches) {
            if (!br.in_service || br.rating <= 0.0) continue;
            const auto flow = branch_flow(work, br, res.flow.bus_voltages);
            if (std::max(std::abs(flow.from), std::abs(flow.to)) > br.rating + tol) {
                why << "branch " << br.id << " over rating; ";
            }
        }
    }
    res.reason = why.str();
    res.working = res.reason.empty();
    return res;
}

}  // namespace genprio
