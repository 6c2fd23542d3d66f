#include "genprio/baselines.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <numeric>
#include <queue>

#include "genprio/error.hpp"
#include "genprio/ingest.hpp"
#include "genprio/lp.hpp"
#include "genprio/uss.hpp"

namespace genprio {

double MilpUnit::lower() const {
    double lo = pgmin;
    if (prev_on && ramp > 0.0) lo = std::max(lo, prev_pg - ramp);
    return std::min(lo, upper());
}

double MilpUnit::upper() const {
    double hi = pgmax;
    if (prev_on && ramp > 0.0) hi = std::min(hi, prev_pg + ramp);
    return std::max(hi, 0.0);
}

int MilpSolution::committed_count() const {
    return static_cast<int>(std::count(commitment.begin(), commitment.end(), true));
}

MilpInstance build_milp_instance(const GridCase& grid, int period, int area, const Schedule* previous,
                                 double reserve_factor) {
    MilpInstance inst;
    inst.area = area;
    inst.period = period;
    double load = 0.0;
    for (const auto& b : grid.buses) {
        if (b.in_service && b.area == area) load += b.pd;
    }
    double renewable = 0.0;
    for (const auto& g : grid.generators) {
        if (!g.status || !grid.bus(g.bus_id).in_service || grid.area_of(g) != area) continue;
        if (is_renewable(g.type)) {
            renewable += g.pgmax;
            continue;
        }
        if (g.type != GenType::conventional) continue;
        MilpUnit u;
        u.id = g.id;
        u.avg_cost = average_operating_cost(g);
        u.fuel_cost = fuel_cost_per_mwh(g);
        u.prev_on = previous && previous->enabled(g.id);
        u.startup_cost = u.prev_on ? 0.0 : g.startup_cost;
        u.pgmin = g.pgmin;
        u.pgmax = g.pgmax;
        u.ramp = g.ramp_rate * 60.0;
        if (u.prev_on) {
            if (auto it = previous->setpoints.find(g.id); it != previous->setpoints.end()) {
                u.prev_pg = it->second.pg;
            } else {
                u.ramp = 0.0;
            }
        }
        inst.units.push_back(std::move(u));
    }
    inst.demand_target = std::max(0.0, load - renewable) * reserve_factor;
    return inst;
}

std::optional<MilpSolution> dispatch_commitment(const MilpInstance& inst, const std::vector<bool>& commitment) {
    const std::size_t n = inst.units.size();
    MilpSolution sol;
    sol.commitment = commitment;
    sol.dispatch.assign(n, 0.0);
    double supplied = 0.0;
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < n; ++i) {
        if (!commitment[i]) continue;
        sol.dispatch[i] = inst.units[i].lower();
        supplied += sol.dispatch[i];
        order.push_back(i);
    }
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const double ca = inst.units[a].marginal_cost();
        const double cb = inst.units[b].marginal_cost();
        if (ca != cb) return ca < cb;
        return inst.units[a].id < inst.units[b].id;
    });
    double remaining = inst.demand_target - supplied;
    for (std::size_t i : order) {
        if (remaining <= 0.0) break;
        const double take = std::min(remaining, inst.units[i].upper() - sol.dispatch[i]);
        if (take > 0.0) {
            sol.dispatch[i] += take;
            remaining -= take;
        }
    }
    if (remaining > 1e-9 * std::max(1.0, inst.demand_target)) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i) {
        if (!commitment[i]) continue;
        sol.objective += inst.units[i].startup_cost + inst.units[i].marginal_cost() * sol.dispatch[i];
    }
    sol.feasible = true;
    return sol;
}

namespace {

constexpr double kIntTol = 1e-9;
constexpr double kCostTol = 1e-9;

std::vector<std::string> committed_ids(const MilpInstance& inst, const std::vector<bool>& c) {
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i]) ids.push_back(inst.units[i].id);
    }
    std::sort(ids.begin(), ids.end());
    return ids;
}

// Strictly cheaper, or equally cheap with fewer units, then lower ids.
bool better(const MilpInstance& inst, const MilpSolution& a, const MilpSolution& b) {
    if (a.objective < b.objective - kCostTol) return true;
    if (a.objective > b.objective + kCostTol) return false;
    if (a.committed_count() != b.committed_count()) return a.committed_count() < b.committed_count();
    return committed_ids(inst, a.commitment) < committed_ids(inst, b.commitment);
}

struct Node {
    std::vector<signed char> fix;  // -1 free, 0 off, 1 on
    double bound = 0.0;
    long seq = 0;
};

struct NodeOrder {
    bool operator()(const Node& a, const Node& b) const {
        if (a.bound != b.bound) return a.bound > b.bound;
        return a.seq > b.seq;
    }
};

struct Relaxation {
    bool feasible = false;
    double bound = 0.0;
    std::vector<double> u;  // per unit, fixed values included
};

Relaxation solve_relaxation(const MilpInstance& inst, const std::vector<signed char>& fix) {
    const std::size_t n = inst.units.size();
    LinearProgram lp;
    std::vector<std::ptrdiff_t> u_var(n, -1);
    std::vector<std::ptrdiff_t> p_var(n, -1);
    double constant = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& unit = inst.units[i];
        if (fix[i] == 0) continue;
        if (fix[i] == -1) u_var[i] = static_cast<std::ptrdiff_t>(lp.add_variable(unit.startup_cost, 1.0));
        else constant += unit.startup_cost;
        p_var[i] = static_cast<std::ptrdiff_t>(lp.add_variable(unit.marginal_cost(), unit.upper()));
    }
    const std::size_t nv = lp.variable_count();
    auto row = [nv]() { return std::vector<double>(nv, 0.0); };

    auto demand = row();
    for (std::size_t i = 0; i < n; ++i) {
        if (p_var[i] >= 0) demand[p_var[i]] = 1.0;
    }
    lp.add_row(std::move(demand), Relation::greater_equal, inst.demand_target);
    for (std::size_t i = 0; i < n; ++i) {
        if (p_var[i] < 0) continue;
        const auto& unit = inst.units[i];
        if (u_var[i] >= 0) {
            auto hi = row();
            hi[p_var[i]] = 1.0;
            hi[u_var[i]] = -unit.upper();
            lp.add_row(std::move(hi), Relation::less_equal, 0.0);
            if (unit.lower() > 0.0) {
                auto lo = row();
                lo[p_var[i]] = 1.0;
                lo[u_var[i]] = -unit.lower();
                lp.add_row(std::move(lo), Relation::greater_equal, 0.0);
            }
        } else if (unit.lower() > 0.0) {
            auto lo = row();
            lo[p_var[i]] = 1.0;
            lp.add_row(std::move(lo), Relation::greater_equal, unit.lower());
        }
    }

    Relaxation out;
    const LpResult res = solve_lp(lp);
    if (res.status == LpResult::Status::infeasible) return out;
    if (res.status != LpResult::Status::optimal) {
        throw SolverError("LP relaxation failed for area " + std::to_string(inst.area));
    }
    out.feasible = true;
    out.bound = res.objective + constant;
    out.u.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (fix[i] == 1) out.u[i] = 1.0;
        else if (u_var[i] >= 0) out.u[i] = std::clamp(res.x[u_var[i]], 0.0, 1.0);
    }
    return out;
}

// Round fractional commitments up; add free units in merit order until the
// demand can be met.
std::optional<MilpSolution> round_and_repair(const MilpInstance& inst, const std::vector<signed char>& fix,
                                             const std::vector<double>& u) {
    const std::size_t n = inst.units.size();
    std::vector<bool> c(n, false);
    double capacity = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        c[i] = fix[i] == 1 || (fix[i] == -1 && u[i] > kIntTol);
        if (c[i]) capacity += inst.units[i].upper();
    }
    if (capacity < inst.demand_target) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < n; ++i) {
            if (!c[i] && fix[i] == -1) order.push_back(i);
        }
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return inst.units[a].marginal_cost() < inst.units[b].marginal_cost();
        });
        for (std::size_t i : order) {
            if (capacity >= inst.demand_target) break;
            c[i] = true;
            capacity += inst.units[i].upper();
        }
    }
    return dispatch_commitment(inst, c);
}

}  // namespace

MilpSolution solve_milp(const MilpInstance& inst, double gap_tolerance, double time_limit) {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = inst.units.size();
    auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

    std::optional<MilpSolution> incumbent;
    auto offer = [&](std::optional<MilpSolution> cand) {
        if (cand && (!incumbent || better(inst, *cand, *incumbent))) incumbent = std::move(cand);
    };

    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long seq = 0;
    int nodes = 0;
    bool timed_out = false;

    auto expand = [&](std::vector<signed char> fix) {
        ++nodes;
        const Relaxation rel = solve_relaxation(inst, fix);
        if (!rel.feasible) return;
        offer(round_and_repair(inst, fix, rel.u));
        std::ptrdiff_t branch = -1;
        double most = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (fix[i] != -1) continue;
            const double frac = std::min(rel.u[i], 1.0 - rel.u[i]);
            if (frac > kIntTol && frac > most + 1e-12) {
                most = frac;
                branch = static_cast<std::ptrdiff_t>(i);
            }
        }
        if (branch < 0) {
            // Integral relaxation: fix the free units and take the exact dispatch.
            std::vector<bool> c(n);
            for (std::size_t i = 0; i < n; ++i) c[i] = fix[i] == 1 || (fix[i] == -1 && rel.u[i] > 0.5);
            offer(dispatch_commitment(inst, c));
            return;
        }
        for (const signed char v : {0, 1}) {
            Node child{fix, rel.bound, seq++};
            child.fix[branch] = v;
            open.push(std::move(child));
        }
    };

    expand(std::vector<signed char>(n, -1));
    auto pruned = [&](double bound) {
        if (!incumbent) return false;
        const double tol = gap_tolerance * std::max(1.0, std::abs(incumbent->objective));
        return bound >= incumbent->objective - tol;
    };
    while (!open.empty()) {
        if (elapsed() > time_limit) {
            timed_out = true;
            break;
        }
        Node node = open.top();
        open.pop();
        if (pruned(node.bound)) continue;
        expand(std::move(node.fix));
    }

    MilpSolution out;
    if (incumbent) out = *incumbent;
    out.nodes = nodes;
    if (!incumbent) {
        out.commitment.assign(n, false);
        out.dispatch.assign(n, 0.0);
        out.feasible = false;
        out.optimal = false;
        return out;
    }
    if (timed_out && !open.empty()) {
        const double best_bound = open.top().bound;
        out.gap = std::max(0.0, (out.objective - best_bound) / std::max(1.0, std::abs(out.objective)));
        out.optimal = out.gap <= gap_tolerance;
    } else {
        out.gap = 0.0;
        out.optimal = true;
    }
    return out;
}

void write_lp_format(std::ostream& out, const MilpInstance& inst) {
    out.precision(12);
    out << "\\ unit commitment, area " << inst.area << ", period " << inst.period << "\n";
    out << "Minimize\n obj:";
    bool first = true;
    auto term = [&](double coef, const std::string& var) {
        out << (first ? " " : (coef < 0 ? " - " : " + ")) << (first ? coef : std::abs(coef)) << ' ' << var;
        first = false;
    };
    for (const auto& u : inst.units) {
        term(u.startup_cost, "u_" + u.id);
        term(u.marginal_cost(), "p_" + u.id);
    }
    if (inst.units.empty()) out << " 0";
    out << "\nSubject To\n demand:";
    first = true;
    for (const auto& u : inst.units) term(1.0, "p_" + u.id);
    if (inst.units.empty()) out << " 0";
    out << " >= " << inst.demand_target << "\n";
    for (const auto& u : inst.units) {
        out << " hi_" << u.id << ": p_" << u.id << " - " << u.upper() << " u_" << u.id << " <= 0\n";
        out << " lo_" << u.id << ": p_" << u.id << " - " << u.lower() << " u_" << u.id << " >= 0\n";
    }
    out << "Bounds\n";
    for (const auto& u : inst.units) out << " 0 <= p_" << u.id << " <= " << u.upper() << "\n";
    out << "Binary\n";
    for (const auto& u : inst.units) out << " u_" << u.id << "\n";
    out << "End\n";
}

MilpRun run_milp_uc(const GridCase& grid, int period, const Schedule* previous, const MilpOptions& milp,
                    const OpfOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    MilpRun run;
    GridCase working = grid;
    for (auto& g : working.generators) {
        if (g.type == GenType::conventional) g.status = false;
    }
    for (int area : grid.energized_areas()) {
        MilpInstance inst = build_milp_instance(grid, period, area, previous, milp.reserve_factor);
        MilpSolution sol = solve_milp(inst, milp.gap_tolerance, milp.time_limit);
        if (milp.dump_dir) {
            std::filesystem::create_directories(*milp.dump_dir);
            std::ofstream f(*milp.dump_dir / (std::to_string(period) + "_area" + std::to_string(area) + ".lp"));
            write_lp_format(f, inst);
        }
        for (std::size_t i = 0; i < inst.units.size(); ++i) {
            if (sol.commitment[i]) {
                Generator* g = working.find_generator(inst.units[i].id);
                g->status = true;
                g->pg = sol.dispatch[i];
            }
        }
        run.instances.push_back(std::move(inst));
        run.solutions.push_back(std::move(sol));
    }
    assign_slack_buses(working);
    run.check = opf_check(working, options);
    run.schedule = make_schedule(working, run.check, period, Method::milp_uc);
    run.schedule.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

MngRun run_mng(const GridCase& grid, int period, const Schedule* previous, const OpfOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    MngRun run;
    const UssContext ctx = prepare_uss(grid, period);
    run.slack_units = ctx.slack_units;
    run.ranking = rank_units(grid, previous, options);

    GridCase trial = with_enabled(ctx.seeded, {});
    run.check = opf_check(trial, options);
    run.trials = 1;
    for (const auto& entry : run.ranking) {
        if (run.check.working) break;
        if (!ctx.eligible.count(entry.unit_id)) continue;
        if (std::find(ctx.slack_units.begin(), ctx.slack_units.end(), entry.unit_id) != ctx.slack_units.end()) {
            continue;
        }
        run.prefix.push_back(entry.unit_id);
        trial = with_enabled(ctx.seeded, run.prefix);
        run.check = opf_check(trial, options);
        ++run.trials;
    }
    run.schedule = make_schedule(trial, run.check, period, Method::mng);
    run.schedule.elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

}  // namespace genprio
