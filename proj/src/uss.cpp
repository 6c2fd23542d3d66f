#include "genprio/uss.hpp"

#include <algorithm>
#include <chrono>

namespace genprio {

StepRule step1_rule() { return {0.15, 0.85, 0.85}; }

StepRule step2_rule(double renew_pct) {
    if (renew_pct <= 0.10) return {0.50, 0.50, 0.0};
    if (renew_pct <= 0.175) return {0.55, 0.45, 0.0};
    if (renew_pct <= 0.25) return {0.60, 0.40, 0.0};
    return {0.65, 0.35, 0.0};
}

StepRule step3_rule(int hour_of_day) {
    if (hour_of_day <= 6 || hour_of_day == 24) return {0.0, 0.0, 0.25};
    if (hour_of_day <= 10 || hour_of_day >= 22) return {0.0, 0.0, 0.20};
    return {0.0, 0.0, 0.15};
}

UssContext prepare_uss(const GridCase& grid, int period) {
    UssContext ctx;
    ctx.hour_of_day = (period - 1) % 24 + 1;
    ctx.seeded = grid;
    GridCase& seeded = ctx.seeded;
    for (auto& g : seeded.generators) {
        if (g.type != GenType::conventional) continue;
        if (g.status && seeded.bus(g.bus_id).in_service) ctx.eligible.insert(g.id);
        g.status = false;
    }

    for (const auto& island : energized_islands(seeded)) {
        const Generator* best = nullptr;
        for (const auto& g : seeded.generators) {
            if (!ctx.eligible.count(g.id)) continue;
            if (!std::binary_search(island.begin(), island.end(), g.bus_id)) continue;
            if (!best || g.pgmax > best->pgmax ||
                (g.pgmax == best->pgmax && g.bus_id < best->bus_id)) {
                best = &g;
            }
        }
        if (best) ctx.slack_units.push_back(best->id);
        else ctx.unservable_islands.push_back(island.front());
    }
    for (const auto& id : ctx.slack_units) seeded.find_generator(id)->status = true;

    double total_load = 0.0;
    double renewable = 0.0;
    for (int area : seeded.energized_areas()) {
        const auto [pd, qd] = total_area_demand(seeded, area);
        ctx.goals[area] = {area, pd, qd};
        total_load += pd;
    }
    std::map<int, double> added_q;
    for (const auto& g : seeded.generators) {
        if (!g.status || !seeded.bus(g.bus_id).in_service) continue;
        const int area = seeded.area_of(g);
        if (is_renewable(g.type)) {
            ctx.goals[area].mw_goal -= g.pgmax;
            ctx.goals[area].mvar_goal -= g.qgmax;
            renewable += g.pgmax;
        } else if (g.type == GenType::sync_cond && g.added) {
            added_q[area] += g.qgmax;
        }
    }
    ctx.renew_pct = total_load > 0.0 ? renewable / total_load : 0.0;
    for (auto& [area, goal] : ctx.goals) {
        goal.mw_goal *= 1.15;
        goal.mvar_goal -= 0.85 * added_q[area];
    }
    for (const auto& id : ctx.slack_units) {
        const Generator& g = *seeded.find_generator(id);
        AreaGoals& goal = ctx.goals[seeded.area_of(g)];
        goal.mw_goal -= 0.5 * g.pgmin + 0.5 * g.pgmax;
        goal.mvar_goal -= 0.5 * g.qgmax;
    }
    assign_slack_buses(seeded);
    return ctx;
}

std::vector<std::string> walk_ranked_list(const UssContext& ctx,
                                          const std::vector<GpwdBreakdown>& ranked,
                                          const GridCase& grid, WalkCriterion criterion,
                                          const StepRule& rule) {
    std::map<int, AreaGoals> goals = ctx.goals;
    auto wants = [criterion](const AreaGoals& g) {
        switch (criterion) {
            case WalkCriterion::mw_or_mvar: return g.mw_goal > 0.0 || g.mvar_goal > 0.0;
            case WalkCriterion::mw_only: return g.mw_goal > 0.0;
            case WalkCriterion::mvar_only: return g.mvar_goal > 0.0;
        }
        return false;
    };
    auto any_open = [&]() {
        return std::any_of(goals.begin(), goals.end(), [&](const auto& kv) { return wants(kv.second); });
    };

    std::vector<std::string> enabled;
    if (!any_open()) return enabled;
    for (const auto& entry : ranked) {
        if (!ctx.eligible.count(entry.unit_id)) continue;
        if (std::find(ctx.slack_units.begin(), ctx.slack_units.end(), entry.unit_id) !=
            ctx.slack_units.end()) {
            continue;
        }
        const Generator& g = *grid.find_generator(entry.unit_id);
        auto it = goals.find(grid.area_of(g));
        if (it == goals.end() || !wants(it->second)) continue;
        enabled.push_back(g.id);
        it->second.mw_goal -= rule.pgmin_weight * g.pgmin + rule.pgmax_weight * g.pgmax;
        it->second.mvar_goal -= rule.qgmax_weight * g.qgmax;
        if (!any_open()) break;
    }
    return enabled;
}

GridCase with_enabled(const GridCase& seeded, const std::vector<std::string>& units) {
    GridCase out = seeded;
    for (const auto& id : units) {
        if (Generator* g = out.find_generator(id)) g->status = true;
    }
    for (auto& g : out.generators) {
        if (g.type == GenType::conventional && g.status) g.pg = g.pgmin;
    }
    assign_slack_buses(out);
    return out;
}

namespace {

StepOutcome run_step(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                     WalkCriterion criterion, const StepRule& rule, const OpfOptions& options) {
    StepOutcome out;
    out.enabled = walk_ranked_list(ctx, ranked, ctx.seeded, criterion, rule);
    out.final_case = with_enabled(ctx.seeded, out.enabled);
    out.check = opf_check(out.final_case, options);
    return out;
}

}  // namespace

StepOutcome uss_step1(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                      const OpfOptions& options) {
    return run_step(ctx, ranked, WalkCriterion::mw_or_mvar, step1_rule(), options);
}

StepOutcome uss_step2(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                      const OpfOptions& options) {
    return run_step(ctx, ranked, WalkCriterion::mw_only, step2_rule(ctx.renew_pct), options);
}

StepOutcome uss_step3(const UssContext& ctx, const std::vector<GpwdBreakdown>& ranked,
                      const OpfOptions& options) {
    return run_step(ctx, ranked, WalkCriterion::mvar_only, step3_rule(ctx.hour_of_day), options);
}

Schedule make_schedule(const GridCase& grid, const OpfResult& check, int period, Method method) {
    Schedule s;
    s.period = period;
    s.method = method;
    s.feasible = check.working;
    for (const auto& g : grid.generators) {
        const bool on = g.status && grid.bus(g.bus_id).in_service;
        s.unit_status[g.id] = on;
        if (!on) continue;
        Setpoint sp;
        if (auto it = check.flow.gen_outputs.find(g.id); check.flow.converged && it != check.flow.gen_outputs.end()) {
            sp = {it->second.pg, it->second.qg};
        } else if (auto d = check.dispatch.gen_setpoints.find(g.id); d != check.dispatch.gen_setpoints.end()) {
            sp.pg = d->second;
        }
        s.setpoints[g.id] = sp;
    }
    return s;
}

UssRun run_uss(const GridCase& grid, int period, const Schedule* previous, const OpfOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    UssRun run;
    run.context = prepare_uss(grid, period);
    run.ranking = rank_units(grid, previous, options);

    StepOutcome outcome = uss_step1(run.context, run.ranking, options);
    run.context.step_reached = 1;
    if (!outcome.check.working) {
        outcome = uss_step2(run.context, run.ranking, options);
        run.context.step_reached = 2;
    }
    if (!outcome.check.working) {
        outcome = uss_step3(run.context, run.ranking, options);
        run.context.step_reached = 3;
    }
    run.check = outcome.check;
    run.schedule = make_schedule(outcome.final_case, outcome.check, period, Method::uss);
    run.schedule.step_reached = run.context.step_reached;
    run.schedule.elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return run;
}

}  // namespace genprio
