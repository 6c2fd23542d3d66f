#include <doctest.h>

#include <cmath>
#include <sstream>

#include "cases.hpp"
#include "genprio/baselines.hpp"
#include "genprio/ingest.hpp"
#include "genprio/scenario.hpp"
#include "milp_oracle.hpp"

using namespace genprio;

namespace {

MilpUnit make(const std::string& id, double pmin, double pmax, double cost, double startup) {
    MilpUnit u;
    u.id = id;
    u.pgmin = pmin;
    u.pgmax = pmax;
    u.avg_cost = cost;
    u.startup_cost = startup;
    return u;
}

}  // namespace

TEST_CASE("one unit, demand inside its range") {
    MilpInstance inst;
    inst.units = {make("A", 10, 100, 20, 500)};
    inst.demand_target = 60;
    const auto s = solve_milp(inst);
    REQUIRE(s.feasible);
    CHECK(s.optimal);
    CHECK(s.commitment[0]);
    CHECK(s.dispatch[0] == doctest::Approx(60));
    CHECK(s.objective == doctest::Approx(500 + 60 * 20));
}

TEST_CASE("zero demand commits nothing") {
    MilpInstance inst;
    inst.units = {make("A", 10, 100, 20, 500), make("B", 0, 50, 30, 100)};
    const auto s = solve_milp(inst);
    REQUIRE(s.feasible);
    CHECK(s.committed_count() == 0);
    CHECK(s.objective == doctest::Approx(0.0));
}

TEST_CASE("demand above capacity is infeasible") {
    MilpInstance inst;
    inst.units = {make("A", 10, 100, 20, 500)};
    inst.demand_target = 150;
    const auto s = solve_milp(inst);
    CHECK_FALSE(s.feasible);
    CHECK_FALSE(s.optimal);
    CHECK(s.committed_count() == 0);
}

TEST_CASE("equal-cost alternatives give a deterministic optimum") {
    MilpInstance inst;
    inst.units = {make("B", 0, 100, 10, 0), make("A", 0, 100, 10, 0), make("C", 0, 200, 10, 0)};
    inst.demand_target = 150;
    const auto s = solve_milp(inst);
    REQUIRE(s.feasible);
    CHECK(s.objective == doctest::Approx(1500.0));
    const auto again = solve_milp(inst);
    CHECK(again.commitment == s.commitment);
    CHECK(again.dispatch == s.dispatch);
}

TEST_CASE("startup costs can outweigh cheaper energy") {
    MilpInstance inst;
    inst.units = {make("cheap", 0, 100, 10, 5000), make("warm", 0, 100, 30, 0)};
    inst.demand_target = 50;
    const auto s = solve_milp(inst);
    CHECK(s.commitment[1]);
    CHECK_FALSE(s.commitment[0]);
}

TEST_CASE("ramp window bounds the dispatch of a previously running unit") {
    MilpUnit u = make("A", 20, 200, 10, 0);
    u.prev_on = true;
    u.prev_pg = 100;
    u.ramp = 30;
    CHECK(u.lower() == doctest::Approx(70));
    CHECK(u.upper() == doctest::Approx(130));
    MilpInstance inst;
    inst.units = {u, make("B", 0, 200, 50, 0)};
    inst.demand_target = 180;
    const auto s = solve_milp(inst);
    REQUIRE(s.feasible);
    CHECK(s.dispatch[0] == doctest::Approx(130));
    CHECK(s.dispatch[1] == doctest::Approx(50));
}

TEST_CASE("branch and bound equals exhaustive enumeration on random instances") {
    std::mt19937 rng(2024);
    int feasible = 0;
    for (int t = 0; t < 200; ++t) {
        const MilpInstance inst = oracle::random_instance(rng);
        const auto expect = oracle::enumerate(inst);
        const auto got = solve_milp(inst, 0.0, 60.0);
        REQUIRE(got.feasible == expect.feasible);
        if (!expect.feasible) continue;
        ++feasible;
        CHECK(got.optimal);
        CHECK(std::abs(got.objective - expect.objective) <= 1e-6);
        double total = 0.0;
        for (std::size_t i = 0; i < inst.units.size(); ++i) {
            total += got.dispatch[i];
            if (!got.commitment[i]) {
                CHECK(got.dispatch[i] == 0.0);
                continue;
            }
            CHECK(got.dispatch[i] >= inst.units[i].lower() - 1e-9);
            CHECK(got.dispatch[i] <= inst.units[i].upper() + 1e-9);
        }
        CHECK(total >= inst.demand_target - 1e-6);
    }
    CHECK(feasible > 150);
}

TEST_CASE("instances built from a case") {
    const GridCase base = load_case(GENPRIO_TEST_DATA "/mini5");
    const auto ts = load_timeseries(GENPRIO_TEST_DATA "/mini5", base);
    const GridCase c = build_period_case(base, ts, 12);
    const auto inst = build_milp_instance(c, 12, 2, nullptr, 1.05);
    double load = 0.0;
    double renewable = 0.0;
    for (const auto& b : c.buses) {
        if (b.area == 2) load += b.pd;
    }
    for (const auto& g : c.generators) {
        if (g.status && is_renewable(g.type) && c.area_of(g) == 2) renewable += g.pgmax;
    }
    CHECK(inst.demand_target == doctest::Approx(std::max(0.0, load - renewable) * 1.05));
    REQUIRE(inst.units.size() == 2);  // 3_STEAM_1 and 4_CC_1
    for (const auto& u : inst.units) {
        const Generator& g = *c.find_generator(u.id);
        CHECK(u.ramp == doctest::Approx(g.ramp_rate * 60.0));
        CHECK(u.startup_cost == doctest::Approx(g.startup_cost));
    }

    Schedule prev;
    prev.unit_status["4_CC_1"] = true;
    prev.setpoints["4_CC_1"] = {200.0, 0.0};
    const auto warm = build_milp_instance(c, 12, 2, &prev, 1.05);
    for (const auto& u : warm.units) {
        CHECK(u.prev_on == (u.id == "4_CC_1"));
        if (u.prev_on) CHECK(u.startup_cost == 0.0);
    }
}

TEST_CASE("LP-format dump names every variable and row") {
    MilpInstance inst;
    inst.area = 2;
    inst.period = 601;
    inst.units = {make("A", 10, 100, 20, 500), make("B", 0, 50, 30, 100)};
    inst.demand_target = 120;
    std::ostringstream out;
    write_lp_format(out, inst);
    const std::string text = out.str();
    for (const char* token : {"Minimize", "Subject To", "demand:", ">= 120", "hi_A:", "lo_B:", "Binary", "u_A",
                              "p_B", "End"}) {
        CHECK(text.find(token) != std::string::npos);
    }
}

TEST_CASE("run_milp_uc on the miniature system") {
    const GridCase base = load_case(GENPRIO_TEST_DATA "/mini5");
    const auto ts = load_timeseries(GENPRIO_TEST_DATA "/mini5", base);
    std::optional<Schedule> prev;
    for (int p = 1; p <= 24; ++p) {
        const GridCase c = build_period_case(base, ts, p);
        const auto run = run_milp_uc(c, p, prev ? &*prev : nullptr);
        CHECK(run.instances.size() == 2);
        CHECK(run.schedule.method == Method::milp_uc);
        CHECK(run.schedule.feasible == run.check.working);
        // Area 1 holds a single 55 MW unit, so its instance is infeasible at
        // some hours; feasibility must agree with enumeration either way.
        for (std::size_t k = 0; k < run.instances.size(); ++k) {
            const auto expect = oracle::enumerate(run.instances[k]);
            CHECK(run.solutions[k].feasible == expect.feasible);
            if (expect.feasible) CHECK(run.solutions[k].objective == doctest::Approx(expect.objective));
        }
        prev = run.schedule;
    }
}
