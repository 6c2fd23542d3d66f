#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cases.hpp"
#include "genprio/opf.hpp"

using namespace genprio;

namespace {

GridCase single_area(const std::vector<Generator>& units) {
    GridCase c;
    c.buses = {testcase::bus(1)};
    c.generators = units;
    return c;
}

// Basis enumeration for min c'p, sum p = D, lo <= p <= hi: an optimal vertex
// has at most one unit strictly between its bounds.
double vertex_oracle(const std::vector<double>& cost, const std::vector<double>& lo,
                     const std::vector<double>& hi, double demand) {
    const std::size_t n = cost.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t free = 0; free < n; ++free) {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            if (mask & (1u << free)) continue;
            double fixed = 0.0;
            double value = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (i == free) continue;
                const double p = (mask & (1u << i)) ? hi[i] : lo[i];
                fixed += p;
                value += cost[i] * p;
            }
            const double pf = demand - fixed;
            if (pf < lo[free] - 1e-9 || pf > hi[free] + 1e-9) continue;
            best = std::min(best, value + cost[free] * pf);
        }
    }
    return best;
}

}  // namespace

TEST_CASE("merit order fills the cheaper unit first") {
    GridCase c = single_area({testcase::unit("A", 1, 0, 100, 0, 0, 10), testcase::unit("B", 1, 0, 100, 0, 0, 20)});
    const auto d = economic_dispatch(c, {{1, 150.0}}, {0.0});
    CHECK(d.feasible);
    CHECK(d.gen_setpoints.at("A") == doctest::Approx(100.0));
    CHECK(d.gen_setpoints.at("B") == doctest::Approx(50.0));
    CHECK(d.objective == doctest::Approx(100 * 10 + 50 * 20));
}

TEST_CASE("zero demand leaves every unit at pgmin") {
    GridCase c = single_area({testcase::unit("A", 1, 15, 100, 0, 0, 10), testcase::unit("B", 1, 0, 100, 0, 0, 20)});
    const auto d = economic_dispatch(c, {{1, 0.0}});
    CHECK(d.gen_setpoints.at("A") == doctest::Approx(15.0));
    CHECK(d.gen_setpoints.at("B") == doctest::Approx(0.0));
}

TEST_CASE("demand above capacity is infeasible at full output") {
    GridCase c = single_area({testcase::unit("A", 1, 0, 100, 0, 0, 10)});
    const auto d = economic_dispatch(c, {{1, 130.0}});
    CHECK_FALSE(d.feasible);
    CHECK(d.gen_setpoints.at("A") == doctest::Approx(100.0));
}

TEST_CASE("renewables are dispatched ahead of conventional units") {
    GridCase c = single_area({testcase::unit("A", 1, 0, 100, 0, 0, 10),
                              testcase::renewable("W", 1, GenType::wind, 40)});
    const auto d = economic_dispatch(c, {{1, 60.0}}, {0.0});
    CHECK(d.gen_setpoints.at("W") == doctest::Approx(40.0));
    CHECK(d.gen_setpoints.at("A") == doctest::Approx(20.0));
}

TEST_CASE("an area shortfall is covered by another area's headroom") {
    GridCase c;
    c.buses = {testcase::bus(1, 1), testcase::bus(2, 2)};
    c.generators = {testcase::unit("A", 1, 0, 50, 0, 0, 10), testcase::unit("B", 2, 0, 200, 0, 0, 20)};
    const auto d = economic_dispatch(c, {{1, 80.0}, {2, 60.0}}, {0.0});
    CHECK(d.feasible);
    CHECK(d.gen_setpoints.at("A") == doctest::Approx(50.0));
    CHECK(d.gen_setpoints.at("B") == doctest::Approx(90.0));
}

TEST_CASE("random six-unit dispatches match vertex enumeration") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> cost(5.0, 60.0), cap(20.0, 200.0), frac(0.0, 0.5);
    int checked = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Generator> units;
        std::vector<double> c, lo, hi;
        double total_lo = 0.0;
        double total_hi = 0.0;
        for (int i = 0; i < 6; ++i) {
            const double pmax = cap(rng);
            const double pmin = frac(rng) * pmax;
            units.push_back(testcase::unit("U" + std::to_string(i), 1, pmin, pmax, 0, 0, cost(rng)));
            c.push_back(merit_cost(units.back()));
            lo.push_back(pmin);
            hi.push_back(pmax);
            total_lo += pmin;
            total_hi += pmax;
        }
        const double demand = total_lo + std::uniform_real_distribution<double>(0.0, 1.0)(rng) * (total_hi - total_lo);
        const auto d = economic_dispatch(single_area(units), {{1, demand}}, {0.0});
        REQUIRE(d.feasible);
        CHECK(d.objective == doctest::Approx(vertex_oracle(c, lo, hi, demand)).epsilon(1e-9));
        ++checked;
    }
    CHECK(checked == 300);
}

TEST_CASE("raising demand never lowers a unit's output") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> cost(5.0, 60.0), cap(20.0, 200.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Generator> units;
        for (int i = 0; i < 5; ++i) {
            const double pmax = cap(rng);
            units.push_back(testcase::unit("U" + std::to_string(i), 1, 0.2 * pmax, pmax, 0, 0, cost(rng)));
        }
        const GridCase c = single_area(units);
        std::map<std::string, double> last;
        for (double demand = 0.0; demand <= 900.0; demand += 25.0) {
            const auto d = economic_dispatch(c, {{1, demand}});
            for (const auto& [id, pg] : d.gen_setpoints) {
                if (last.count(id)) CHECK(pg >= last[id] - 1e-12);
                last[id] = pg;
            }
        }
    }
}

TEST_CASE("average operating cost is the mean of the breakpoint averages") {
    Generator g = testcase::unit("A", 1, 0, 100, 0, 0, 0);
    g.cost_points = {{25, 25 * 12.0}, {50, 50 * 14.0}, {75, 75 * 16.0}, {100, 100 * 18.0}};
    CHECK(average_operating_cost(g) == doctest::Approx(15.0));
    g.heat_rate = 0.0;
    g.fuel_price = 2.0;
    CHECK(fuel_cost_per_mwh(g) == doctest::Approx(2.0 * kDefaultHeatRate));
}

TEST_CASE("opf_check at the exact capacity boundary is working with the slack at its limit") {
    GridCase c = testcase::two_bus();
    c.find_generator("G1")->pgmax = 100.0;
    OpfOptions o;
    o.dispatch.loss_adder = 0.0;
    const auto r = opf_check(c, o);
    CHECK(r.working);
    CHECK(std::abs(r.flow.slack[0].p - 100.0) < 1e-5);
}

TEST_CASE("opf_check reports slack overload") {
    GridCase c = testcase::two_bus();
    c.find_generator("G1")->pgmax = 90.0;
    const auto r = opf_check(c);
    CHECK(r.flow.converged);
    CHECK_FALSE(r.working);
    CHECK(r.reason.find("slack bus 1 P") != std::string::npos);
}
