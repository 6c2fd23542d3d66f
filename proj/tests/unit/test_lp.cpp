#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "genprio/lp.hpp"

using namespace genprio;

TEST_CASE("textbook maximisation") {
    // max 3x + 5y s.t. x <= 4, 2y <= 12, 3x + 2y <= 18  ->  x = 2, y = 6, 36
    LinearProgram lp;
    lp.add_variable(-3.0, 4.0);
    lp.add_variable(-5.0);
    lp.add_row({0, 2}, Relation::less_equal, 12);
    lp.add_row({3, 2}, Relation::less_equal, 18);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.objective == doctest::Approx(-36.0));
    CHECK(r.x[0] == doctest::Approx(2.0));
    CHECK(r.x[1] == doctest::Approx(6.0));
}

TEST_CASE("greater-equal and equality rows need phase one") {
    // min x + 2y s.t. x + y >= 3, x - y = 1  ->  x = 2, y = 1
    LinearProgram lp;
    lp.add_variable(1.0);
    lp.add_variable(2.0);
    lp.add_row({1, 1}, Relation::greater_equal, 3);
    lp.add_row({1, -1}, Relation::equal, 1);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.objective == doctest::Approx(4.0));
}

TEST_CASE("negative right-hand sides") {
    // min x s.t. -x <= -5
    LinearProgram lp;
    lp.add_variable(1.0);
    lp.add_row({-1}, Relation::less_equal, -5);
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.x[0] == doctest::Approx(5.0));
}

TEST_CASE("infeasible and unbounded programs are classified") {
    LinearProgram a;
    a.add_variable(1.0, 2.0);
    a.add_row({1}, Relation::greater_equal, 3);
    CHECK(solve_lp(a).status == LpResult::Status::infeasible);

    LinearProgram b;
    b.add_variable(-1.0);
    b.add_variable(0.0);
    b.add_row({1, -1}, Relation::less_equal, 1);
    CHECK(solve_lp(b).status == LpResult::Status::unbounded);
}

TEST_CASE("row width must match the variable count") {
    LinearProgram lp;
    lp.add_variable(1.0);
    CHECK_THROWS_AS(lp.add_row({1, 2}, Relation::equal, 0), std::invalid_argument);
}

TEST_CASE("degenerate programs terminate") {
    // Klee-Minty style cube, n = 6: optimum 5^6 at the far vertex.
    const int n = 6;
    LinearProgram lp;
    for (int j = 0; j < n; ++j) lp.add_variable(-std::pow(2.0, n - 1 - j));
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        for (int j = 0; j < i; ++j) row[j] = std::pow(2.0, i - j + 1);
        row[i] = 1.0;
        lp.add_row(row, Relation::less_equal, std::pow(5.0, i + 1));
    }
    const auto r = solve_lp(lp);
    REQUIRE(r.status == LpResult::Status::optimal);
    CHECK(r.objective == doctest::Approx(-std::pow(5.0, n)));
}

TEST_CASE("box-constrained knapsack relaxations match the greedy optimum") {
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> w(1.0, 10.0), v(1.0, 10.0);
    for (int t = 0; t < 50; ++t) {
        const int n = 8;
        std::vector<double> weight(n), value(n);
        LinearProgram lp;
        for (int i = 0; i < n; ++i) {
            weight[i] = w(rng);
            value[i] = v(rng);
            lp.add_variable(-value[i], 1.0);
        }
        const double cap = 20.0;
        lp.add_row(weight, Relation::less_equal, cap);
        std::vector<int> order(n);
        for (int i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return value[a] / weight[a] > value[b] / weight[b]; });
        double room = cap;
        double best = 0.0;
        for (int i : order) {
            const double take = std::min(1.0, room / weight[i]);
            best += take * value[i];
            room -= take * weight[i];
            if (room <= 0) break;
        }
        const auto r = solve_lp(lp);
        REQUIRE(r.status == LpResult::Status::optimal);
        CHECK(-r.objective == doctest::Approx(best).epsilon(1e-9));
    }
}
