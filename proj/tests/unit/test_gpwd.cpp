#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "cases.hpp"
#include "genprio/gpwd.hpp"
#include "genprio/ingest.hpp"
#include "genprio/scenario.hpp"

using namespace genprio;

TEST_CASE("prior state") {
    Schedule prev;
    prev.unit_status = {{"A", true}, {"B", false}};
    CHECK(prior_state("A", &prev) == 1.0);
    CHECK(prior_state("B", &prev) == 0.0);
    CHECK(prior_state("C", &prev) == 0.0);
    CHECK(prior_state("A", nullptr) == 0.0);
}

TEST_CASE("maximum power brackets") {
    CHECK(maximum_power_score(0.96, 0.85) == 0.75);
    CHECK(maximum_power_score(1.0, 1.0) == 1.0);
    CHECK(maximum_power_score(0.10, 0.10) == 0.0);
    // Upper edges belong to the lower bracket.
    CHECK(maximum_power_score(0.95, 0.0) == 0.25);
    CHECK(maximum_power_score(0.80, 0.0) == 0.0);
    CHECK(maximum_power_score(std::nextafter(0.95, 1.0), 0.0) == 0.5);
    CHECK(maximum_power_score(0.0, std::nextafter(0.80, 1.0)) == 0.25);
}

TEST_CASE("ratio terms are relative to the largest raw ratio") {
    Generator a = testcase::unit("A", 1, 20, 100, -10, 10);  // 2
    Generator b = testcase::unit("B", 1, 40, 100, -10, 10);  // 4
    auto r = ratio_terms({&a, &b});
    CHECK(r.at("A") == doctest::Approx(0.5));
    CHECK(r.at("B") == doctest::Approx(1.0));

    CHECK(ratio_terms({&a}).at("A") == doctest::Approx(1.0));

    Generator c = testcase::unit("C", 1, 5, 100, 0, 0);
    r = ratio_terms({&a, &b, &c});
    CHECK(r.at("C") == 1.0);
    CHECK(r.at("B") == doctest::Approx(1.0));

    Generator z1 = testcase::unit("Z1", 1, 0, 100, -10, 10);
    Generator z2 = testcase::unit("Z2", 1, 0, 50, -10, 20);
    r = ratio_terms({&z1, &z2});
    CHECK(r.at("Z1") == 0.0);
    CHECK(r.at("Z2") == 0.0);
}

TEST_CASE("hand-computed ranking on six units at one bus") {
    // All units share the slack bus, so the probe splits P by pgmax and Q by
    // the common position in each unit's symmetric range, i.e. by qgmax.
    struct Spec {
        const char* id;
        double pgmin, pgmax, qgmax;
    };
    const Spec specs[] = {{"U1", 20, 100, 50}, {"U2", 40, 96, 30}, {"U3", 10, 85, 48},
                          {"U4", 45, 50, 10},  {"U5", 0, 40, 45},  {"U6", 5, 20, 5}};
    GridCase c = testcase::two_bus();
    c.generators.clear();
    for (const auto& s : specs) c.generators.push_back(testcase::unit(s.id, 1, s.pgmin, s.pgmax, -s.qgmax, s.qgmax));
    assign_slack_buses(c);
    Schedule prev;
    prev.unit_status["U4"] = true;

    // Sums: pgmax 391, qgmax 188; largest raw pgmin/qgmax is U4's 4.5.
    const double expected_gpwd[] = {
        0 + 100.0 / 391 + 50.0 / 188 + 1.0 - (20.0 / 50) / 4.5,   // U1: mp 0.5 + 0.5
        0 + 96.0 / 391 + 30.0 / 188 + 0.5 - (40.0 / 30) / 4.5,    // U2: 96% -> 0.5, 60% -> 0
        0 + 85.0 / 391 + 48.0 / 188 + 0.75 - (10.0 / 48) / 4.5,   // U3: 85% -> 0.25, 96% -> 0.5
        1 + 50.0 / 391 + 10.0 / 188 + 0.0 - 1.0,                  // U4: prior on
        0 + 40.0 / 391 + 45.0 / 188 + 0.25 - 0.0,                 // U5: qgmax 90% -> 0.25
        0 + 20.0 / 391 + 5.0 / 188 + 0.0 - (5.0 / 5) / 4.5,       // U6
    };
    const auto ranking = rank_units(c, &prev);
    REQUIRE(ranking.size() == 6);
    std::vector<std::pair<double, std::string>> expect;
    for (int i = 0; i < 6; ++i) {
        const auto it = std::find_if(ranking.begin(), ranking.end(),
                                     [&](const GpwdBreakdown& b) { return b.unit_id == specs[i].id; });
        REQUIRE(it != ranking.end());
        CHECK(it->gpwd == doctest::Approx(std::max(0.0, expected_gpwd[i])).epsilon(1e-9));
        expect.emplace_back(-std::max(0.0, expected_gpwd[i]), specs[i].id);
    }
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 6; ++i) CHECK(ranking[i].unit_id == expect[i].second);
}

TEST_CASE("identical units rank by id and a prior-enabled twin ranks first") {
    GridCase c = testcase::two_bus();
    c.generators = {testcase::unit("C", 1, 10, 100, -50, 50), testcase::unit("A", 1, 10, 100, -50, 50),
                    testcase::unit("B", 1, 10, 100, -50, 50)};
    assign_slack_buses(c);
    auto r = rank_units(c, nullptr);
    CHECK(r[0].unit_id == "A");
    CHECK(r[1].unit_id == "B");
    CHECK(r[2].unit_id == "C");

    Schedule prev;
    prev.unit_status["C"] = true;
    r = rank_units(c, &prev);
    CHECK(r[0].unit_id == "C");
}

TEST_CASE("negative factors are clamped to zero and disabled units score zero") {
    GridCase c = testcase::two_bus();
    c.generators = {testcase::unit("BIG", 1, 0, 300, -200, 200), testcase::unit("POOR", 2, 9, 10, -1, 1),
                    testcase::unit("OFF", 2, 0, 300, -200, 200)};
    c.find_generator("OFF")->status = false;
    assign_slack_buses(c);
    const auto r = rank_units(c, nullptr);
    for (const auto& b : r) {
        CHECK(b.gpwd >= 0.0);
        if (b.unit_id == "OFF") {
            CHECK_FALSE(b.eligible);
            CHECK(b.gpwd == 0.0);
        }
        if (b.unit_id == "POOR") {
            CHECK(b.ps + b.apf_p + b.apf_q + b.mp - b.ratio_term < 0.0);
            CHECK(b.gpwd == 0.0);
        }
    }
}

TEST_CASE("one unit in an area takes the whole participation") {
    GridCase c = testcase::two_bus();
    const auto f = area_participation_factors(c);
    CHECK(f.factors.at("G1").first == doctest::Approx(1.0));
    CHECK(f.factors.at("G1").second == doctest::Approx(1.0));
}

TEST_CASE("participation factors sum to one per area on the fixture") {
    const GridCase base = load_case(GENPRIO_FIXTURE);
    const auto ts = load_timeseries(GENPRIO_FIXTURE, base);
    for (int p : {601, 615, 700}) {
        const GridCase c = build_period_case(base, ts, p);
        const auto f = area_participation_factors(c);
        CHECK(f.warnings.empty());
        std::map<int, std::pair<double, double>> sums;
        for (const auto& [id, pq] : f.factors) {
            const auto& g = *c.find_generator(id);
            sums[c.area_of(g)].first += pq.first;
            sums[c.area_of(g)].second += pq.second;
        }
        REQUIRE(sums.size() == 3);
        for (const auto& [area, s] : sums) {
            CHECK(std::abs(s.first - 1.0) <= 1e-9);
            CHECK(std::abs(s.second - 1.0) <= 1e-9);
        }
        const auto ranking = rank_units(c, nullptr);
        std::set<std::string> ids;
        for (const auto& b : ranking) {
            CHECK(b.gpwd >= 0.0);
            CHECK(b.gpwd <= 4.0);
            ids.insert(b.unit_id);
        }
        CHECK(ids.size() == ranking.size());
        CHECK(ranking.size() == f.factors.size());
    }
}

TEST_CASE("ranking is deterministic and exported with ranks") {
    const GridCase base = load_case(GENPRIO_TEST_DATA "/mini5");
    const auto ts = load_timeseries(GENPRIO_TEST_DATA "/mini5", base);
    const GridCase c = build_period_case(base, ts, 9);
    const auto a = rank_units(c, nullptr);
    const auto b = rank_units(c, nullptr);
    std::ostringstream x, y;
    write_gpwd_csv(x, a);
    write_gpwd_csv(y, b);
    const std::string text = x.str();
    CHECK(text == y.str());
    CHECK(text.rfind("unit,ps,apf_p,apf_q,mp,ratio_term,gpwd,rank\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
