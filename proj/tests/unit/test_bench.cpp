#include <doctest.h>

#include <sstream>

#include "cases.hpp"
#include "genprio/bench.hpp"
#include "genprio/error.hpp"
#include "genprio/ingest.hpp"

using namespace genprio;

namespace {

PeriodRecord rec(const std::string& w, Method m, int p, bool ok, double t, int units, double share) {
    PeriodRecord r;
    r.window = w;
    r.method = m;
    r.period = p;
    r.working = ok;
    r.elapsed = t;
    r.enabled_conventional = units;
    r.renewable_share = share;
    return r;
}

struct Mini {
    GridCase base;
    TimeseriesSet ts;
};

const Mini& mini() {
    static const Mini m = [] {
        Mini x;
        x.base = load_case(GENPRIO_TEST_DATA "/mini5");
        x.ts = load_timeseries(GENPRIO_TEST_DATA "/mini5", x.base);
        return x;
    }();
    return m;
}

}  // namespace

TEST_CASE("aggregation averages per window and method") {
    const std::vector<PeriodRecord> recs = {
        rec("w", Method::uss, 1, true, 0.5, 4, 0.2),  rec("w", Method::uss, 2, false, 1.5, 6, 0.4),
        rec("w", Method::mng, 1, true, 3.0, 2, 0.3),  rec("w", Method::mng, 2, true, 3.0, 3, 0.3),
        rec("v", Method::uss, 3, true, 0.0, 1, 0.0),
    };
    const auto rows = aggregate(recs, {Method::uss, Method::mng});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].window == "w");
    CHECK(rows[0].periods == 2);
    CHECK(rows[0].working == 1);
    CHECK(rows[0].not_working == 1);
    CHECK(rows[0].total_elapsed == doctest::Approx(2.0));
    CHECK(rows[0].avg_enabled_conventional == doctest::Approx(5.0));
    CHECK(rows[0].avg_renewable_share == doctest::Approx(0.3));
    CHECK(rows[0].elapsed_vs_uss == doctest::Approx(1.0));
    CHECK(rows[1].avg_enabled_conventional == doctest::Approx(2.5));
    CHECK(rows[1].elapsed_vs_uss == doctest::Approx(3.0));
    CHECK(rows[2].window == "v");
    CHECK(rows[2].elapsed_vs_uss == 0.0);  // zero USS time gives no ratio
    CHECK(rows[3].periods == 0);
}

TEST_CASE("csv and json renderings parse back") {
    BenchmarkReport report;
    report.periods = {rec("01/01 TP-1 to 01/01 TP-2", Method::uss, 1, true, 0.25, 3, 0.125),
                      rec("01/01 TP-1 to 01/01 TP-2", Method::milp_uc, 1, false, 0.5, 2, 0.25)};
    report.rows = aggregate(report.periods, {Method::uss, Method::milp_uc});
    std::ostringstream csv, json;
    emit_report(csv, report, ReportFormat::csv);
    emit_report(json, report, ReportFormat::json);
    for (const auto& back : {rows_from_csv(csv.str()), rows_from_json(json.str())}) {
        REQUIRE(back.size() == report.rows.size());
        for (std::size_t i = 0; i < back.size(); ++i) {
            CHECK(back[i].window == report.rows[i].window);
            CHECK(back[i].method == report.rows[i].method);
            CHECK(back[i].periods == report.rows[i].periods);
            CHECK(back[i].working == report.rows[i].working);
            CHECK(back[i].not_working == report.rows[i].not_working);
            CHECK(back[i].total_elapsed == doctest::Approx(report.rows[i].total_elapsed));
            CHECK(back[i].avg_enabled_conventional == doctest::Approx(report.rows[i].avg_enabled_conventional));
            CHECK(back[i].avg_renewable_share == doctest::Approx(report.rows[i].avg_renewable_share));
            CHECK(back[i].elapsed_vs_uss == doctest::Approx(report.rows[i].elapsed_vs_uss));
        }
    }
    CHECK(json.str().find("default_heat_rate_mmbtu_per_mwh") != std::string::npos);
}

TEST_CASE("text report layout") {
    BenchmarkReport report;
    report.periods = {rec("W", Method::uss, 1, true, 0.0, 3, 0.25), rec("W", Method::mng, 1, false, 0.0, 4, 0.5)};
    report.rows = aggregate(report.periods, {Method::uss, Method::mng});
    std::ostringstream out;
    emit_report(out, report, ReportFormat::text);
    const std::string expected =
        "W\n"
        "                                           uss         mng\n"
        "Working                                      1           0\n"
        "Not working                                  0           1\n"
        "Total computational time [s]             0.000       0.000\n"
        "Avg. enabled conventional units           3.00        4.00\n"
        "Avg. renewable share                    0.2500      0.5000\n"
        "\n";
    CHECK(out.str() == expected);
}

TEST_CASE("window errors") {
    const auto& m = mini();
    CHECK_THROWS_AS(run_window(m.base, m.ts, {Method::uss}, 5, 4), ConfigError);
    CHECK_THROWS_AS(run_window(m.base, m.ts, {Method::uss}, 40, 60), ConfigError);
    CHECK_THROWS_AS(run_window(m.base, m.ts, {}, 1, 2), ConfigError);
}

TEST_CASE("a short window on the miniature system") {
    const auto& m = mini();
    const auto report = run_window(m.base, m.ts, {Method::uss, Method::mng}, 10, 13);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.periods.size() == 8);
    for (const auto& r : report.rows) {
        CHECK(r.periods == 4);
        CHECK(r.working + r.not_working == 4);
        CHECK(r.total_elapsed > 0.0);
    }
    CHECK(report.find(report.rows[0].window, Method::mng) == &report.rows[1]);
    CHECK(report.find("elsewhere", Method::uss) == nullptr);
    CHECK(aggregate(report.periods, {Method::uss, Method::mng}).size() == 2);
}

TEST_CASE("schedule export lists every unit") {
    const GridCase c = testcase::two_bus();
    Schedule s;
    s.unit_status["G1"] = true;
    s.setpoints["G1"] = {100.0, 12.5};
    std::ostringstream out;
    write_schedule_csv(out, c, s);
    CHECK(out.str() == "unit,type,area,enabled,pg,qg\nG1,conventional,1,1,100.000000,12.500000\n");
}
