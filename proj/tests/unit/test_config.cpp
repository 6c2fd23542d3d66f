#include <doctest.h>

#include <string>

#include "genprio/config.hpp"
#include "genprio/error.hpp"

using namespace genprio;

namespace {

std::string message_of(const std::string& text) {
    try {
        parse_run_config(text, "run.conf");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("keys, comments and periods") {
    const RunConfig c = parse_run_config(
        "# header\n"
        "data_dir = /data/rts   \n"
        "methods = uss, mng # trailing\n"
        "window_start = 01/26 1\n"
        "window_end = 02/01 TP-24\n"
        "rows_per_stage = yes\n"
        "loss_adder = 0.03\n"
        "pf_max_iterations = 40\n");
    CHECK(c.data_dir->string() == "/data/rts");
    CHECK(*c.methods == std::vector<Method>{Method::uss, Method::mng});
    CHECK(*c.window_start == 601);
    CHECK(*c.window_end == 768);
    CHECK(*c.rows_per_stage);
    CHECK(*c.loss_adder == 0.03);
    CHECK(*c.pf_max_iterations == 40);
    CHECK_FALSE(c.milp_gap.has_value());
    CHECK_NOTHROW(c.validate());
}

TEST_CASE("errors name the source and line") {
    CHECK(message_of("methods = uss\nsolver_backend = highs\n").find("run.conf:2") != std::string::npos);
    CHECK(message_of("methods = uss\nsolver_backend = highs\n").find("solver_backend") != std::string::npos);
    CHECK(message_of("\n\nloss_adder = lots\n").find("run.conf:3") != std::string::npos);
    CHECK(message_of("parallel_methods = perhaps\n").find("run.conf:1") != std::string::npos);
    CHECK(message_of("just words\n").find("key = value") != std::string::npos);
    CHECK(message_of("methods = uss, lagrange\n").find("lagrange") != std::string::npos);
    CHECK(message_of("window_start = 13/01 1\n").find("run.conf:1") != std::string::npos);
}

TEST_CASE("the bundled config files") {
    const RunConfig ok = load_run_config(GENPRIO_TEST_DATA "/mini5.conf");
    CHECK(*ok.window_start == 1);
    CHECK(*ok.window_end == 4);
    CHECK_THROWS_AS(load_run_config(GENPRIO_TEST_DATA "/bad.conf"), ConfigError);
    CHECK_THROWS_AS(load_run_config(GENPRIO_TEST_DATA "/missing.conf"), ConfigError);
}

TEST_CASE("merge lets set fields win") {
    RunConfig file = parse_run_config("loss_adder = 0.02\nmilp_gap = 0.01\n");
    RunConfig flags;
    flags.loss_adder = 0.05;
    file.merge(flags);
    CHECK(*file.loss_adder == 0.05);
    CHECK(*file.milp_gap == 0.01);
    const BenchOptions b = file.bench_options();
    CHECK(b.opf.dispatch.loss_adder == 0.05);
    CHECK(b.milp.gap_tolerance == 0.01);
}

TEST_CASE("validation") {
    RunConfig c;
    c.window_start = 10;
    c.window_end = 5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.loss_adder = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.pf_tolerance = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.wind_pct = -0.1;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.milp_time_limit = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("method lists") {
    CHECK(parse_methods("all") == std::vector<Method>{Method::uss, Method::milp_uc, Method::mng});
    CHECK(parse_methods("milp,uss,milp_uc") == std::vector<Method>{Method::milp_uc, Method::uss});
    CHECK_THROWS_AS(parse_methods(""), ConfigError);
    CHECK_THROWS_AS(parse_methods("uss,,x"), ConfigError);
    for (Method m : {Method::uss, Method::milp_uc, Method::mng}) CHECK(method_from_string(to_string(m)) == m);
}
