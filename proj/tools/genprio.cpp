// genprio command-line front end.
//
//   genprio validate    <data>
//   genprio schedule    --data <dir> --period "01/26 22" [--methods uss,milp,mng]
//   genprio benchmark   --data <dir> --from "01/26 1" --to "02/01 24"
//   genprio restore-sim --data <dir>
//
// Exit codes: 0 success, 1 usage/config, 2 data error, 3 solver failure.

#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>

#include <CLI11.hpp>

#include "genprio/baselines.hpp"
#include "genprio/bench.hpp"
#include "genprio/config.hpp"
#include "genprio/error.hpp"
#include "genprio/ingest.hpp"
#include "genprio/scenario.hpp"
#include "genprio/uss.hpp"

namespace {

using namespace genprio;
namespace fs = std::filesystem;

enum Exit { ok = 0, usage = 1, data = 2, solver = 3 };

struct Flags {
    std::string config;
    std::string data_dir;
    std::string output_dir;
    std::string methods;
    std::string from;
    std::string to;
    std::string period;
    std::string stages;
    bool csz = false;
    bool per_stage = false;
    bool parallel = false;
    bool trace = false;
    bool dump_lp = false;
    bool expect_rts = false;
};

RunConfig resolve(const Flags& f) {
    RunConfig cfg;
    if (!f.config.empty()) cfg = load_run_config(f.config);
    RunConfig over;
    if (!f.data_dir.empty()) over.data_dir = f.data_dir;
    if (!f.output_dir.empty()) over.output_dir = f.output_dir;
    if (!f.methods.empty()) over.methods = parse_methods(f.methods);
    if (!f.from.empty()) over.window_start = parse_period(f.from);
    if (!f.to.empty()) over.window_end = parse_period(f.to);
    if (!f.stages.empty()) over.stage_config = f.stages;
    if (f.per_stage) over.rows_per_stage = true;
    if (f.parallel) over.parallel_methods = true;
    cfg.merge(over);
    cfg.validate();
    if (!cfg.data_dir) throw ConfigError("no data directory given (--data or data_dir)");
    return cfg;
}

struct Dataset {
    GridCase grid;
    TimeseriesSet ts;
    Diagnostics diag;
};

Dataset load(const fs::path& dir) {
    Dataset d;
    d.grid = load_case(dir, &d.diag);
    d.ts = load_timeseries(dir, d.grid, {}, &d.diag);
    for (const auto& w : d.diag.warnings) std::cerr << "warning: " << w << '\n';
    return d;
}

std::vector<RestorationStage> stages_for(const RunConfig& cfg, bool csz) {
    if (cfg.stage_config) return load_stage_config(*cfg.stage_config);
    if (csz) return default_csz_stages();
    return {};
}

int cmd_validate(const Flags& f) {
    if (f.data_dir.empty()) throw ConfigError("validate needs a data directory");
    Dataset d = load(f.data_dir);
    d.grid.validate();
    const StructuralCounts c = count_structure(d.grid);
    struct Line {
        const char* label;
        int value;
        int rts;
    };
    const Line lines[] = {
        {"buses", c.buses, 73},
        {"branches", c.branches, 120},
        {"generators", c.generators, 158},
        {"conventional", c.conventional, 72},
        {"renewable", c.renewable, 82},
        {"loads", c.loads, 51},
        {"periods", d.ts.period_count, kPeriodsIn2020},
    };
    bool matches = true;
    std::cout << std::left << std::setw(14) << "" << std::right << std::setw(8) << "found" << std::setw(10)
              << "RTS-GMLC" << '\n';
    for (const auto& l : lines) {
        std::cout << std::left << std::setw(14) << l.label << std::right << std::setw(8) << l.value
                  << std::setw(10) << l.rts << (l.value == l.rts ? "" : "  (differs)") << '\n';
        matches = matches && l.value == l.rts;
    }
    std::cout << "sync conds " << c.sync_conds << ", storage " << c.storage << ", timeseries "
              << format_period(d.ts.first_period) << " to " << format_period(d.ts.last_period()) << '\n';
    std::cout << c.buses << " buses, " << c.branches << " branches, " << c.generators << " generators ("
              << c.conventional << " conventional + " << c.renewable << " renewable), " << c.loads << " loads, "
              << d.ts.period_count << " periods\n";
    if (f.expect_rts && !matches) {
        std::cerr << "error: structure differs from the RTS-GMLC reference counts\n";
        return data;
    }
    return ok;
}

void print_summary(const GridCase& grid, const Schedule& s) {
    std::cout << std::left << std::setw(5) << to_string(s.method) << ' ' << format_period(s.period) << ": "
              << (s.feasible ? "working" : "not working") << ", "
              << s.enabled_count(grid, GenType::conventional) << " conventional units, renewable share "
              << std::fixed << std::setprecision(3) << renewable_share(grid, s) << ", " << std::setprecision(4)
              << s.elapsed << " s";
    if (s.method == Method::uss) std::cout << " (step " << s.step_reached << ")";
    std::cout << '\n' << std::defaultfloat;
}

int cmd_schedule(const Flags& f) {
    RunConfig cfg = resolve(f);
    if (f.period.empty()) throw ConfigError("schedule needs --period");
    const int period = parse_period(f.period);
    Dataset d = load(*cfg.data_dir);
    if (!d.ts.contains(period)) throw ConfigError("period " + format_period(period) + " is outside the timeseries");

    BenchOptions opts = cfg.bench_options();
    if (f.trace) opts.opf.power_flow.trace = &std::cerr;
    const auto stages = stages_for(cfg, f.csz);
    if (!stages.empty()) opts.scenario.stages = &stages;
    const GridCase grid = build_period_case(d.grid, d.ts, period, opts.scenario);
    const fs::path out = cfg.output_dir.value_or("genprio_out");
    if (f.dump_lp) opts.milp.dump_dir = out / "milp";

    for (Method m : cfg.methods.value_or(std::vector<Method>{Method::uss, Method::milp_uc, Method::mng})) {
        Schedule s;
        OpfResult check;
        std::vector<GpwdBreakdown> ranking;
        if (m == Method::uss) {
            UssRun r = run_uss(grid, period, nullptr, opts.opf);
            s = r.schedule;
            check = r.check;
            ranking = r.ranking;
        } else if (m == Method::milp_uc) {
            MilpRun r = run_milp_uc(grid, period, nullptr, opts.milp, opts.opf);
            s = r.schedule;
            check = r.check;
        } else {
            MngRun r = run_mng(grid, period, nullptr, opts.opf);
            s = r.schedule;
            check = r.check;
            ranking = r.ranking;
        }
        const fs::path dir = out / "schedules" / std::string(to_string(m));
        fs::create_directories(dir);
        std::ofstream sf(dir / (std::to_string(period) + ".csv"));
        write_schedule_csv(sf, grid, s);
        if (!ranking.empty()) {
            fs::create_directories(out / "gpwd");
            std::ofstream gf(out / "gpwd" / (std::to_string(period) + ".csv"));
            write_gpwd_csv(gf, ranking);
        }
        print_summary(grid, s);
        if (!check.working) std::cout << "      " << check.reason << '\n';
    }
    return ok;
}

int run_bench(const Flags& f, bool restoration) {
    RunConfig cfg = resolve(f);
    Dataset d = load(*cfg.data_dir);
    BenchOptions opts = cfg.bench_options();
    if (f.trace) opts.opf.power_flow.trace = &std::cerr;
    const auto stages = stages_for(cfg, restoration);
    if (!stages.empty()) opts.scenario.stages = &stages;
    if (restoration) opts.rows_per_stage = !cfg.rows_per_stage || *cfg.rows_per_stage;

    int first = d.ts.first_period;
    int last = d.ts.last_period();
    if (restoration && !stages.empty()) {
        first = stages.front().first_period;
        last = stages.back().last_period;
    }
    first = cfg.window_start.value_or(first);
    last = cfg.window_end.value_or(last);

    const fs::path out = cfg.output_dir.value_or("genprio_out");
    opts.output_dir = out;
    if (f.dump_lp) opts.milp.dump_dir = out;
    const auto methods = cfg.methods.value_or(std::vector<Method>{Method::uss, Method::milp_uc, Method::mng});
    const BenchmarkReport report = run_window(d.grid, d.ts, methods, first, last, opts);
    write_report_files(out, report);
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    emit_report(std::cout, report, ReportFormat::text);
    std::cout << "reports written to " << out.string() << '\n';
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generation prioritization for power-system restoration"};
    app.require_subcommand(1);
    Flags f;

    auto common = [&f](CLI::App* sub) {
        sub->add_option("-c,--config", f.config, "config file (key = value)");
        sub->add_option("-d,--data", f.data_dir, "dataset directory");
        sub->add_option("-o,--out", f.output_dir, "output directory");
        sub->add_option("-m,--methods", f.methods, "uss,milp,mng or all");
        sub->add_option("--stages", f.stages, "restoration stage file");
        sub->add_flag("--trace", f.trace, "dump power-flow iterations to stderr");
        sub->add_flag("--dump-lp", f.dump_lp, "write every MILP instance in LP format");
    };

    auto* validate = app.add_subcommand("validate", "ingest a dataset and print structural counts");
    validate->add_option("data", f.data_dir, "dataset directory")->required();
    validate->add_flag("--expect-rts", f.expect_rts, "fail unless the counts match RTS-GMLC");

    auto* schedule = app.add_subcommand("schedule", "schedule a single period");
    common(schedule);
    schedule->add_option("-p,--period", f.period, "\"MM/DD H\" or hour-of-year index")->required();
    schedule->add_flag("--csz", f.csz, "apply the default Cascadia restoration stages");

    auto* benchmark = app.add_subcommand("benchmark", "run the methods over a window of periods");
    common(benchmark);
    benchmark->add_option("--from", f.from, "first period, \"MM/DD H\"");
    benchmark->add_option("--to", f.to, "last period, \"MM/DD H\"");
    benchmark->add_flag("--per-stage", f.per_stage, "one row group per restoration stage");
    benchmark->add_flag("--parallel", f.parallel, "run methods concurrently (timings not comparable)");

    auto* restore = app.add_subcommand("restore-sim", "benchmark over the Cascadia restoration timeline");
    common(restore);
    restore->add_option("--from", f.from, "first period, \"MM/DD H\"");
    restore->add_option("--to", f.to, "last period, \"MM/DD H\"");
    restore->add_flag("--parallel", f.parallel, "run methods concurrently (timings not comparable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (validate->parsed()) return cmd_validate(f);
        if (schedule->parsed()) return cmd_schedule(f);
        if (benchmark->parsed()) return run_bench(f, false);
        if (restore->parsed()) return run_bench(f, true);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return data;
    } catch (const SolverError& e) {
        std::cerr << "solver error: " << e.what() << '\n';
        return solver;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return data;
    }
    return usage;
}
