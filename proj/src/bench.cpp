#include "genprio/bench.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <iomanip>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "genprio/csv.hpp"
#include "genprio/error.hpp"
#include "genprio/uss.hpp"

namespace genprio {

double renewable_share(const GridCase& grid, const PowerFlowSolution& solution) {
    double load = 0.0;
    for (const auto& b : grid.buses) {
        if (b.in_service) load += b.pd;
    }
    double renewable = 0.0;
    for (const auto& g : grid.generators) {
        if (!is_renewable(g.type)) continue;
        if (auto it = solution.gen_outputs.find(g.id); it != solution.gen_outputs.end()) renewable += it->second.pg;
    }
    return load > 0.0 ? renewable / load : 0.0;
}

double renewable_share(const GridCase& grid, const Schedule& schedule) {
    double load = 0.0;
    for (const auto& b : grid.buses) {
        if (b.in_service) load += b.pd;
    }
    double renewable = 0.0;
    for (const auto& g : grid.generators) {
        if (!is_renewable(g.type)) continue;
        if (auto it = schedule.setpoints.find(g.id); it != schedule.setpoints.end()) renewable += it->second.pg;
    }
    return load > 0.0 ? renewable / load : 0.0;
}

const MethodRow* BenchmarkReport::find(const std::string& window, Method method) const {
    for (const auto& r : rows) {
        if (r.window == window && r.method == method) return &r;
    }
    return nullptr;
}

void write_schedule_csv(std::ostream& out, const GridCase& grid, const Schedule& schedule) {
    out << "unit,type,area,enabled,pg,qg\n" << std::fixed << std::setprecision(6);
    for (const auto& g : grid.generators) {
        const bool on = schedule.enabled(g.id);
        Setpoint sp;
        if (auto it = schedule.setpoints.find(g.id); it != schedule.setpoints.end()) sp = it->second;
        out << g.id << ',' << to_string(g.type) << ',' << grid.area_of(g) << ',' << (on ? 1 : 0) << ','
            << sp.pg << ',' << sp.qg << '\n';
    }
}

namespace {

struct PeriodCase {
    int period = 0;
    std::string window;
    GridCase grid;
};

std::string window_name(int first, int last) { return format_period(first) + " to " + format_period(last); }

struct Outcome {
    Schedule schedule;
    std::vector<GpwdBreakdown> ranking;
};

Outcome schedule_once(Method method, const GridCase& grid, int period, const Schedule* prev,
                      const BenchOptions& options) {
    switch (method) {
        case Method::uss: {
            UssRun r = run_uss(grid, period, prev, options.opf);
            return {std::move(r.schedule), std::move(r.ranking)};
        }
        case Method::milp_uc: {
            MilpOptions milp = options.milp;
            if (milp.dump_dir) *milp.dump_dir /= "milp";
            MilpRun r = run_milp_uc(grid, period, prev, milp, options.opf);
            return {std::move(r.schedule), {}};
        }
        case Method::mng: {
            MngRun r = run_mng(grid, period, prev, options.opf);
            return {std::move(r.schedule), std::move(r.ranking)};
        }
    }
    return {};
}

std::vector<PeriodRecord> run_method(Method method, const std::vector<PeriodCase>& cases,
                                     const BenchOptions& options, bool write_gpwd) {
    std::vector<PeriodRecord> records;
    std::optional<Schedule> prev;
    for (const auto& pc : cases) {
        PeriodRecord rec;
        rec.window = pc.window;
        rec.method = method;
        rec.period = pc.period;
        Outcome outcome;
        try {
            outcome = schedule_once(method, pc.grid, pc.period, prev ? &*prev : nullptr, options);
        } catch (const std::exception& e) {
            outcome.schedule.period = pc.period;
            outcome.schedule.method = method;
            outcome.schedule.feasible = false;
            rec.error = e.what();
        }
        const Schedule& s = outcome.schedule;
        rec.working = s.feasible;
        rec.elapsed = s.elapsed;
        rec.enabled_conventional = s.enabled_count(pc.grid, GenType::conventional);
        rec.renewable_share = renewable_share(pc.grid, s);
        rec.step_reached = s.step_reached;
        records.push_back(rec);

        if (options.output_dir) {
            const auto dir = *options.output_dir / "schedules" / std::string(to_string(method));
            std::filesystem::create_directories(dir);
            std::ofstream f(dir / (std::to_string(pc.period) + ".csv"));
            write_schedule_csv(f, pc.grid, s);
            if (write_gpwd && !outcome.ranking.empty()) {
                const auto gdir = *options.output_dir / "gpwd";
                std::filesystem::create_directories(gdir);
                std::ofstream g(gdir / (std::to_string(pc.period) + ".csv"));
                write_gpwd_csv(g, outcome.ranking);
            }
        }
        prev = s;
    }
    return records;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

}  // namespace

std::vector<MethodRow> aggregate(const std::vector<PeriodRecord>& periods, const std::vector<Method>& methods) {
    std::vector<std::string> windows;
    for (const auto& p : periods) {
        if (std::find(windows.begin(), windows.end(), p.window) == windows.end()) windows.push_back(p.window);
    }
    std::vector<MethodRow> rows;
    for (const auto& w : windows) {
        const std::size_t first_row = rows.size();
        for (Method m : methods) {
            MethodRow row;
            row.window = w;
            row.method = m;
            for (const auto& p : periods) {
                if (p.window != w || p.method != m) continue;
                ++row.periods;
                (p.working ? row.working : row.not_working) += 1;
                row.total_elapsed += p.elapsed;
                row.avg_enabled_conventional += p.enabled_conventional;
                row.avg_renewable_share += p.renewable_share;
            }
            if (row.periods > 0) {
                row.avg_enabled_conventional /= row.periods;
                row.avg_renewable_share /= row.periods;
            }
            rows.push_back(row);
        }
        const MethodRow* uss = nullptr;
        for (std::size_t i = first_row; i < rows.size(); ++i) {
            if (rows[i].method == Method::uss) uss = &rows[i];
        }
        if (uss && uss->total_elapsed > 0.0) {
            const double base = uss->total_elapsed;
            for (std::size_t i = first_row; i < rows.size(); ++i) rows[i].elapsed_vs_uss = rows[i].total_elapsed / base;
        }
    }
    return rows;
}

BenchmarkReport run_window(const GridCase& base, const TimeseriesSet& ts, const std::vector<Method>& methods,
                           int first, int last, const BenchOptions& options) {
    if (first > last) throw ConfigError("empty benchmark window");
    if (!ts.contains(first) || !ts.contains(last)) {
        throw ConfigError("window " + window_name(first, last) + " lies outside the timeseries (" +
                          window_name(ts.first_period, ts.last_period()) + ")");
    }
    if (methods.empty()) throw ConfigError("no methods selected");

    BenchmarkReport report;
    std::vector<PeriodCase> cases;
    cases.reserve(static_cast<std::size_t>(last - first + 1));
    const std::string whole = window_name(first, last);
    for (int p = first; p <= last; ++p) {
        PeriodCase pc;
        pc.period = p;
        pc.window = whole;
        if (options.rows_per_stage && options.scenario.stages) {
            const RestorationStage* st = stage_for_period(*options.scenario.stages, p);
            pc.window = st ? st->name : "unstaged";
        }
        ShapingSummary summary;
        pc.grid = build_period_case(base, ts, p, options.scenario, &summary);
        if (summary.floor_shortfall_mw > 1e-6) {
            std::ostringstream w;
            w << format_period(p) << ": renewable floor short by " << summary.floor_shortfall_mw << " MW";
            report.warnings.push_back(w.str());
        }
        cases.push_back(std::move(pc));
    }

    const Method gpwd_owner =
        std::find(methods.begin(), methods.end(), Method::uss) != methods.end() ? Method::uss : Method::mng;
    std::vector<std::vector<PeriodRecord>> per_method(methods.size());
    if (options.parallel_methods && methods.size() > 1) {
        report.warnings.push_back("methods ran concurrently; elapsed times are not comparable");
        std::vector<std::future<std::vector<PeriodRecord>>> jobs;
        for (Method m : methods) {
            jobs.push_back(std::async(std::launch::async, run_method, m, std::cref(cases), std::cref(options),
                                      m == gpwd_owner));
        }
        for (std::size_t i = 0; i < jobs.size(); ++i) per_method[i] = jobs[i].get();
    } else {
        for (std::size_t i = 0; i < methods.size(); ++i) {
            per_method[i] = run_method(methods[i], cases, options, methods[i] == gpwd_owner);
        }
    }
    for (auto& recs : per_method) {
        for (auto& r : recs) {
            if (!r.error.empty()) {
                report.warnings.push_back(std::string(to_string(r.method)) + " " + format_period(r.period) +
                                          ": " + r.error);
            }
            report.periods.push_back(std::move(r));
        }
    }
    report.rows = aggregate(report.periods, methods);
    return report;
}

namespace {

const char* kCsvHeader =
    "window,method,periods,working,not_working,total_elapsed,avg_enabled_conventional,"
    "avg_renewable_share,elapsed_vs_uss";

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit_csv(std::ostream& out, const BenchmarkReport& report) {
    out << kCsvHeader << '\n' << std::fixed << std::setprecision(6);
    for (const auto& r : report.rows) {
        out << csv_cell(r.window) << ',' << to_string(r.method) << ',' << r.periods << ',' << r.working << ','
            << r.not_working << ',' << round6(r.total_elapsed) << ',' << round6(r.avg_enabled_conventional) << ','
            << round6(r.avg_renewable_share) << ',' << round6(r.elapsed_vs_uss) << '\n';
    }
}

void emit_json(std::ostream& out, const BenchmarkReport& report) {
    nlohmann::ordered_json j;
    j["default_heat_rate_mmbtu_per_mwh"] = report.default_heat_rate;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        nlohmann::ordered_json row;
        row["window"] = r.window;
        row["method"] = std::string(to_string(r.method));
        row["periods"] = r.periods;
        row["working"] = r.working;
        row["not_working"] = r.not_working;
        row["total_elapsed"] = round6(r.total_elapsed);
        row["avg_enabled_conventional"] = round6(r.avg_enabled_conventional);
        row["avg_renewable_share"] = round6(r.avg_renewable_share);
        row["elapsed_vs_uss"] = round6(r.elapsed_vs_uss);
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    j["warnings"] = report.warnings;
    out << j.dump(2) << '\n';
}

void emit_text(std::ostream& out, const BenchmarkReport& report) {
    std::vector<std::string> windows;
    for (const auto& r : report.rows) {
        if (std::find(windows.begin(), windows.end(), r.window) == windows.end()) windows.push_back(r.window);
    }
    out << std::fixed;
    for (const auto& w : windows) {
        std::vector<const MethodRow*> rows;
        for (const auto& r : report.rows) {
            if (r.window == w) rows.push_back(&r);
        }
        out << w << '\n';
        out << std::left << std::setw(34) << "";
        for (const auto* r : rows) out << std::right << std::setw(12) << to_string(r->method);
        out << '\n';
        auto line = [&](const char* label, auto value, int precision) {
            out << std::left << std::setw(34) << label << std::setprecision(precision);
            for (const auto* r : rows) out << std::right << std::setw(12) << value(*r);
            out << '\n';
        };
        line("Working", [](const MethodRow& r) { return r.working; }, 0);
        line("Not working", [](const MethodRow& r) { return r.not_working; }, 0);
        line("Total computational time [s]", [](const MethodRow& r) { return round6(r.total_elapsed); }, 3);
        line("Avg. enabled conventional units", [](const MethodRow& r) { return round6(r.avg_enabled_conventional); }, 2);
        line("Avg. renewable share", [](const MethodRow& r) { return round6(r.avg_renewable_share); }, 4);
        out << '\n';
    }
}

}  // namespace

void emit_report(std::ostream& out, const BenchmarkReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::csv: emit_csv(out, report); break;
        case ReportFormat::json: emit_json(out, report); break;
        case ReportFormat::text: emit_text(out, report); break;
    }
}

void write_report_files(const std::filesystem::path& dir, const BenchmarkReport& report) {
    std::filesystem::create_directories(dir);
    const std::pair<const char*, ReportFormat> files[] = {
        {"report.csv", ReportFormat::csv}, {"report.json", ReportFormat::json}, {"report.txt", ReportFormat::text}};
    for (const auto& [name, fmt] : files) {
        std::ofstream f(dir / name);
        if (!f) throw ConfigError("cannot write " + (dir / name).string());
        emit_report(f, report, fmt);
    }
}

std::vector<MethodRow> rows_from_csv(const std::string& text) {
    const CsvTable t = CsvTable::parse(text, "report.csv");
    std::vector<MethodRow> rows;
    for (std::size_t i = 0; i < t.row_count(); ++i) {
        MethodRow r;
        r.window = t.text(i, t.column("window"));
        r.method = method_from_string(t.text(i, t.column("method")));
        r.periods = t.integer(i, t.column("periods"));
        r.working = t.integer(i, t.column("working"));
        r.not_working = t.integer(i, t.column("not_working"));
        r.total_elapsed = t.number(i, t.column("total_elapsed"));
        r.avg_enabled_conventional = t.number(i, t.column("avg_enabled_conventional"));
        r.avg_renewable_share = t.number(i, t.column("avg_renewable_share"));
        r.elapsed_vs_uss = t.number(i, t.column("elapsed_vs_uss"));
        rows.push_back(r);
    }
    return rows;
}

std::vector<MethodRow> rows_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    std::vector<MethodRow> rows;
    for (const auto& o : j.at("rows")) {
        MethodRow r;
        r.window = o.at("window").get<std::string>();
        r.method = method_from_string(o.at("method").get<std::string>());
        r.periods = o.at("periods").get<int>();
        r.working = o.at("working").get<int>();
        r.not_working = o.at("not_working").get<int>();
        r.total_elapsed = o.at("total_elapsed").get<double>();
        r.avg_enabled_conventional = o.at("avg_enabled_conventional").get<double>();
        r.avg_renewable_share = o.at("avg_renewable_share").get<double>();
        r.elapsed_vs_uss = o.at("elapsed_vs_uss").get<double>();
        rows.push_back(r);
    }
    return rows;
}

}  // namespace genprio
