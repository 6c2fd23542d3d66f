#include "genprio/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "genprio/error.hpp"
#include "genprio/ingest.hpp"

namespace genprio {

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("not a number: '" + v + "'");
    return out;
}

int to_int(const std::string& v) {
    int out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size()) throw ConfigError("not an integer: '" + v + "'");
    return out;
}

bool to_bool(const std::string& v) {
    if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
    if (v == "false" || v == "no" || v == "0" || v == "off") return false;
    throw ConfigError("not a boolean: '" + v + "'");
}

template <typename T>
void take(std::optional<T>& dst, const std::optional<T>& src) {
    if (src) dst = src;
}

}  // namespace

std::vector<Method> parse_methods(const std::string& text) {
    const std::string t = trim(text);
    if (t == "all") return {Method::uss, Method::milp_uc, Method::mng};
    std::vector<Method> out;
    std::stringstream ss(t);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const Method m = method_from_string(trim(item));
        if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
    }
    if (out.empty()) throw ConfigError("empty method list");
    return out;
}

void RunConfig::merge(const RunConfig& o) {
    take(data_dir, o.data_dir);
    take(output_dir, o.output_dir);
    take(methods, o.methods);
    take(window_start, o.window_start);
    take(window_end, o.window_end);
    take(stage_config, o.stage_config);
    take(rows_per_stage, o.rows_per_stage);
    take(parallel_methods, o.parallel_methods);
    take(solar_pct, o.solar_pct);
    take(hydro_pct, o.hydro_pct);
    take(wind_pct, o.wind_pct);
    take(other_pct, o.other_pct);
    take(min_renewable_pct, o.min_renewable_pct);
    take(pf_tolerance, o.pf_tolerance);
    take(pf_max_iterations, o.pf_max_iterations);
    take(loss_adder, o.loss_adder);
    take(enforce_branch_ratings, o.enforce_branch_ratings);
    take(milp_gap, o.milp_gap);
    take(milp_time_limit, o.milp_time_limit);
}

void RunConfig::validate() const {
    if (window_start && window_end && *window_start > *window_end) {
        throw ConfigError("window_start is after window_end");
    }
    bench_options().scenario.goal.validate();
    if (pf_tolerance && !(*pf_tolerance > 0.0)) throw ConfigError("pf_tolerance must be positive");
    if (pf_max_iterations && *pf_max_iterations < 1) throw ConfigError("pf_max_iterations must be >= 1");
    if (loss_adder && !(*loss_adder >= 0.0 && *loss_adder < 1.0)) throw ConfigError("loss_adder must lie in [0, 1)");
    if (milp_gap && !(*milp_gap >= 0.0)) throw ConfigError("milp_gap must be >= 0");
    if (milp_time_limit && !(*milp_time_limit > 0.0)) throw ConfigError("milp_time_limit must be positive");
}

BenchOptions RunConfig::bench_options() const {
    BenchOptions b;
    auto& g = b.scenario.goal;
    g.solar_pct = solar_pct.value_or(g.solar_pct);
    g.hydro_pct = hydro_pct.value_or(g.hydro_pct);
    g.wind_pct = wind_pct.value_or(g.wind_pct);
    g.other_pct = other_pct.value_or(g.other_pct);
    g.min_renewable_pct = min_renewable_pct.value_or(g.min_renewable_pct);
    b.opf.power_flow.tolerance = pf_tolerance.value_or(b.opf.power_flow.tolerance);
    b.opf.power_flow.max_iterations = pf_max_iterations.value_or(b.opf.power_flow.max_iterations);
    b.opf.dispatch.loss_adder = loss_adder.value_or(b.opf.dispatch.loss_adder);
    b.opf.enforce_branch_ratings = enforce_branch_ratings.value_or(false);
    b.milp.gap_tolerance = milp_gap.value_or(b.milp.gap_tolerance);
    b.milp.time_limit = milp_time_limit.value_or(b.milp.time_limit);
    b.rows_per_stage = rows_per_stage.value_or(false);
    b.parallel_methods = parallel_methods.value_or(false);
    return b;
}

RunConfig parse_run_config(const std::string& text, const std::string& source) {
    RunConfig c;
    using Setter = std::function<void(const std::string&)>;
    const std::map<std::string, Setter> keys = {
        {"data_dir", [&](const std::string& v) { c.data_dir = v; }},
        {"output_dir", [&](const std::string& v) { c.output_dir = v; }},
        {"methods", [&](const std::string& v) { c.methods = parse_methods(v); }},
        {"window_start", [&](const std::string& v) { c.window_start = parse_period(v); }},
        {"window_end", [&](const std::string& v) { c.window_end = parse_period(v); }},
        {"stage_config", [&](const std::string& v) { c.stage_config = v; }},
        {"rows_per_stage", [&](const std::string& v) { c.rows_per_stage = to_bool(v); }},
        {"parallel_methods", [&](const std::string& v) { c.parallel_methods = to_bool(v); }},
        {"solar_pct", [&](const std::string& v) { c.solar_pct = to_double(v); }},
        {"hydro_pct", [&](const std::string& v) { c.hydro_pct = to_double(v); }},
        {"wind_pct", [&](const std::string& v) { c.wind_pct = to_double(v); }},
        {"other_pct", [&](const std::string& v) { c.other_pct = to_double(v); }},
        {"min_renewable_pct", [&](const std::string& v) { c.min_renewable_pct = to_double(v); }},
        {"pf_tolerance", [&](const std::string& v) { c.pf_tolerance = to_double(v); }},
        {"pf_max_iterations", [&](const std::string& v) { c.pf_max_iterations = to_int(v); }},
        {"loss_adder", [&](const std::string& v) { c.loss_adder = to_double(v); }},
        {"enforce_branch_ratings", [&](const std::string& v) { c.enforce_branch_ratings = to_bool(v); }},
        {"milp_gap", [&](const std::string& v) { c.milp_gap = to_double(v); }},
        {"milp_time_limit", [&](const std::string& v) { c.milp_time_limit = to_double(v); }},
    };

    std::istringstream in(text);
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        ++n;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string body = trim(line);
        if (body.empty()) continue;
        const auto eq = body.find('=');
        const std::string where = source + ":" + std::to_string(n) + ": ";
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        const std::string key = trim(std::string_view(body).substr(0, eq));
        const std::string value = trim(std::string_view(body).substr(eq + 1));
        auto it = keys.find(key);
        if (it == keys.end()) throw ConfigError(where + "unknown key '" + key + "'");
        try {
            it->second(value);
        } catch (const std::exception& e) {
            throw ConfigError(where + key + ": " + e.what());
        }
    }
    return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path.string());
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_run_config(ss.str(), path.string());
}

}  // namespace genprio
