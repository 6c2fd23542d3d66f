#include "genprio/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "genprio/error.hpp"

namespace genprio {

void GoalPortfolio::validate() const {
    for (double v : {solar_pct, hydro_pct, wind_pct, other_pct, min_renewable_pct}) {
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError("goal portfolio shares must lie in [0, 1]");
    }
}

GridCase rescale_active_loads(const GridCase& grid, const TimeseriesSet& ts, int period) {
    GridCase out = grid;
    for (int area : grid.areas()) {
        double total = 0.0;
        for (const auto& b : grid.buses) {
            if (b.area == area) total += b.pd;
        }
        const double target = ts.area_load(period, area);
        if (total == 0.0) {
            if (target != 0.0) {
                throw DataError("area " + std::to_string(area) +
                                " has no default active demand to rescale");
            }
            continue;
        }
        const double ratio = target / total;
        for (auto& b : out.buses) {
            if (b.area == area) b.pd *= ratio;
        }
    }
    return out;
}

GridCase rescale_reactive_loads(const GridCase& grid, const TimeseriesSet& ts, int period) {
    GridCase out = grid;
    for (int area : grid.areas()) {
        const double peak = ts.area_peak(area);
        if (peak == 0.0) {
            throw DataError("area " + std::to_string(area) + " has a zero peak load series");
        }
        const double ratio = ts.area_load(period, area) / peak;
        for (auto& b : out.buses) {
            if (b.area == area) b.qd *= ratio;
        }
    }
    return out;
}

GridCase shape_renewable_portfolio(const GridCase& grid, const TimeseriesSet& ts, int period,
                                   const GoalPortfolio& goal, ShapingSummary* summary) {
    GridCase out = grid;
    ShapingSummary s;
    for (const auto& b : out.buses) {
        if (b.in_service) s.total_load += b.pd;
    }

    // Enable every renewable unit on a live bus with a positive forecast; CSP
    // is never used.
    std::vector<std::pair<Generator*, double>> units;  // (unit, forecast)
    for (auto& g : out.generators) {
        if (!is_renewable(g.type)) continue;
        if (g.type == GenType::csp) {
            g.status = false;
            continue;
        }
        const auto forecast = ts.available(g.id, period);
        const double f = forecast.value_or(0.0);
        g.status = out.bus(g.bus_id).in_service && f > 0.0;
        if (!g.status) continue;
        units.emplace_back(&g, f);
        s.forecast_mw[g.type] += f;
    }

    const double fs = s.forecast_mw[GenType::solar];
    const double fw = s.forecast_mw[GenType::wind];
    s.solar_goal = goal.solar_pct;
    s.wind_goal = goal.wind_pct;
    s.hydro_goal = goal.hydro_pct;
    if (fs + fw > 0.0) {
        s.solar_goal += goal.other_pct * fs / (fs + fw);
        s.wind_goal += goal.other_pct * fw / (fs + fw);
    }

    auto goal_of = [&](GenType t) {
        switch (t) {
            case GenType::solar: return s.solar_goal;
            case GenType::wind: return s.wind_goal;
            default: return s.hydro_goal;
        }
    };
    for (auto& [g, f] : units) {
        const double cap = goal_of(g->type) * s.total_load;
        const double type_total = s.forecast_mw[g->type];
        g->pgmax = type_total <= cap ? f : f * cap / type_total;
    }

    double renewable = 0.0;
    double headroom = 0.0;
    for (auto& [g, f] : units) {
        renewable += g->pgmax;
        headroom += f - g->pgmax;
    }
    const double need = goal.min_renewable_pct * s.total_load - renewable;
    if (need > 0.0) {
        const double raise = std::min(need, headroom);
        if (headroom > 0.0) {
            for (auto& [g, f] : units) g->pgmax += (f - g->pgmax) * (raise / headroom);
        }
        s.floor_topup_mw = raise;
        s.floor_shortfall_mw = need - raise;
    }
    for (auto& [g, f] : units) {
        g->pgmax = std::max(g->pgmax, g->pgmin);
        s.shaped_mw[g->type] += g->pgmax;
    }
    if (summary) *summary = std::move(s);
    return out;
}

std::pair<double, double> sync_cond_limits(double renewable_mw) {
    if (renewable_mw > 250.0) return {-50.0, 100.0};
    if (renewable_mw > 100.0) return {-25.0, 25.0};
    return {-5.0, 10.0};
}

GridCase augment_sync_conds(const GridCase& grid) {
    GridCase out = grid;
    std::erase_if(out.generators, [](const Generator& g) { return g.added; });

    std::map<int, double> renewable_by_bus;  // hosting buses, enabled capacity
    for (auto& g : out.generators) {
        if (g.type == GenType::sync_cond) {
            g.qgmin = -50.0;
            g.qgmax = 100.0;
            continue;
        }
        if (!is_renewable(g.type) || !out.bus(g.bus_id).in_service) continue;
        double& total = renewable_by_bus[g.bus_id];
        if (g.status) total += g.pgmax;
    }
    for (const auto& [bus_id, mw] : renewable_by_bus) {
        Generator sc;
        sc.id = std::to_string(bus_id) + "_SYNC_COND_ADDED";
        sc.bus_id = bus_id;
        sc.type = GenType::sync_cond;
        sc.unit_type = "SYNC_COND";
        sc.status = true;
        std::tie(sc.qgmin, sc.qgmax) = sync_cond_limits(mw);
        sc.added = true;
        out.generators.push_back(std::move(sc));
    }
    out.sort();
    return out;
}

GridCase disable_storage(const GridCase& grid) {
    GridCase out = grid;
    for (auto& g : out.generators) {
        if (g.type == GenType::storage) g.status = false;
    }
    return out;
}

// --- restoration staging --------------------------------------------------

bool RestorationStage::energizes(int area, double base_kv) const {
    auto it = energized.find(area);
    if (it == energized.end()) return false;
    return std::any_of(it->second.begin(), it->second.end(),
                       [&](int kv) { return std::abs(kv - base_kv) < 0.5; });
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

void check_stages(const std::vector<RestorationStage>& stages) {
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto& st = stages[i];
        if (st.first_period > st.last_period) {
            throw ConfigError("stage '" + st.name + "': start after end");
        }
        if (st.energized.empty()) throw ConfigError("stage '" + st.name + "': nothing energized");
        if (i > 0 && stages[i - 1].last_period >= st.first_period) {
            throw ConfigError("stage '" + st.name + "' overlaps or precedes '" +
                              stages[i - 1].name + "'");
        }
    }
}

}  // namespace

std::vector<RestorationStage> parse_stage_config(const std::string& text) {
    std::vector<RestorationStage> stages;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    bool has_start = false;
    bool has_end = false;
    auto finish = [&]() {
        if (stages.empty()) return;
        if (!has_start || !has_end) {
            throw ConfigError("stage '" + stages.back().name + "' needs start and end");
        }
    };
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw.substr(0, raw.find('#')));
        if (line.empty()) continue;
        const std::string where = "stage config line " + std::to_string(line_no) + ": ";
        if (line == "[stage]") {
            finish();
            stages.emplace_back();
            has_start = has_end = false;
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
        if (stages.empty()) throw ConfigError(where + "entry outside a [stage] section");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        RestorationStage& st = stages.back();
        if (key == "name") {
            st.name = value;
        } else if (key == "start") {
            st.first_period = parse_period(value);
            has_start = true;
        } else if (key == "end") {
            st.last_period = parse_period(value);
            has_end = true;
        } else if (key == "area") {
            const auto colon = value.find(':');
            if (colon == std::string::npos) throw ConfigError(where + "expected 'area = N: kV kV'");
            int area = 0;
            try {
                area = std::stoi(value.substr(0, colon));
            } catch (const std::exception&) {
                throw ConfigError(where + "bad area number");
            }
            std::istringstream kvs(value.substr(colon + 1));
            std::set<int>& classes = st.energized[area];
            int kv = 0;
            while (kvs >> kv) classes.insert(kv);
            if (classes.empty()) throw ConfigError(where + "area without kV classes");
        } else {
            throw ConfigError(where + "unknown key '" + key + "'");
        }
    }
    finish();
    check_stages(stages);
    return stages;
}

std::vector<RestorationStage> load_stage_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read stage config " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_stage_config(buf.str());
}

std::string format_stage_config(const std::vector<RestorationStage>& stages) {
    std::ostringstream out;
    for (const auto& st : stages) {
        out << "[stage]\n"
            << "name  = " << st.name << "\n"
            << "start = " << format_period(st.first_period) << "\n"
            << "end   = " << format_period(st.last_period) << "\n";
        for (const auto& [area, classes] : st.energized) {
            out << "area  = " << area << ":";
            for (int kv : classes) out << ' ' << kv;
            out << "\n";
        }
        out << "\n";
    }
    return out.str();
}

std::vector<RestorationStage> default_csz_stages() {
    const std::set<int> both{138, 230};
    return {
        {"Normal Operation", period_index(1, 26, 1), period_index(1, 26, 21),
         {{1, both}, {2, both}, {3, both}}},
        {"CSZ Earthquake Disaster", period_index(1, 26, 22), period_index(1, 29, 9), {{3, both}}},
        {"Partially Restored Operation I.", period_index(1, 29, 10), period_index(2, 3, 17),
         {{2, {230}}, {3, both}}},
        {"Partially Restored Operation II.", period_index(2, 3, 18), period_index(2, 8, 24),
         {{2, both}, {3, both}}},
    };
}

const RestorationStage* stage_for_period(const std::vector<RestorationStage>& stages, int period) {
    for (const auto& st : stages) {
        if (period >= st.first_period && period <= st.last_period) return &st;
    }
    return nullptr;
}

GridCase apply_restoration_stage(const GridCase& grid, const RestorationStage& stage) {
    if (stage.energized.empty()) throw ConfigError("stage '" + stage.name + "' energizes nothing");
    GridCase out = grid;
    for (auto& b : out.buses) {
        b.in_service = b.in_service && stage.energizes(b.area, b.base_kv);
    }
    for (auto& br : out.branches) {
        br.in_service = br.in_service && out.bus(br.from_bus).in_service &&
                        out.bus(br.to_bus).in_service;
    }
    for (auto& g : out.generators) {
        if (!out.bus(g.bus_id).in_service) g.status = false;
    }
    assign_slack_buses(out);
    return out;
}

GridCase build_period_case(const GridCase& base, const TimeseriesSet& ts, int period,
                           const ScenarioOptions& options, ShapingSummary* summary) {
    options.goal.validate();
    GridCase grid = base;
    for (auto& g : grid.generators) {
        if (g.type == GenType::conventional || g.type == GenType::sync_cond) g.status = true;
    }
    if (options.stages) {
        if (const RestorationStage* st = stage_for_period(*options.stages, period)) {
            grid = apply_restoration_stage(grid, *st);
        }
    }
    grid = disable_storage(grid);
    grid = rescale_active_loads(grid, ts, period);
    grid = rescale_reactive_loads(grid, ts, period);
    grid = shape_renewable_portfolio(grid, ts, period, options.goal, summary);
    grid = augment_sync_conds(grid);
    assign_slack_buses(grid);
    return grid;
}

}  // namespace genprio
