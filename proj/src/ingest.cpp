#include "genprio/ingest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <regex>
#include <set>

#include <nlohmann/json.hpp>

#include "genprio/csv.hpp"
#include "genprio/error.hpp"

namespace genprio {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path source_dir(const fs::path& dir) {
    if (fs::exists(dir / "SourceData" / "bus.csv")) return dir / "SourceData";
    return dir;
}

void warn(Diagnostics* diag, std::string msg) {
    if (diag) diag->warnings.push_back(std::move(msg));
}

void warn_unknown_columns(const CsvTable& table, const std::set<std::string>& known,
                          Diagnostics* diag) {
    for (const auto& h : table.header()) {
        if (!known.count(h)) warn(diag, table.source() + ": ignoring unknown column '" + h + "'");
    }
}

// Columns of the public RTS-GMLC tables that are read or deliberately unused.
const std::set<std::string> kBusColumns = {
    "Bus ID", "Bus Name", "BaseKV", "Bus Type", "MW Load", "MVAR Load", "V Mag", "V Angle",
    "MW Shunt G", "MVAR Shunt B", "Area", "Sub Area", "Zone", "lat", "lng"};

const std::set<std::string> kBranchColumns = {
    "UID", "From Bus", "To Bus", "R", "X", "B", "Cont Rating", "LTE Rating", "STE Rating",
    "Perm OutRate", "Duration", "Tr Ratio", "Tran OutRate", "Length"};

const std::set<std::string> kGenColumns = {
    "GEN UID", "Bus ID", "Gen ID", "Unit Group", "Unit Type", "Category", "Fuel", "MW Inj",
    "MVAR Inj", "V Setpoint p.u.", "PMax MW", "PMin MW", "QMax MVAR", "QMin MVAR",
    "Min Down Time Hr", "Min Up Time Hr", "Ramp Rate MW/Min", "Start Time Cold Hr",
    "Start Time Warm Hr", "Start Time Hot Hr", "Start Heat Cold MBTU", "Start Heat Warm MBTU",
    "Start Heat Hot MBTU", "Non Fuel Start Cost $", "Non Fuel Shutdown Cost $", "FOR",
    "MTTF Hr", "MTTR Hr", "Scheduled Maint Weeks", "Fuel Price $/MMBTU", "Output_pct_0",
    "Output_pct_1", "Output_pct_2", "Output_pct_3", "HR_avg_0", "HR_incr_1", "HR_incr_2",
    "HR_incr_3", "VOM", "Fuel Sulfur Content %", "Emissions SO2 Lbs/MMBTU",
    "Emissions NOX Lbs/MMBTU", "Emissions Part Lbs/MMBTU", "Emissions CO2 Lbs/MMBTU",
    "Emissions CH4 Lbs/MMBTU", "Emissions N2O Lbs/MMBTU", "Emissions CO Lbs/MMBTU",
    "Emissions VOCs Lbs/MMBTU", "Damping Ratio", "Inertia MJ/MW", "Base MVA",
    "Transformer X p.u.", "Unit X p.u.", "Pump Load MW", "Storage Roundtrip Efficiency"};

BusKind parse_bus_type(const CsvTable& t, std::size_t row, std::size_t col) {
    std::string s = t.text(row, col);
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::toupper(c); });
    if (s == "REF" || s == "SLACK") return BusKind::slack;
    if (s == "PV") return BusKind::pv;
    if (s == "PQ") return BusKind::pq;
    t.fail(row, "unknown Bus Type '" + t.text(row, col) + "'");
}

GenType classify_unit(const std::string& unit_type, const std::string& fuel) {
    std::string u = unit_type;
    std::transform(u.begin(), u.end(), u.begin(), [](unsigned char c) { return std::toupper(c); });
    if (u == "CT" || u == "CC" || u == "STEAM" || u == "NUCLEAR") return GenType::conventional;
    if (u == "PV" || u == "RTPV") return GenType::solar;
    if (u == "WIND") return GenType::wind;
    if (u == "HYDRO" || u == "ROR") return GenType::hydro;
    if (u == "CSP") return GenType::csp;
    if (u == "SYNC_COND") return GenType::sync_cond;
    if (u == "STORAGE") return GenType::storage;
    std::string f = fuel;
    std::transform(f.begin(), f.end(), f.begin(), [](unsigned char c) { return std::tolower(c); });
    if (f == "oil" || f == "coal" || f == "ng" || f == "nuclear") return GenType::conventional;
    throw DataError("unrecognised unit type '" + unit_type + "' with fuel '" + fuel + "'");
}

void read_buses(const CsvTable& t, GridCase& grid, Diagnostics* diag) {
    warn_unknown_columns(t, kBusColumns, diag);
    const auto c_id = t.column("Bus ID");
    const auto c_area = t.column("Area");
    const auto c_kv = t.column("BaseKV");
    const auto c_type = t.column("Bus Type");
    const auto c_pd = t.column("MW Load");
    const auto c_qd = t.column("MVAR Load");
    const auto c_vm = t.find_column("V Mag");
    const auto c_gs = t.find_column("MW Shunt G");
    const auto c_bs = t.find_column("MVAR Shunt B");
    std::set<int> seen;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        Bus b;
        b.id = t.integer(r, c_id);
        if (!seen.insert(b.id).second) t.fail(r, "duplicate Bus ID " + std::to_string(b.id));
        b.area = t.integer(r, c_area);
        b.base_kv = t.number(r, c_kv);
        if (!(b.base_kv > 0)) t.fail(r, "BaseKV must be positive");
        b.kind = parse_bus_type(t, r, c_type);
        b.pd = t.number(r, c_pd);
        b.qd = t.number(r, c_qd);
        b.voltage_setpoint = t.number_or(r, c_vm, 1.0);
        b.gs = t.number_or(r, c_gs, 0.0);
        b.bs = t.number_or(r, c_bs, 0.0);
        grid.buses.push_back(b);
    }
}

void read_branches(const CsvTable& t, GridCase& grid, Diagnostics* diag) {
    warn_unknown_columns(t, kBranchColumns, diag);
    const auto c_id = t.column("UID");
    const auto c_from = t.column("From Bus");
    const auto c_to = t.column("To Bus");
    const auto c_r = t.column("R");
    const auto c_x = t.column("X");
    const auto c_b = t.column("B");
    const auto c_rate = t.find_column("Cont Rating");
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        Branch br;
        br.id = t.text(r, c_id);
        br.from_bus = t.integer(r, c_from);
        br.to_bus = t.integer(r, c_to);
        br.r = t.number(r, c_r);
        br.x = t.number(r, c_x);
        br.b = t.number(r, c_b);
        br.rating = t.number_or(r, c_rate, 0.0);
        if (br.x == 0.0) t.fail(r, "branch " + br.id + " has zero reactance");
        auto from = grid.find_bus(br.from_bus);
        auto to = grid.find_bus(br.to_bus);
        if (!from) t.fail(r, "branch " + br.id + ": unknown From Bus " + std::to_string(br.from_bus));
        if (!to) t.fail(r, "branch " + br.id + ": unknown To Bus " + std::to_string(br.to_bus));
        br.voltage_class = std::min(grid.buses[*from].base_kv, grid.buses[*to].base_kv);
        grid.branches.push_back(br);
    }
}

// Operating cost curve in the MATPOWER export convention: heat input from the
// average/incremental heat rates (BTU/kWh), priced at the fuel price, plus VOM.
void build_cost_curve(const CsvTable& t, std::size_t r, Generator& g) {
    const auto c_vom = t.find_column("VOM");
    const auto c_hr0 = t.find_column("HR_avg_0");
    std::vector<double> mw;
    for (int i = 0; i < 4; ++i) {
        auto col = t.find_column("Output_pct_" + std::to_string(i));
        if (!col || t.text(r, *col).empty()) break;
        mw.push_back(t.number(r, *col) * g.pgmax);
    }
    if (mw.empty() || !c_hr0 || t.text(r, *c_hr0).empty()) return;
    const double vom = t.number_or(r, c_vom, 0.0);
    double heat = t.number(r, *c_hr0) / 1000.0 * mw[0];  // MMBTU/h
    g.cost_points.push_back({mw[0], g.fuel_price * heat + vom * mw[0]});
    for (std::size_t i = 1; i < mw.size(); ++i) {
        auto col = t.find_column("HR_incr_" + std::to_string(i));
        if (!col || t.text(r, *col).empty()) break;
        heat += t.number(r, *col) / 1000.0 * (mw[i] - mw[i - 1]);
        g.cost_points.push_back({mw[i], g.fuel_price * heat + vom * mw[i]});
    }
    if (g.cost_points.back().mw > 0) g.heat_rate = heat / g.cost_points.back().mw;
}

void read_generators(const CsvTable& t, GridCase& grid, Diagnostics* diag) {
    warn_unknown_columns(t, kGenColumns, diag);
    const auto c_id = t.column("GEN UID");
    const auto c_bus = t.column("Bus ID");
    const auto c_type = t.column("Unit Type");
    const auto c_fuel = t.find_column("Fuel");
    const auto c_pmax = t.column("PMax MW");
    const auto c_pmin = t.column("PMin MW");
    const auto c_qmax = t.column("QMax MVAR");
    const auto c_qmin = t.column("QMin MVAR");
    const auto c_pg = t.find_column("MW Inj");
    const auto c_qg = t.find_column("MVAR Inj");
    const auto c_ramp = t.find_column("Ramp Rate MW/Min");
    const auto c_price = t.find_column("Fuel Price $/MMBTU");
    const auto c_start = t.find_column("Non Fuel Start Cost $");
    const auto c_heat = t.find_column("Start Heat Cold MBTU");
    std::set<std::string> seen;
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        Generator g;
        g.id = t.text(r, c_id);
        if (g.id.empty()) t.fail(r, "empty GEN UID");
        if (!seen.insert(g.id).second) t.fail(r, "duplicate GEN UID " + g.id);
        g.bus_id = t.integer(r, c_bus);
        if (!grid.find_bus(g.bus_id)) {
            t.fail(r, "generator " + g.id + ": unknown Bus ID " + std::to_string(g.bus_id));
        }
        g.unit_type = t.text(r, c_type);
        try {
            g.type = classify_unit(g.unit_type, c_fuel ? t.text(r, *c_fuel) : std::string());
        } catch (const DataError& e) {
            t.fail(r, e.what());
        }
        g.pgmax = t.number(r, c_pmax);
        g.pgmin = t.number(r, c_pmin);
        g.qgmax = t.number(r, c_qmax);
        g.qgmin = t.number(r, c_qmin);
        if (g.pgmin > g.pgmax) t.fail(r, "generator " + g.id + ": PMin above PMax");
        if (g.qgmin > g.qgmax) t.fail(r, "generator " + g.id + ": QMin above QMax");
        if (g.type == GenType::solar || g.type == GenType::wind) {
            // Inverter-based units carry no reactive capability in this model.
            g.qgmin = 0.0;
            g.qgmax = 0.0;
        }
        g.pg = t.number_or(r, c_pg, 0.0);
        g.qg = t.number_or(r, c_qg, 0.0);
        g.ramp_rate = t.number_or(r, c_ramp, 0.0);
        g.fuel_price = t.number_or(r, c_price, 0.0);
        g.startup_cost = t.number_or(r, c_start, 0.0) + t.number_or(r, c_heat, 0.0) * g.fuel_price;
        build_cost_curve(t, r, g);
        g.status = true;
        grid.generators.push_back(std::move(g));
    }
}

}  // namespace

GridCase load_case(const fs::path& dir, Diagnostics* diag) {
    if (!fs::is_directory(dir)) throw ParseError(dir.string(), 0, "not a directory");
    const fs::path src = source_dir(dir);
    GridCase grid;
    grid.base_mva = 100.0;
    read_buses(CsvTable::read(src / "bus.csv"), grid, diag);
    grid.sort();
    read_branches(CsvTable::read(src / "branch.csv"), grid, diag);
    read_generators(CsvTable::read(src / "gen.csv"), grid, diag);
    grid.sort();
    grid.validate();
    return grid;
}

// --- calendar -------------------------------------------------------------

int period_index(int month, int day, int hour, int year) {
    using namespace std::chrono;
    if (year != 2020) throw ConfigError("only the year 2020 is covered by the dataset");
    year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                       std::chrono::day{static_cast<unsigned>(day)}};
    if (month < 1 || month > 12 || day < 1 || !ymd.ok()) {
        throw ConfigError("invalid date " + std::to_string(month) + "/" + std::to_string(day));
    }
    if (hour < 1 || hour > 24) throw ConfigError("hour must be in 1..24, got " + std::to_string(hour));
    const auto doy = (sys_days{ymd} - sys_days{std::chrono::year{year} / January / 1}).count();
    return static_cast<int>(doy) * 24 + hour;
}

PeriodDate period_date(int period) {
    using namespace std::chrono;
    if (period < 1 || period > kPeriodsIn2020) {
        throw ConfigError("period " + std::to_string(period) + " outside 1.." +
                          std::to_string(kPeriodsIn2020));
    }
    const int doy = (period - 1) / 24;
    year_month_day ymd{sys_days{std::chrono::year{2020} / January / 1} + days{doy}};
    return {static_cast<int>(unsigned(ymd.month())), static_cast<int>(unsigned(ymd.day())),
            (period - 1) % 24 + 1};
}

int parse_period(const std::string& text) {
    static const std::regex pattern(R"(^\s*(\d{1,2})/(\d{1,2})\s+(?:TP-)?(\d{1,2})\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, pattern)) {
        return period_index(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    }
    static const std::regex plain(R"(^\s*(\d+)\s*$)");
    if (std::regex_match(text, m, plain)) {
        int p = std::stoi(m[1]);
        period_date(p);  // range check
        return p;
    }
    throw ConfigError("cannot parse period '" + text + "' (expected 'MM/DD H' or an index)");
}

std::string format_period(int period) {
    PeriodDate d = period_date(period);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%02d/%02d TP-%d", d.month, d.day, d.hour);
    return buf;
}

// --- timeseries -----------------------------------------------------------

double TimeseriesSet::area_load(int period, int area) const {
    if (!contains(period)) {
        throw DataError("period " + std::to_string(period) + " outside the loaded timeseries (" +
                        std::to_string(first_period) + ".." + std::to_string(last_period()) + ")");
    }
    auto it = std::find(areas.begin(), areas.end(), area);
    if (it == areas.end()) throw DataError("no load series for area " + std::to_string(area));
    return area_load_mw[period - first_period][it - areas.begin()];
}

double TimeseriesSet::area_peak(int area) const {
    auto it = std::find(areas.begin(), areas.end(), area);
    if (it == areas.end()) throw DataError("no load series for area " + std::to_string(area));
    const auto col = static_cast<std::size_t>(it - areas.begin());
    double peak = 0.0;
    for (const auto& row : area_load_mw) peak = std::max(peak, row[col]);
    return peak;
}

std::optional<double> TimeseriesSet::available(const std::string& unit_id, int period) const {
    auto it = unit_available_mw.find(unit_id);
    if (it == unit_available_mw.end()) return std::nullopt;
    if (!contains(period)) {
        throw DataError("period " + std::to_string(period) + " outside the loaded timeseries");
    }
    return it->second[period - first_period];
}

namespace {

struct SeriesFile {
    CsvTable table;
    int first_period = 0;
    std::vector<std::size_t> value_columns;
};

SeriesFile read_series(const fs::path& path, const TimeseriesOptions& options) {
    SeriesFile f{CsvTable::read(path), 0, {}};
    const CsvTable& t = f.table;
    const auto c_year = t.column("Year");
    const auto c_month = t.column("Month");
    const auto c_day = t.column("Day");
    const auto c_period = t.column("Period");
    for (std::size_t c = 0; c < t.header().size(); ++c) {
        if (c != c_year && c != c_month && c != c_day && c != c_period) f.value_columns.push_back(c);
    }
    if (t.row_count() == 0) throw ParseError(t.source(), 0, "no data rows");
    if (options.expected_periods && static_cast<int>(t.row_count()) != *options.expected_periods) {
        throw ParseError(t.source(), 0,
                         "row count " + std::to_string(t.row_count()) + " != expected " +
                             std::to_string(*options.expected_periods));
    }
    for (std::size_t r = 0; r < t.row_count(); ++r) {
        int p = 0;
        try {
            p = period_index(t.integer(r, c_month), t.integer(r, c_day), t.integer(r, c_period),
                             t.integer(r, c_year));
        } catch (const ConfigError& e) {
            t.fail(r, e.what());
        }
        if (r == 0) f.first_period = p;
        else if (p != f.first_period + static_cast<int>(r)) {
            t.fail(r, "rows are not consecutive hours");
        }
        for (std::size_t c : f.value_columns) {
            double v = t.number(r, c);
            if (v < 0) t.fail(r, "negative value in column '" + t.header()[c] + "'");
        }
    }
    return f;
}

}  // namespace

TimeseriesSet load_timeseries(const fs::path& dir, const GridCase& grid,
                              const TimeseriesOptions& options, Diagnostics* diag) {
    fs::path root = dir / "timeseries_data_files";
    if (!fs::is_directory(root)) root = dir;

    TimeseriesSet ts;
    SeriesFile load = read_series(root / "Load" / "DAY_AHEAD_regional_Load.csv", options);
    ts.first_period = load.first_period;
    ts.period_count = static_cast<int>(load.table.row_count());
    for (std::size_t c : load.value_columns) {
        int area = 0;
        try {
            area = std::stoi(load.table.header()[c]);
        } catch (const std::exception&) {
            throw ParseError(load.table.source(), 1,
                             "area column '" + load.table.header()[c] + "' is not an area number");
        }
        ts.areas.push_back(area);
    }
    for (int area : grid.areas()) {
        if (std::find(ts.areas.begin(), ts.areas.end(), area) == ts.areas.end()) {
            throw ParseError(load.table.source(), 1, "no load column for area " + std::to_string(area));
        }
    }
    ts.area_load_mw.resize(ts.period_count);
    for (int r = 0; r < ts.period_count; ++r) {
        for (std::size_t c : load.value_columns) ts.area_load_mw[r].push_back(load.table.number(r, c));
    }

    const std::pair<const char*, const char*> renewable_files[] = {
        {"PV", "DAY_AHEAD_pv.csv"},
        {"RTPV", "DAY_AHEAD_rtpv.csv"},
        {"WIND", "DAY_AHEAD_wind.csv"},
        {"Hydro", "DAY_AHEAD_hydro.csv"},
    };
    for (const auto& [folder, name] : renewable_files) {
        const fs::path path = root / folder / name;
        if (!fs::exists(path)) {
            warn(diag, path.string() + ": not present");
            continue;
        }
        SeriesFile f = read_series(path, options);
        if (f.first_period != ts.first_period ||
            static_cast<int>(f.table.row_count()) != ts.period_count) {
            throw ParseError(f.table.source(), 0,
                             "row range " + std::to_string(f.first_period) + "+" +
                                 std::to_string(f.table.row_count()) +
                                 " differs from the load series " + std::to_string(ts.first_period) +
                                 "+" + std::to_string(ts.period_count));
        }
        for (std::size_t c : f.value_columns) {
            const std::string& unit = f.table.header()[c];
            const Generator* g = grid.find_generator(unit);
            if (!g || !is_renewable(g->type)) {
                throw ParseError(f.table.source(), 1, "unknown renewable unit column '" + unit + "'");
            }
            if (ts.unit_available_mw.count(unit)) {
                warn(diag, f.table.source() + ": column '" + unit +
                               "' already loaded from another file; later file wins");
            }
            std::vector<double> values(ts.period_count);
            for (int r = 0; r < ts.period_count; ++r) values[r] = f.table.number(r, c);
            ts.unit_available_mw[unit] = std::move(values);
        }
    }

    for (const auto& g : grid.generators) {
        if (!is_renewable(g.type) || ts.unit_available_mw.count(g.id)) continue;
        if (g.type == GenType::csp) {
            ts.profile_less.push_back(g.id);
        } else {
            throw DataError("renewable unit " + g.id + " has no timeseries column");
        }
    }
    return ts;
}

// --- normalized dump ------------------------------------------------------

std::string case_to_json(const GridCase& grid) {
    json j;
    j["base_mva"] = grid.base_mva;
    json buses = json::array();
    for (const auto& b : grid.buses) {
        buses.push_back({{"id", b.id},
                         {"area", b.area},
                         {"base_kv", b.base_kv},
                         {"kind", std::string(to_string(b.kind))},
                         {"voltage_setpoint", b.voltage_setpoint},
                         {"pd", b.pd},
                         {"qd", b.qd},
                         {"gs", b.gs},
                         {"bs", b.bs},
                         {"in_service", b.in_service}});
    }
    j["buses"] = std::move(buses);
    json branches = json::array();
    for (const auto& br : grid.branches) {
        branches.push_back({{"id", br.id},
                            {"from_bus", br.from_bus},
                            {"to_bus", br.to_bus},
                            {"r", br.r},
                            {"x", br.x},
                            {"b", br.b},
                            {"rating", br.rating},
                            {"in_service", br.in_service},
                            {"voltage_class", br.voltage_class}});
    }
    j["branches"] = std::move(branches);
    json gens = json::array();
    for (const auto& g : grid.generators) {
        json points = json::array();
        for (const auto& p : g.cost_points) points.push_back({p.mw, p.cost_per_hour});
        gens.push_back({{"id", g.id},
                        {"bus_id", g.bus_id},
                        {"type", std::string(to_string(g.type))},
                        {"unit_type", g.unit_type},
                        {"status", g.status},
                        {"pg", g.pg},
                        {"qg", g.qg},
                        {"pgmin", g.pgmin},
                        {"pgmax", g.pgmax},
                        {"qgmin", g.qgmin},
                        {"qgmax", g.qgmax},
                        {"fuel_price", g.fuel_price},
                        {"cost_points", std::move(points)},
                        {"startup_cost", g.startup_cost},
                        {"ramp_rate", g.ramp_rate},
                        {"heat_rate", g.heat_rate},
                        {"added", g.added}});
    }
    j["generators"] = std::move(gens);
    return j.dump(1) + "\n";
}

GridCase case_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw DataError(std::string("case dump: ") + e.what());
    }
    GridCase grid;
    try {
        grid.base_mva = j.at("base_mva").get<double>();
        for (const auto& e : j.at("buses")) {
            Bus b;
            b.id = e.at("id");
            b.area = e.at("area");
            b.base_kv = e.at("base_kv");
            b.kind = bus_kind_from_string(e.at("kind").get<std::string>());
            b.voltage_setpoint = e.at("voltage_setpoint");
            b.pd = e.at("pd");
            b.qd = e.at("qd");
            b.gs = e.at("gs");
            b.bs = e.at("bs");
            b.in_service = e.at("in_service");
            grid.buses.push_back(b);
        }
        for (const auto& e : j.at("branches")) {
            Branch br;
            br.id = e.at("id");
            br.from_bus = e.at("from_bus");
            br.to_bus = e.at("to_bus");
            br.r = e.at("r");
            br.x = e.at("x");
            br.b = e.at("b");
            br.rating = e.at("rating");
            br.in_service = e.at("in_service");
            br.voltage_class = e.at("voltage_class");
            grid.branches.push_back(br);
        }
        for (const auto& e : j.at("generators")) {
            Generator g;
            g.id = e.at("id");
            g.bus_id = e.at("bus_id");
            g.type = gen_type_from_string(e.at("type").get<std::string>());
            g.unit_type = e.at("unit_type");
            g.status = e.at("status");
            g.pg = e.at("pg");
            g.qg = e.at("qg");
            g.pgmin = e.at("pgmin");
            g.pgmax = e.at("pgmax");
            g.qgmin = e.at("qgmin");
            g.qgmax = e.at("qgmax");
            g.fuel_price = e.at("fuel_price");
            for (const auto& p : e.at("cost_points")) g.cost_points.push_back({p.at(0), p.at(1)});
            g.startup_cost = e.at("startup_cost");
            g.ramp_rate = e.at("ramp_rate");
            g.heat_rate = e.at("heat_rate");
            g.added = e.at("added");
            grid.generators.push_back(std::move(g));
        }
    } catch (const json::exception& e) {
        throw DataError(std::string("case dump: ") + e.what());
    }
    grid.sort();
    grid.validate();
    return grid;
}

}  // namespace genprio
