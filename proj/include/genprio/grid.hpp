#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace genprio {

enum class BusKind { slack, pv, pq };

enum class GenType { conventional, solar, wind, hydro, csp, sync_cond, storage };

std::string_view to_string(BusKind kind);
std::string_view to_string(GenType type);
BusKind bus_kind_from_string(std::string_view text);
GenType gen_type_from_string(std::string_view text);

/// Solar, wind, hydro and CSP units.
bool is_renewable(GenType type);

struct Bus {
    int id = 0;
    int area = 0;
    double base_kv = 0.0;
    BusKind kind = BusKind::pq;
    double voltage_setpoint = 1.0;  // p.u.
    double pd = 0.0;                // MW
    double qd = 0.0;                // MVar
    double gs = 0.0;                // MW consumed at 1.0 p.u.
    double bs = 0.0;                // MVar injected at 1.0 p.u.
    bool in_service = true;
};

/// One breakpoint of a piecewise-linear operating cost curve.
struct CostPoint {
    double mw = 0.0;
    double cost_per_hour = 0.0;
};

struct Generator {
    std::string id;
    int bus_id = 0;
    GenType type = GenType::conventional;
    std::string unit_type;  // raw dataset tag, e.g. "CT", "PV", "SYNC_COND"
    bool status = true;
    double pg = 0.0;
    double qg = 0.0;
    double pgmin = 0.0;
    double pgmax = 0.0;
    double qgmin = 0.0;
    double qgmax = 0.0;
    double fuel_price = 0.0;  // $/MMBTU
    std::vector<CostPoint> cost_points;
    double startup_cost = 0.0;  // $
    double ramp_rate = 0.0;     // MW/min
    double heat_rate = 0.0;     // MMBTU/MWh at full load, 0 when the data has none
    bool added = false;         // synchronous condenser created by scenario augmentation

    bool reactive_capable() const { return qgmax > qgmin; }
};

struct Branch {
    std::string id;
    int from_bus = 0;
    int to_bus = 0;
    double r = 0.0;
    double x = 0.0;
    double b = 0.0;
    double rating = 0.0;  // MVA, 0 = unlimited
    bool in_service = true;
    double voltage_class = 0.0;  // kV of the lower-voltage endpoint
};

/// A full system snapshot. Quantities are stored in MW / MVar; the power flow
/// converts to per unit on `base_mva`.
///
/// Buses are kept sorted by id so lookups are a binary search; call `sort()`
/// after structural edits.
struct GridCase {
    double base_mva = 100.0;
    std::vector<Bus> buses;
    std::vector<Branch> branches;
    std::vector<Generator> generators;

    void sort();

    std::optional<std::size_t> find_bus(int bus_id) const;
    std::size_t bus_index(int bus_id) const;  // throws DataError
    const Bus& bus(int bus_id) const { return buses[bus_index(bus_id)]; }
    Bus& bus(int bus_id) { return buses[bus_index(bus_id)]; }

    Generator* find_generator(std::string_view id);
    const Generator* find_generator(std::string_view id) const;

    int area_of(const Generator& gen) const { return bus(gen.bus_id).area; }

    /// Distinct areas over all buses, ascending.
    std::vector<int> areas() const;
    /// Areas with at least one in-service bus, ascending.
    std::vector<int> energized_areas() const;

    /// Checks referential integrity and the structural invariants; throws DataError.
    void validate() const;
};

struct StructuralCounts {
    int buses = 0;
    int branches = 0;
    int generators = 0;
    int conventional = 0;
    int renewable = 0;
    int sync_conds = 0;
    int storage = 0;
    int loads = 0;
};

StructuralCounts count_structure(const GridCase& grid);

/// Sum of pd/qd over the in-service buses of `area`. Throws DataError for an
/// area that has no buses at all.
std::pair<double, double> total_area_demand(const GridCase& grid, int area);

/// Connected components over in-service branches. Every bus appears in
/// exactly one island; islands and their members are sorted by bus id.
std::vector<std::vector<int>> detect_islands(const GridCase& grid);

/// Islands made of in-service buses only.
std::vector<std::vector<int>> energized_islands(const GridCase& grid);

/// Bus chosen as reference for one island, or nullopt when the island has no
/// enabled source.
std::optional<int> pick_slack_bus(const GridCase& grid, const std::vector<int>& island);

/// Rewrites every bus kind: one slack per sourced energized island, PV where
/// an enabled reactive-capable unit sits, PQ elsewhere. Returns the slack bus
/// of each energized island (nullopt for sourceless islands), island order.
std::vector<std::optional<int>> assign_slack_buses(GridCase& grid);

enum class Method { uss, milp_uc, mng };

std::string_view to_string(Method method);
Method method_from_string(std::string_view text);

struct Setpoint {
    double pg = 0.0;
    double qg = 0.0;
};

/// Commitment decision and setpoints for one period.
struct Schedule {
    int period = 0;
    Method method = Method::uss;
    std::map<std::string, bool> unit_status;
    std::map<std::string, Setpoint> setpoints;  // enabled units only
    bool feasible = false;
    double elapsed = 0.0;  // seconds
    int step_reached = 0;  // USS step, 0 for other methods

    bool enabled(const std::string& id) const;
    int enabled_count(const GridCase& grid, GenType type) const;
};

}  // namespace genprio
