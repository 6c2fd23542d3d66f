#include "genprio/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "genprio/error.hpp"

namespace genprio {

std::string_view to_string(BusKind kind) {
    switch (kind) {
        case BusKind::slack: return "slack";
        case BusKind::pv: return "pv";
        case BusKind::pq: return "pq";
    }
    return "pq";
}

std::string_view to_string(GenType type) {
    switch (type) {
        case GenType::conventional: return "conventional";
        case GenType::solar: return "solar";
        case GenType::wind: return "wind";
        case GenType::hydro: return "hydro";
        case GenType::csp: return "csp";
        case GenType::sync_cond: return "sync_cond";
        case GenType::storage: return "storage";
    }
    return "conventional";
}

BusKind bus_kind_from_string(std::string_view text) {
    if (text == "slack") return BusKind::slack;
    if (text == "pv") return BusKind::pv;
    if (text == "pq") return BusKind::pq;
    throw DataError("unknown bus kind '" + std::string(text) + "'");
}

GenType gen_type_from_string(std::string_view text) {
    static const GenType all[] = {GenType::conventional, GenType::solar, GenType::wind,
                                  GenType::hydro,        GenType::csp,   GenType::sync_cond,
                                  GenType::storage};
    for (GenType t : all) {
        if (to_string(t) == text) return t;
    }
    throw DataError("unknown generator type '" + std::string(text) + "'");
}

bool is_renewable(GenType type) {
    return type == GenType::solar || type == GenType::wind || type == GenType::hydro ||
           type == GenType::csp;
}

void GridCase::sort() {
    std::sort(buses.begin(), buses.end(), [](const Bus& a, const Bus& b) { return a.id < b.id; });
    std::sort(generators.begin(), generators.end(),
              [](const Generator& a, const Generator& b) { return a.id < b.id; });
}

std::optional<std::size_t> GridCase::find_bus(int bus_id) const {
    auto it = std::lower_bound(buses.begin(), buses.end(), bus_id,
                               [](const Bus& b, int id) { return b.id < id; });
    if (it == buses.end() || it->id != bus_id) return std::nullopt;
    return static_cast<std::size_t>(it - buses.begin());
}

std::size_t GridCase::bus_index(int bus_id) const {
    auto idx = find_bus(bus_id);
    if (!idx) throw DataError("unknown bus " + std::to_string(bus_id));
    return *idx;
}

Generator* GridCase::find_generator(std::string_view id) {
    auto it = std::lower_bound(generators.begin(), generators.end(), id,
                               [](const Generator& g, std::string_view v) { return g.id < v; });
    if (it != generators.end() && it->id == id) return &*it;
    // Fall back to a scan for cases that were edited without re-sorting.
    for (auto& g : generators) {
        if (g.id == id) return &g;
    }
    return nullptr;
}

const Generator* GridCase::find_generator(std::string_view id) const {
    return const_cast<GridCase*>(this)->find_generator(id);
}

std::vector<int> GridCase::areas() const {
    std::set<int> out;
    for (const auto& b : buses) out.insert(b.area);
    return {out.begin(), out.end()};
}

std::vector<int> GridCase::energized_areas() const {
    std::set<int> out;
    for (const auto& b : buses) {
        if (b.in_service) out.insert(b.area);
    }
    return {out.begin(), out.end()};
}

void GridCase::validate() const {
    if (base_mva <= 0) throw DataError("base_mva must be positive");
    for (std::size_t i = 0; i < buses.size(); ++i) {
        const Bus& b = buses[i];
        if (i > 0 && buses[i - 1].id >= b.id) {
            throw DataError("buses not sorted/unique at bus " + std::to_string(b.id));
        }
        if (!(b.base_kv > 0)) throw DataError("bus " + std::to_string(b.id) + ": base_kv <= 0");
        if (!std::isfinite(b.pd) || !std::isfinite(b.qd)) {
            throw DataError("bus " + std::to_string(b.id) + ": non-finite load");
        }
    }
    for (const auto& br : branches) {
        if (!find_bus(br.from_bus) || !find_bus(br.to_bus)) {
            throw DataError("branch " + br.id + " references a missing bus");
        }
        if (br.x == 0.0) throw DataError("branch " + br.id + ": zero reactance");
    }
    std::set<std::string> ids;
    for (const auto& g : generators) {
        if (!ids.insert(g.id).second) throw DataError("duplicate generator id " + g.id);
        if (!find_bus(g.bus_id)) {
            throw DataError("generator " + g.id + " references missing bus " +
                            std::to_string(g.bus_id));
        }
        if (g.pgmin > g.pgmax) throw DataError("generator " + g.id + ": pgmin > pgmax");
        if (g.qgmin > g.qgmax) throw DataError("generator " + g.id + ": qgmin > qgmax");
    }
}

StructuralCounts count_structure(const GridCase& grid) {
    StructuralCounts c;
    c.buses = static_cast<int>(grid.buses.size());
    c.branches = static_cast<int>(grid.branches.size());
    c.generators = static_cast<int>(grid.generators.size());
    for (const auto& g : grid.generators) {
        if (g.type == GenType::conventional) ++c.conventional;
        else if (is_renewable(g.type)) ++c.renewable;
        else if (g.type == GenType::sync_cond) ++c.sync_conds;
        else if (g.type == GenType::storage) ++c.storage;
    }
    for (const auto& b : grid.buses) {
        if (b.pd != 0.0 || b.qd != 0.0) ++c.loads;
    }
    return c;
}

std::pair<double, double> total_area_demand(const GridCase& grid, int area) {
    bool known = false;
    double p = 0.0;
    double q = 0.0;
    for (const auto& b : grid.buses) {
        if (b.area != area) continue;
        known = true;
        if (!b.in_service) continue;
        p += b.pd;
        q += b.qd;
    }
    if (!known) throw DataError("unknown area " + std::to_string(area));
    return {p, q};
}

namespace {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return;
        if (b < a) std::swap(a, b);
        parent_[b] = a;
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace

std::vector<std::vector<int>> detect_islands(const GridCase& grid) {
    // Work on indices of a sorted id list so callers may pass unsorted cases.
    std::vector<int> ids;
    ids.reserve(grid.buses.size());
    for (const auto& b : grid.buses) ids.push_back(b.id);
    std::sort(ids.begin(), ids.end());
    auto pos = [&](int id) {
        return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
    };

    DisjointSet sets(ids.size());
    for (const auto& br : grid.branches) {
        if (!br.in_service) continue;
        sets.unite(pos(br.from_bus), pos(br.to_bus));
    }
    std::map<std::size_t, std::vector<int>> groups;
    for (std::size_t i = 0; i < ids.size(); ++i) groups[sets.find(i)].push_back(ids[i]);

    std::vector<std::vector<int>> islands;
    islands.reserve(groups.size());
    for (auto& [root, members] : groups) islands.push_back(std::move(members));
    std::sort(islands.begin(), islands.end(),
              [](const auto& a, const auto& b) { return a.front() < b.front(); });
    return islands;
}

std::vector<std::vector<int>> energized_islands(const GridCase& grid) {
    std::vector<std::vector<int>> out;
    for (auto& island : detect_islands(grid)) {
        if (grid.bus(island.front()).in_service) out.push_back(std::move(island));
    }
    return out;
}

std::optional<int> pick_slack_bus(const GridCase& grid, const std::vector<int>& island) {
    // Preference: largest enabled conventional unit, then any enabled unit by
    // pgmax, then by reactive range. Ties go to the lowest bus id.
    struct Candidate {
        int rank = -1;
        double size = -1.0;
        int bus = 0;
    };
    Candidate best;
    std::set<int> members(island.begin(), island.end());
    for (const auto& g : grid.generators) {
        if (!g.status || !members.count(g.bus_id)) continue;
        Candidate c;
        c.bus = g.bus_id;
        if (g.type == GenType::conventional) {
            c.rank = 2;
            c.size = g.pgmax;
        } else if (g.pgmax > 0.0) {
            c.rank = 1;
            c.size = g.pgmax;
        } else if (g.reactive_capable()) {
            c.rank = 0;
            c.size = g.qgmax - g.qgmin;
        } else {
            continue;
        }
        bool better = c.rank > best.rank || (c.rank == best.rank && c.size > best.size) ||
                      (c.rank == best.rank && c.size == best.size && c.bus < best.bus);
        if (better) best = c;
    }
    if (best.rank < 0) return std::nullopt;
    return best.bus;
}

std::vector<std::optional<int>> assign_slack_buses(GridCase& grid) {
    std::set<int> pv_buses;
    for (const auto& g : grid.generators) {
        if (g.status && g.reactive_capable()) pv_buses.insert(g.bus_id);
    }
    for (auto& b : grid.buses) {
        b.kind = (b.in_service && pv_buses.count(b.id)) ? BusKind::pv : BusKind::pq;
    }
    std::vector<std::optional<int>> slacks;
    for (const auto& island : energized_islands(grid)) {
        auto slack = pick_slack_bus(grid, island);
        if (slack) grid.bus(*slack).kind = BusKind::slack;
        slacks.push_back(slack);
    }
    return slacks;
}

std::string_view to_string(Method method) {
    switch (method) {
        case Method::uss: return "uss";
        case Method::milp_uc: return "milp";
        case Method::mng: return "mng";
    }
    return "uss";
}

Method method_from_string(std::string_view text) {
    if (text == "uss") return Method::uss;
    if (text == "milp" || text == "milp_uc") return Method::milp_uc;
    if (text == "mng") return Method::mng;
    throw ConfigError("unknown method '" + std::string(text) + "' (expected uss, milp or mng)");
}

bool Schedule::enabled(const std::string& id) const {
    auto it = unit_status.find(id);
    return it != unit_status.end() && it->second;
}

int Schedule::enabled_count(const GridCase& grid, GenType type) const {
    int n = 0;
    for (const auto& g : grid.generators) {
        if (g.type == type && enabled(g.id)) ++n;
    }
    return n;
}

}  // namespace genprio
