#pragma once

// Reference power-flow quantities computed without the library solver.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "genprio/grid.hpp"
#include "genprio/powerflow.hpp"

namespace oracle {

using genprio::BusKind;
using genprio::GridCase;
using genprio::PowerFlowSolution;
using cd = std::complex<double>;

// Independent admittance matrix, indexed by position in grid.buses.
inline std::vector<std::vector<cd>> admittance(const GridCase& g) {
    const std::size_t n = g.buses.size();
    std::vector<std::vector<cd>> y(n, std::vector<cd>(n));
    for (std::size_t i = 0; i < n; ++i) y[i][i] += cd(g.buses[i].gs, g.buses[i].bs) / g.base_mva;
    for (const auto& br : g.branches) {
        if (!br.in_service) continue;
        const std::size_t f = g.bus_index(br.from_bus);
        const std::size_t t = g.bus_index(br.to_bus);
        const cd ys = 1.0 / cd(br.r, br.x);
        y[f][f] += ys + cd(0, br.b / 2);
        y[t][t] += ys + cd(0, br.b / 2);
        y[f][t] -= ys;
        y[t][f] -= ys;
    }
    return y;
}

inline std::vector<cd> injections(const GridCase& g, const PowerFlowSolution& s) {
    const auto y = admittance(g);
    std::vector<cd> v;
    for (const auto& b : g.buses) {
        const auto it = s.bus_voltages.find(b.id);
        v.push_back(it == s.bus_voltages.end() ? cd(0.0) : std::polar(it->second.vm, it->second.va));
    }
    std::vector<cd> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        cd cur = 0.0;
        for (std::size_t k = 0; k < v.size(); ++k) cur += y[i][k] * v[k];
        out[i] = v[i] * std::conj(cur);
    }
    return out;
}

// Gauss-Seidel with PV-bus reactive updates; slack is bus index 0.
inline std::vector<cd> gauss_seidel(const GridCase& g) {
    const auto y = admittance(g);
    const std::size_t n = g.buses.size();
    std::vector<cd> v(n, 1.0);
    std::vector<double> p(n), q(n);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = -g.buses[i].pd / g.base_mva;
        q[i] = -g.buses[i].qd / g.base_mva;
        if (g.buses[i].kind != BusKind::pq) v[i] = g.buses[i].voltage_setpoint;
    }
    for (const auto& gen : g.generators) {
        if (gen.status) p[g.bus_index(gen.bus_id)] += gen.pg / g.base_mva;
    }
    for (int it = 0; it < 200000; ++it) {
        double change = 0.0;
        for (std::size_t i = 1; i < n; ++i) {
            cd sum = 0.0;
            for (std::size_t k = 0; k < n; ++k) {
                if (k != i) sum += y[i][k] * v[k];
            }
            double qi = q[i];
            if (g.buses[i].kind == BusKind::pv) qi = -std::imag(std::conj(v[i]) * (sum + y[i][i] * v[i]));
            cd next = (cd(p[i], -qi) / std::conj(v[i]) - sum) / y[i][i];
            if (g.buses[i].kind == BusKind::pv) next = std::polar(g.buses[i].voltage_setpoint, std::arg(next));
            change = std::max(change, std::abs(next - v[i]));
            v[i] = next;
        }
        if (change < 1e-15) break;
    }
    return v;
}

inline GridCase relabel(const GridCase& g, const std::map<int, int>& to) {
    GridCase out = g;
    for (auto& b : out.buses) b.id = to.at(b.id);
    for (auto& br : out.branches) {
        br.from_bus = to.at(br.from_bus);
        br.to_bus = to.at(br.to_bus);
    }
    for (auto& gen : out.generators) gen.bus_id = to.at(gen.bus_id);
    out.sort();
    return out;
}

}  // namespace oracle
