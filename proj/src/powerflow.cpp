#include "genprio/powerflow.hpp"

#include <Eigen/Sparse>
#include <Eigen/KLUSupport>
#include <algorithm>
#include <cmath>
#include <set>

#include "genprio/error.hpp"

namespace genprio {

namespace {

using cd = std::complex<double>;
using SpMat = Eigen::SparseMatrix<double>;
using CSpMat = Eigen::SparseMatrix<cd, Eigen::ColMajor>;
using CVec = Eigen::VectorXcd;

struct BusLimits {
    double qmin = 0.0;  // capable units only, MVar
    double qmax = 0.0;
    double q_fixed = 0.0;  // units without reactive range
    double pmax = 0.0;
    int units = 0;
};

struct Network {
    std::vector<int> bus_ids;  // active buses, ascending
    std::map<int, int> index;
    CSpMat ybus;
    Eigen::VectorXd vm;
    Eigen::VectorXd va;
    Eigen::VectorXd p_spec;  // p.u.
    Eigen::VectorXd q_spec;
    std::vector<int> slack;
    std::vector<int> pv;
    std::vector<int> pq;
};

CVec voltages(const Network& net) {
    CVec v(net.vm.size());
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = std::polar(net.vm[i], net.va[i]);
    return v;
}

struct NewtonResult {
    bool converged = false;
    int iterations = 0;
    double norm = 0.0;
    std::string failure;
};

NewtonResult newton(Network& net, const PowerFlowOptions& opt, int& total_iterations) {
    NewtonResult res;
    std::vector<int> pvpq = net.pv;
    pvpq.insert(pvpq.end(), net.pq.begin(), net.pq.end());
    std::sort(pvpq.begin(), pvpq.end());
    const int n = static_cast<int>(net.bus_ids.size());
    std::vector<int> pos_a(n, -1);
    std::vector<int> pos_m(n, -1);
    for (std::size_t k = 0; k < pvpq.size(); ++k) pos_a[pvpq[k]] = static_cast<int>(k);
    std::vector<int> pq_sorted = net.pq;
    std::sort(pq_sorted.begin(), pq_sorted.end());
    const int npvpq = static_cast<int>(pvpq.size());
    for (std::size_t k = 0; k < pq_sorted.size(); ++k) {
        pos_m[pq_sorted[k]] = npvpq + static_cast<int>(k);
    }
    const int dim = npvpq + static_cast<int>(pq_sorted.size());

    Eigen::VectorXd f(dim);
    Eigen::KLU<SpMat> lu;
    bool analyzed = false;
    for (int it = 0;; ++it) {
        const CVec v = voltages(net);
        const CVec ibus = net.ybus * v;
        for (int i = 0; i < n; ++i) {
            const cd mis = v[i] * std::conj(ibus[i]) - cd(net.p_spec[i], net.q_spec[i]);
            if (pos_a[i] >= 0) f[pos_a[i]] = mis.real();
            if (pos_m[i] >= 0) f[pos_m[i]] = mis.imag();
        }
        res.norm = dim > 0 ? f.lpNorm<Eigen::Infinity>() : 0.0;
        res.iterations = it;
        if (opt.trace) *opt.trace << "iteration " << total_iterations + it << " mismatch " << res.norm << "\n";
        if (!std::isfinite(res.norm)) {
            res.failure = "mismatch became non-finite";
            break;
        }
        if (res.norm <= opt.tolerance) {
            res.converged = true;
            break;
        }
        if (it >= opt.max_iterations) {
            res.failure = "no convergence within " + std::to_string(opt.max_iterations) + " iterations";
            break;
        }

        std::vector<Eigen::Triplet<double>> trips;
        trips.reserve(net.ybus.nonZeros() * 4);
        CVec vnorm(n);
        for (int i = 0; i < n; ++i) vnorm[i] = v[i] / std::abs(v[i]);
        for (int k = 0; k < net.ybus.outerSize(); ++k) {
            for (CSpMat::InnerIterator e(net.ybus, k); e; ++e) {
                const int i = static_cast<int>(e.row());
                const cd y = e.value();
                cd ds_dvm = v[i] * std::conj(y * vnorm[k]);
                cd ds_dva = cd(0, 1) * v[i] * std::conj(-y * v[k]);
                if (i == k) {
                    ds_dvm += std::conj(ibus[i]) * vnorm[i];
                    ds_dva += cd(0, 1) * v[i] * std::conj(ibus[i]);
                }
                if (pos_a[i] >= 0 && pos_a[k] >= 0) trips.emplace_back(pos_a[i], pos_a[k], ds_dva.real());
                if (pos_a[i] >= 0 && pos_m[k] >= 0) trips.emplace_back(pos_a[i], pos_m[k], ds_dvm.real());
                if (pos_m[i] >= 0 && pos_a[k] >= 0) trips.emplace_back(pos_m[i], pos_a[k], ds_dva.imag());
                if (pos_m[i] >= 0 && pos_m[k] >= 0) trips.emplace_back(pos_m[i], pos_m[k], ds_dvm.imag());
            }
        }
        SpMat jac(dim, dim);
        jac.setFromTriplets(trips.begin(), trips.end());
        jac.makeCompressed();
        // The Jacobian pattern is fixed for one bus-type assignment.
        if (!analyzed) {
            lu.analyzePattern(jac);
            analyzed = true;
        }
        lu.factorize(jac);
        if (lu.info() != Eigen::Success) {
            res.failure = "singular Jacobian";
            break;
        }
        const Eigen::VectorXd dx = lu.solve(-f);
        if (lu.info() != Eigen::Success || !dx.allFinite()) {
            res.failure = "singular Jacobian";
            break;
        }
        for (int i = 0; i < n; ++i) {
            if (pos_a[i] >= 0) net.va[i] += dx[pos_a[i]];
            if (pos_m[i] >= 0) net.vm[i] += dx[pos_m[i]];
        }
    }
    total_iterations += res.iterations;
    return res;
}

// Splits a bus total over its units: reactive-capable units move together
// along their ranges, the others keep their fixed value.
void share_reactive(const std::vector<const Generator*>& units, double q_total,
                    std::map<std::string, GenOutput>& out) {
    double qmin = 0.0;
    double qmax = 0.0;
    double fixed = 0.0;
    int capable = 0;
    for (const auto* g : units) {
        if (g->reactive_capable()) {
            qmin += g->qgmin;
            qmax += g->qgmax;
            ++capable;
        } else {
            fixed += g->qgmax;
        }
    }
    const double remaining = q_total - fixed;
    for (const auto* g : units) {
        double q = g->qgmax;
        if (g->reactive_capable()) {
            const double t = (remaining - qmin) / (qmax - qmin);
            q = g->qgmin + t * (g->qgmax - g->qgmin);
        } else if (capable == 0) {
            q = q_total / static_cast<double>(units.size());
        }
        out[g->id].qg = q;
    }
}

}  // namespace

PowerFlowSolution solve_power_flow(const GridCase& grid, const PowerFlowOptions& opt) {
    PowerFlowSolution sol;
    const double base = grid.base_mva;

    std::map<int, std::vector<const Generator*>> units_at;
    for (const auto& g : grid.generators) {
        if (g.status && grid.bus(g.bus_id).in_service) units_at[g.bus_id].push_back(&g);
    }

    Network net;
    for (const auto& island : energized_islands(grid)) {
        int slacks = 0;
        bool source = false;
        bool load = false;
        for (int id : island) {
            const Bus& b = grid.bus(id);
            if (b.kind == BusKind::slack) ++slacks;
            if (units_at.count(id)) source = true;
            if (b.pd != 0.0 || b.qd != 0.0) load = true;
        }
        if (slacks > 1) {
            throw SolverError("island at bus " + std::to_string(island.front()) +
                              " has more than one slack bus");
        }
        if (!source) {
            if (load) {
                sol.failure = "island at bus " + std::to_string(island.front()) +
                              " has load but no source";
                for (int id : island) sol.bus_voltages[id] = {0.0, 0.0};
            } else {
                for (int id : island) sol.bus_voltages[id] = {1.0, 0.0};
            }
            continue;
        }
        if (slacks == 0) {
            throw SolverError("island at bus " + std::to_string(island.front()) + " has no slack bus");
        }
        for (int id : island) net.bus_ids.push_back(id);
    }
    if (!sol.failure.empty()) return sol;

    std::sort(net.bus_ids.begin(), net.bus_ids.end());
    const int n = static_cast<int>(net.bus_ids.size());
    for (int i = 0; i < n; ++i) net.index[net.bus_ids[i]] = i;

    std::vector<Eigen::Triplet<cd>> ytrips;
    for (int i = 0; i < n; ++i) {
        const Bus& b = grid.bus(net.bus_ids[i]);
        ytrips.emplace_back(i, i, cd(b.gs, b.bs) / base);
    }
    for (const auto& br : grid.branches) {
        if (!br.in_service) continue;
        auto fi = net.index.find(br.from_bus);
        auto ti = net.index.find(br.to_bus);
        if (fi == net.index.end() || ti == net.index.end()) continue;
        const cd ys = 1.0 / cd(br.r, br.x);
        const cd half_b(0.0, br.b / 2.0);
        ytrips.emplace_back(fi->second, fi->second, ys + half_b);
        ytrips.emplace_back(ti->second, ti->second, ys + half_b);
        ytrips.emplace_back(fi->second, ti->second, -ys);
        ytrips.emplace_back(ti->second, fi->second, -ys);
    }
    net.ybus.resize(n, n);
    net.ybus.setFromTriplets(ytrips.begin(), ytrips.end());
    net.ybus.makeCompressed();

    net.vm = Eigen::VectorXd::Ones(n);
    net.va = Eigen::VectorXd::Zero(n);
    net.p_spec = Eigen::VectorXd::Zero(n);
    net.q_spec = Eigen::VectorXd::Zero(n);
    std::vector<BusLimits> limits(n);
    for (int i = 0; i < n; ++i) {
        const Bus& b = grid.bus(net.bus_ids[i]);
        BusLimits& lim = limits[i];
        double pg = 0.0;
        if (auto it = units_at.find(b.id); it != units_at.end()) {
            for (const auto* g : it->second) {
                pg += g->pg;
                lim.pmax += g->pgmax;
                ++lim.units;
                if (g->reactive_capable()) {
                    lim.qmin += g->qgmin;
                    lim.qmax += g->qgmax;
                } else {
                    lim.q_fixed += g->qgmax;
                }
            }
        }
        net.p_spec[i] = (pg - b.pd) / base;
        net.q_spec[i] = (lim.q_fixed - b.qd) / base;
        switch (b.kind) {
            case BusKind::slack:
                net.slack.push_back(i);
                net.vm[i] = b.voltage_setpoint;
                break;
            case BusKind::pv:
                net.pv.push_back(i);
                net.vm[i] = b.voltage_setpoint;
                break;
            case BusKind::pq:
                net.pq.push_back(i);
                break;
        }
    }

    int total_iterations = 0;
    NewtonResult nr = newton(net, opt, total_iterations);
    std::vector<double> fixed_q(n, std::nan(""));  // MVar held at a limit
    while (nr.converged && opt.enforce_q_limits) {
        const CVec v = voltages(net);
        const CVec sinj = v.cwiseProduct((net.ybus * v).conjugate());
        std::vector<int> violators;
        for (int i : net.pv) {
            const double qg = sinj[i].imag() * base + grid.bus(net.bus_ids[i]).qd - limits[i].q_fixed;
            if (qg > limits[i].qmax + opt.q_limit_slack) {
                fixed_q[i] = limits[i].qmax;
                violators.push_back(i);
            } else if (qg < limits[i].qmin - opt.q_limit_slack) {
                fixed_q[i] = limits[i].qmin;
                violators.push_back(i);
            }
        }
        if (violators.empty()) break;
        for (int i : violators) {
            net.q_spec[i] = (fixed_q[i] + limits[i].q_fixed - grid.bus(net.bus_ids[i]).qd) / base;
            net.pv.erase(std::find(net.pv.begin(), net.pv.end(), i));
            net.pq.push_back(i);
            sol.switched_to_pq.push_back(net.bus_ids[i]);
            if (opt.trace) *opt.trace << "bus " << net.bus_ids[i] << " held at " << fixed_q[i] << " MVar\n";
        }
        nr = newton(net, opt, total_iterations);
    }
    std::sort(sol.switched_to_pq.begin(), sol.switched_to_pq.end());

    sol.converged = nr.converged;
    sol.iterations = total_iterations;
    sol.mismatch_inf_norm = nr.norm;
    sol.failure = nr.failure;
    for (int i = 0; i < n; ++i) sol.bus_voltages[net.bus_ids[i]] = {net.vm[i], net.va[i]};
    if (!sol.converged) return sol;

    const CVec v = voltages(net);
    const CVec sinj = v.cwiseProduct((net.ybus * v).conjugate());
    for (int i = 0; i < n; ++i) {
        const Bus& b = grid.bus(net.bus_ids[i]);
        auto it = units_at.find(b.id);
        if (it == units_at.end()) continue;
        const auto& units = it->second;
        for (const auto* g : units) sol.gen_outputs[g->id] = {g->pg, 0.0};
        const double p_total = sinj[i].real() * base + b.pd;
        const double q_total = sinj[i].imag() * base + b.qd;
        if (b.kind == BusKind::slack) {
            double pmax = limits[i].pmax;
            for (const auto* g : units) {
                const double share = pmax > 0.0 ? g->pgmax / pmax : 1.0 / static_cast<double>(units.size());
                sol.gen_outputs[g->id].pg = p_total * share;
            }
            sol.slack.push_back({b.id, p_total, q_total});
        }
        share_reactive(units, q_total, sol.gen_outputs);
    }
    return sol;
}

BranchFlow branch_flow(const GridCase& grid, const Branch& br,
                       const std::map<int, BusVoltage>& voltages) {
    const auto& vf = voltages.at(br.from_bus);
    const auto& vt = voltages.at(br.to_bus);
    const cd v_from = std::polar(vf.vm, vf.va);
    const cd v_to = std::polar(vt.vm, vt.va);
    const cd ys = 1.0 / cd(br.r, br.x);
    const cd half_b(0.0, br.b / 2.0);
    const cd i_from = (ys + half_b) * v_from - ys * v_to;
    const cd i_to = (ys + half_b) * v_to - ys * v_from;
    return {v_from * std::conj(i_from) * grid.base_mva, v_to * std::conj(i_to) * grid.base_mva};
}

}  // namespace genprio
