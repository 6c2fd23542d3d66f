#include "genprio/gpwd.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>

namespace genprio {

double prior_state(const std::string& unit_id, const Schedule* previous) {
    return previous && previous->enabled(unit_id) ? 1.0 : 0.0;
}

ParticipationFactors area_participation_factors(const GridCase& grid, const OpfOptions& options) {
    ParticipationFactors out;
    GridCase probe = grid;
    for (auto& g : probe.generators) {
        if (g.type != GenType::conventional) continue;
        g.pgmin = 0.0;
        g.status = probe.bus(g.bus_id).in_service && g.status;
    }
    for (const auto& g : grid.generators) {
        if (g.type == GenType::conventional) out.factors[g.id] = {0.0, 0.0};
    }

    const OpfResult res = opf_check(probe, options);
    if (!res.flow.converged) {
        out.warnings.push_back("participation probe did not converge (" + res.flow.failure +
                               "); all factors set to 0");
        return out;
    }
    std::map<int, double> p_total;
    std::map<int, double> q_total;
    for (const auto& g : probe.generators) {
        if (g.type != GenType::conventional || !g.status) continue;
        const auto& o = res.flow.gen_outputs.at(g.id);
        p_total[probe.area_of(g)] += o.pg;
        q_total[probe.area_of(g)] += std::abs(o.qg);
    }
    for (const auto& g : probe.generators) {
        if (g.type != GenType::conventional || !g.status) continue;
        const auto& o = res.flow.gen_outputs.at(g.id);
        const int area = probe.area_of(g);
        auto& f = out.factors[g.id];
        f.first = p_total[area] > 0.0 ? o.pg / p_total[area] : 0.0;
        f.second = q_total[area] > 0.0 ? std::abs(o.qg) / q_total[area] : 0.0;
    }
    return out;
}

double maximum_power_score(double relative_pgmax, double relative_qgmax) {
    auto bracket = [](double rel) {
        if (rel > 0.95) return 0.5;
        if (rel > 0.80) return 0.25;
        return 0.0;
    };
    return bracket(relative_pgmax) + bracket(relative_qgmax);
}

std::map<std::string, double> ratio_terms(const std::vector<const Generator*>& units) {
    std::map<std::string, double> out;
    double max_raw = 0.0;
    for (const auto* g : units) {
        if (g->qgmax > 0.0) max_raw = std::max(max_raw, g->pgmin / g->qgmax);
    }
    for (const auto* g : units) {
        if (g->qgmax <= 0.0) out[g->id] = 1.0;
        else out[g->id] = max_raw > 0.0 ? (g->pgmin / g->qgmax) / max_raw : 0.0;
    }
    return out;
}

std::vector<GpwdBreakdown> rank_units(const GridCase& grid, const Schedule* previous,
                                      const OpfOptions& options) {
    std::vector<const Generator*> eligible;
    double max_pgmax = 0.0;
    double max_qgmax = 0.0;
    for (const auto& g : grid.generators) {
        if (g.type != GenType::conventional || !g.status || !grid.bus(g.bus_id).in_service) continue;
        eligible.push_back(&g);
        max_pgmax = std::max(max_pgmax, g.pgmax);
        max_qgmax = std::max(max_qgmax, g.qgmax);
    }
    const auto apf = area_participation_factors(grid, options);
    const auto ratios = ratio_terms(eligible);

    std::vector<GpwdBreakdown> ranking;
    for (const auto& g : grid.generators) {
        if (g.type != GenType::conventional) continue;
        GpwdBreakdown b;
        b.unit_id = g.id;
        b.area = grid.area_of(g);
        b.pgmax = g.pgmax;
        b.eligible = std::find(eligible.begin(), eligible.end(), &g) != eligible.end();
        b.ps = prior_state(g.id, previous);
        if (b.eligible) {
            std::tie(b.apf_p, b.apf_q) = apf.factors.at(g.id);
            b.mp = maximum_power_score(max_pgmax > 0 ? g.pgmax / max_pgmax : 0.0,
                                       max_qgmax > 0 ? g.qgmax / max_qgmax : 0.0);
            b.ratio_term = ratios.at(g.id);
            b.gpwd = std::max(0.0, b.ps + b.apf_p + b.apf_q + b.mp - b.ratio_term);
        }
        ranking.push_back(b);
    }
    std::stable_sort(ranking.begin(), ranking.end(), [](const GpwdBreakdown& a, const GpwdBreakdown& b) {
        if (a.gpwd != b.gpwd) return a.gpwd > b.gpwd;
        if (a.pgmax != b.pgmax) return a.pgmax > b.pgmax;
        return a.unit_id < b.unit_id;
    });
    return ranking;
}

void write_gpwd_csv(std::ostream& out, const std::vector<GpwdBreakdown>& ranking) {
    out << "unit,ps,apf_p,apf_q,mp,ratio_term,gpwd,rank\n";
    out << std::setprecision(10);
    int rank = 1;
    for (const auto& b : ranking) {
        out << b.unit_id << ',' << b.ps << ',' << b.apf_p << ',' << b.apf_q << ',' << b.mp << ','
            << b.ratio_term << ',' << b.gpwd << ',' << rank++ << '\n';
    }
}

}  // namespace genprio
