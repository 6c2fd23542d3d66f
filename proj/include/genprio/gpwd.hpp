#pragma once

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "genprio/grid.hpp"
#include "genprio/opf.hpp"

namespace genprio {

/// Generator Participation Weight Determination factor and its components.
struct GpwdBreakdown {
    std::string unit_id;
    int area = 0;
    double pgmax = 0.0;
    bool eligible = false;  // enabled in the scenario case for this period
    double ps = 0.0;
    double apf_p = 0.0;
    double apf_q = 0.0;
    double mp = 0.0;
    double ratio_term = 0.0;
    double gpwd = 0.0;
};

/// 1 when the unit was enabled in the previous schedule, else 0.
double prior_state(const std::string& unit_id, const Schedule* previous);

struct ParticipationFactors {
    std::map<std::string, std::pair<double, double>> factors;  // unit -> (apf_p, apf_q)
    std::vector<std::string> warnings;
};

/// Probe solve with every eligible conventional unit on and pgmin relaxed to 0;
/// each unit's share of its area's conventional Pg and |Qg|.
ParticipationFactors area_participation_factors(const GridCase& grid,
                                                const OpfOptions& options = {});

/// Size bracket score from relative pgmax and qgmax (each in [0, 1]).
double maximum_power_score(double relative_pgmax, double relative_qgmax);

/// pgmin/qgmax relative to the largest such ratio among `units`; units with
/// qgmax <= 0 get 1.
std::map<std::string, double> ratio_terms(const std::vector<const Generator*>& units);

/// Ranked conventional units, best first. Ties: larger pgmax, then lower id.
std::vector<GpwdBreakdown> rank_units(const GridCase& grid, const Schedule* previous,
                                      const OpfOptions& options = {});

/// unit,ps,apf_p,apf_q,mp,ratio_term,gpwd,rank
void write_gpwd_csv(std::ostream& out, const std::vector<GpwdBreakdown>& ranking);

}  // namespace genprio
