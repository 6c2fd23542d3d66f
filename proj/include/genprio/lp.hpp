#pragma once

#include <limits>
#include <vector>

namespace genprio {

enum class Relation { less_equal, greater_equal, equal };

/// min c'x  s.t.  rows, 0 <= x <= upper.
struct LinearProgram {
    struct Row {
        std::vector<double> coefficients;  // dense, one per variable
        Relation relation = Relation::less_equal;
        double rhs = 0.0;
    };

    std::vector<double> objective;
    std::vector<double> upper;  // +inf when unbounded above
    std::vector<Row> rows;

    std::size_t variable_count() const { return objective.size(); }
    /// Adds a variable with the given cost and upper bound; returns its index.
    std::size_t add_variable(double cost, double upper_bound = std::numeric_limits<double>::infinity());
    void add_row(std::vector<double> coefficients, Relation relation, double rhs);
};

struct LpResult {
    enum class Status { optimal, infeasible, unbounded, iteration_limit };
    Status status = Status::infeasible;
    std::vector<double> x;
    double objective = 0.0;
    int pivots = 0;
};

/// Dense two-phase primal simplex (Dantzig pricing, Bland's rule after
/// repeated degenerate pivots).
LpResult solve_lp(const LinearProgram& lp, int max_pivots = 20000);

}  // namespace genprio
