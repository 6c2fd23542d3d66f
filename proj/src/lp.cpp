#include "genprio/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace genprio {

std::size_t LinearProgram::add_variable(double cost, double upper_bound) {
    objective.push_back(cost);
    upper.push_back(upper_bound);
    for (auto& r : rows) r.coefficients.push_back(0.0);
    return objective.size() - 1;
}

void LinearProgram::add_row(std::vector<double> coefficients, Relation relation, double rhs) {
    if (coefficients.size() != objective.size()) {
        throw std::invalid_argument("row width does not match the variable count");
    }
    rows.push_back({std::move(coefficients), relation, rhs});
}

namespace {

constexpr double kEps = 1e-9;

class Tableau {
public:
    Tableau(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_((rows + 1) * (cols + 1), 0.0) {}

    double& at(std::size_t r, std::size_t c) { return a_[r * (cols_ + 1) + c]; }
    double at(std::size_t r, std::size_t c) const { return a_[r * (cols_ + 1) + c]; }
    double& rhs(std::size_t r) { return at(r, cols_); }
    // Row `rows_` holds the reduced costs; its rhs is minus the objective.
    double& cost(std::size_t c) { return at(rows_, c); }

    void pivot(std::size_t pr, std::size_t pc) {
        const double inv = 1.0 / at(pr, pc);
        for (std::size_t c = 0; c <= cols_; ++c) at(pr, c) *= inv;
        at(pr, pc) = 1.0;
        for (std::size_t r = 0; r <= rows_; ++r) {
            if (r == pr) continue;
            const double factor = at(r, pc);
            if (factor == 0.0) continue;
            for (std::size_t c = 0; c <= cols_; ++c) at(r, c) -= factor * at(pr, c);
            at(r, pc) = 0.0;
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> a_;
};

enum class PhaseResult { optimal, unbounded, limit };

PhaseResult iterate(Tableau& t, std::vector<std::size_t>& basis, const std::vector<bool>& allowed,
                    int& pivots, int max_pivots) {
    int degenerate_run = 0;
    for (;;) {
        const bool bland = degenerate_run > 50;
        std::size_t enter = t.cols();
        double best = -kEps;
        for (std::size_t c = 0; c < t.cols(); ++c) {
            if (!allowed[c]) continue;
            const double rc = t.cost(c);
            if (rc < -kEps && (bland ? enter == t.cols() : rc < best)) {
                enter = c;
                best = rc;
            }
        }
        if (enter == t.cols()) return PhaseResult::optimal;

        std::size_t leave = t.rows();
        double ratio = 0.0;
        for (std::size_t r = 0; r < t.rows(); ++r) {
            const double a = t.at(r, enter);
            if (a <= kEps) continue;
            const double q = t.rhs(r) / a;
            if (leave == t.rows() || q < ratio - kEps ||
                (std::abs(q - ratio) <= kEps && basis[r] < basis[leave])) {
                leave = r;
                ratio = q;
            }
        }
        if (leave == t.rows()) return PhaseResult::unbounded;
        if (++pivots > max_pivots) return PhaseResult::limit;
        degenerate_run = ratio <= kEps ? degenerate_run + 1 : 0;
        t.pivot(leave, enter);
        basis[leave] = enter;
    }
}

}  // namespace

LpResult solve_lp(const LinearProgram& lp, int max_pivots) {
    const std::size_t n = lp.variable_count();

    struct StdRow {
        std::vector<double> coef;
        Relation rel;
        double rhs;
    };
    std::vector<StdRow> rows;
    rows.reserve(lp.rows.size() + n);
    for (const auto& r : lp.rows) rows.push_back({r.coefficients, r.relation, r.rhs});
    for (std::size_t j = 0; j < n; ++j) {
        if (std::isfinite(lp.upper[j])) {
            std::vector<double> coef(n, 0.0);
            coef[j] = 1.0;
            rows.push_back({std::move(coef), Relation::less_equal, lp.upper[j]});
        }
    }
    for (auto& r : rows) {
        if (r.rhs < 0.0) {
            for (double& c : r.coef) c = -c;
            r.rhs = -r.rhs;
            if (r.rel == Relation::less_equal) r.rel = Relation::greater_equal;
            else if (r.rel == Relation::greater_equal) r.rel = Relation::less_equal;
        }
    }

    // Columns: structural | slack/surplus | artificial.
    const std::size_t m = rows.size();
    std::size_t n_slack = 0;
    std::size_t n_art = 0;
    for (const auto& r : rows) {
        if (r.rel != Relation::equal) ++n_slack;
        if (r.rel != Relation::less_equal) ++n_art;
    }
    const std::size_t cols = n + n_slack + n_art;
    Tableau t(m, cols);
    std::vector<std::size_t> basis(m);
    std::vector<bool> artificial(cols, false);
    std::size_t next_slack = n;
    std::size_t next_art = n + n_slack;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t.at(i, j) = rows[i].coef[j];
        t.rhs(i) = rows[i].rhs;
        switch (rows[i].rel) {
            case Relation::less_equal:
                t.at(i, next_slack) = 1.0;
                basis[i] = next_slack++;
                break;
            case Relation::greater_equal:
                t.at(i, next_slack++) = -1.0;
                t.at(i, next_art) = 1.0;
                artificial[next_art] = true;
                basis[i] = next_art++;
                break;
            case Relation::equal:
                t.at(i, next_art) = 1.0;
                artificial[next_art] = true;
                basis[i] = next_art++;
                break;
        }
    }

    LpResult result;
    std::vector<bool> allowed(cols, true);

    if (n_art > 0) {
        // Phase 1: minimise the sum of artificials.
        for (std::size_t c = 0; c <= cols; ++c) t.cost(c) = 0.0;
        for (std::size_t c = 0; c < cols; ++c) {
            if (artificial[c]) t.cost(c) = 1.0;
        }
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            for (std::size_t c = 0; c <= cols; ++c) t.cost(c) -= t.at(i, c);
        }
        const auto phase1 = iterate(t, basis, allowed, result.pivots, max_pivots);
        if (phase1 == PhaseResult::limit) {
            result.status = LpResult::Status::iteration_limit;
            return result;
        }
        if (-t.cost(cols) > 1e-7) {
            result.status = LpResult::Status::infeasible;
            return result;
        }
        // Drive zero-level artificials out of the basis where possible.
        for (std::size_t i = 0; i < m; ++i) {
            if (!artificial[basis[i]]) continue;
            for (std::size_t c = 0; c < cols; ++c) {
                if (!artificial[c] && std::abs(t.at(i, c)) > kEps) {
                    t.pivot(i, c);
                    basis[i] = c;
                    break;
                }
            }
        }
        for (std::size_t c = 0; c < cols; ++c) {
            if (artificial[c]) allowed[c] = false;
        }
    }

    // Phase 2 with the true objective.
    for (std::size_t c = 0; c <= cols; ++c) t.cost(c) = 0.0;
    for (std::size_t j = 0; j < n; ++j) t.cost(j) = lp.objective[j];
    for (std::size_t i = 0; i < m; ++i) {
        const double cb = basis[i] < n ? lp.objective[basis[i]] : 0.0;
        if (cb == 0.0) continue;
        for (std::size_t c = 0; c <= cols; ++c) t.cost(c) -= cb * t.at(i, c);
    }
    const auto phase2 = iterate(t, basis, allowed, result.pivots, max_pivots);
    if (phase2 == PhaseResult::unbounded) {
        result.status = LpResult::Status::unbounded;
        return result;
    }
    if (phase2 == PhaseResult::limit) {
        result.status = LpResult::Status::iteration_limit;
        return result;
    }

    result.status = LpResult::Status::optimal;
    result.x.assign(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) result.x[basis[i]] = t.rhs(i);
    }
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) result.objective += lp.objective[j] * result.x[j];
    return result;
}

}  // namespace genprio
