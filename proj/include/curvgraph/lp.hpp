// Small dense linear programs: minimise c·x + offset subject to bounded
// variables and linear rows.

#ifndef CURVGRAPH_LP_HPP
#define CURVGRAPH_LP_HPP

#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace curvgraph {

enum class RowSense { less_equal, greater_equal, equal };

class LinearProgram {
public:
    static constexpr double kInf = std::numeric_limits<double>::infinity();

    struct Row {
        std::vector<std::pair<int, double>> terms;
        RowSense sense = RowSense::less_equal;
        double rhs = 0.0;
    };

    /// Returns the new variable's index.
    int add_variable(double lower, double upper, double cost = 0.0);
    /// Repeated indices in `terms` are summed.
    void add_row(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs);
    void add_cost(int var, double cost) { cost_.at(static_cast<std::size_t>(var)) += cost; }
    void add_offset(double offset) { offset_ += offset; }

    int variable_count() const { return static_cast<int>(cost_.size()); }
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<double>& lower() const { return lower_; }
    const std::vector<double>& upper() const { return upper_; }
    const std::vector<double>& cost() const { return cost_; }
    double offset() const { return offset_; }

    double objective(const std::vector<double>& x) const;
    /// Largest bound or row violation at x.
    double max_violation(const std::vector<double>& x) const;

    /// Human-readable listing, used in failure reports.
    std::string dump() const;

private:
    std::vector<double> lower_, upper_, cost_;
    double offset_ = 0.0;
    std::vector<Row> rows_;
};

enum class LpStatus { optimal, unbounded, infeasible };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    double value = 0.0;
    std::vector<double> x;
    /// Row multipliers recovered from the optimal basis.
    std::vector<double> duals;
    double max_violation = 0.0;
    double duality_gap = 0.0;
    double dual_violation = 0.0;
    int iterations = 0;
};

struct LpTolerances {
    double pivot = 1e-11;
    double optimality = 1e-10;
    double feasibility = 1e-9;
    double duality_gap = 1e-8;
};

/// Two-phase primal simplex. Entering columns follow Dantzig's rule and fall
/// back to Bland's rule after a run of degenerate pivots; ties in the ratio
/// test go to the lowest basic index, so runs are deterministic. Optimal
/// solutions are re-checked against the original rows and against the dual
/// built from the final basis; an InternalError carrying the instance dump
/// is thrown when either check fails the tolerances.
LpResult lp_solve(const LinearProgram& lp, const LpTolerances& tol = {});

}  // namespace curvgraph

#endif  // CURVGRAPH_LP_HPP
