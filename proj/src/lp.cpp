#include "curvgraph/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <Eigen/Dense>

#include "curvgraph/graph.hpp"

namespace curvgraph {

int LinearProgram::add_variable(double lower, double upper, double cost) {
    if (lower > upper) throw InputError("variable bounds are inverted");
    lower_.push_back(lower);
    upper_.push_back(upper);
    cost_.push_back(cost);
    return variable_count() - 1;
}

void LinearProgram::add_row(std::vector<std::pair<int, double>> terms, RowSense sense, double rhs) {
    std::sort(terms.begin(), terms.end());
    std::vector<std::pair<int, double>> merged;
    for (const auto& [var, coef] : terms) {
        if (var < 0 || var >= variable_count()) throw InputError("row references an unknown variable");
        if (!merged.empty() && merged.back().first == var)
            merged.back().second += coef;
        else
            merged.emplace_back(var, coef);
    }
    std::erase_if(merged, [](const auto& t) { return t.second == 0.0; });
    rows_.push_back({std::move(merged), sense, rhs});
}

double LinearProgram::objective(const std::vector<double>& x) const {
    double value = offset_;
    for (std::size_t j = 0; j < cost_.size(); ++j) value += cost_[j] * x[j];
    return value;
}

double LinearProgram::max_violation(const std::vector<double>& x) const {
    double worst = 0.0;
    for (std::size_t j = 0; j < cost_.size(); ++j) {
        worst = std::max(worst, lower_[j] - x[j]);
        worst = std::max(worst, x[j] - upper_[j]);
    }
    for (const Row& row : rows_) {
        double lhs = 0.0;
        for (const auto& [var, coef] : row.terms) lhs += coef * x[var];
        switch (row.sense) {
            case RowSense::less_equal: worst = std::max(worst, lhs - row.rhs); break;
            case RowSense::greater_equal: worst = std::max(worst, row.rhs - lhs); break;
            case RowSense::equal: worst = std::max(worst, std::abs(lhs - row.rhs)); break;
        }
    }
    return worst;
}

std::string LinearProgram::dump() const {
    std::ostringstream out;
    out.precision(17);
    out << "minimize " << offset_;
    for (std::size_t j = 0; j < cost_.size(); ++j)
        if (cost_[j] != 0.0) out << " + " << cost_[j] << "*x" << j;
    out << "\n";
    for (std::size_t j = 0; j < cost_.size(); ++j) out << "  " << lower_[j] << " <= x" << j << " <= " << upper_[j] << "\n";
    for (const Row& row : rows_) {
        out << " ";
        for (const auto& [var, coef] : row.terms) out << " + " << coef << "*x" << var;
        out << (row.sense == RowSense::less_equal ? " <= " : row.sense == RowSense::greater_equal ? " >= " : " = ")
            << row.rhs << "\n";
    }
    return out.str();
}

namespace {

// x_j = offset + sum over (column, sign) of sign * s_column, with s >= 0.
struct VariableMap {
    double offset = 0.0;
    std::vector<std::pair<int, double>> columns;
};

class Simplex {
public:
    Simplex(const LinearProgram& lp, const LpTolerances& tol) : lp_(lp), tol_(tol) { build(); }

    LpResult run();

private:
    const LinearProgram& lp_;
    LpTolerances tol_;

    std::vector<VariableMap> vars_;
    int structural_ = 0;
    int slack_ = 0;
    int artificial_ = 0;
    // Standard form A s = b, b >= 0, without artificial columns.
    std::vector<std::vector<double>> a_;
    std::vector<double> b_;
    std::vector<double> c_;
    std::vector<int> original_row_;  // index into lp rows, -1 for internal bound rows
    std::vector<double> row_sign_;

    std::vector<std::vector<double>> tab_;  // rows x (columns + 1)
    std::vector<int> basis_;
    std::vector<char> row_alive_;
    int iterations_ = 0;

    int columns() const { return structural_ + slack_ + artificial_; }
    bool is_artificial(int j) const { return j >= structural_ + slack_; }

    void build();
    void pivot(int row, int col);
    std::vector<double> reduced_costs(const std::vector<double>& cost) const;
    // Returns false when unbounded.
    bool optimise(const std::vector<double>& cost, bool allow_artificial);
};

void Simplex::build() {
    const int n = lp_.variable_count();
    vars_.resize(n);
    struct PendingRow {
        std::vector<double> coef;  // over structural columns, grown lazily
        RowSense sense;
        double rhs;
        int origin;
    };
    std::vector<PendingRow> rows;

    for (int j = 0; j < n; ++j) {
        const double lo = lp_.lower()[j];
        const double hi = lp_.upper()[j];
        VariableMap& vm = vars_[j];
        if (std::isfinite(lo) && lo == hi) {
            vm.offset = lo;
        } else if (std::isfinite(lo)) {
            vm.offset = lo;
            vm.columns.emplace_back(structural_++, 1.0);
            if (std::isfinite(hi)) rows.push_back({{}, RowSense::less_equal, hi - lo, -1 - j});
        } else if (std::isfinite(hi)) {
            vm.offset = hi;
            vm.columns.emplace_back(structural_++, -1.0);
        } else {
            vm.columns.emplace_back(structural_++, 1.0);
            vm.columns.emplace_back(structural_++, -1.0);
        }
    }
    for (auto& r : rows) {
        const int var = -1 - r.origin;
        r.coef.assign(structural_, 0.0);
        r.coef[vars_[var].columns.front().first] = 1.0;
        r.origin = -1;
    }
    for (std::size_t i = 0; i < lp_.rows().size(); ++i) {
        const auto& row = lp_.rows()[i];
        PendingRow r{std::vector<double>(structural_, 0.0), row.sense, row.rhs, static_cast<int>(i)};
        for (const auto& [var, coef] : row.terms) {
            r.rhs -= coef * vars_[var].offset;
            for (const auto& [col, sign] : vars_[var].columns) r.coef[col] += coef * sign;
        }
        rows.push_back(std::move(r));
    }

    c_.assign(structural_, 0.0);
    for (int j = 0; j < n; ++j)
        for (const auto& [col, sign] : vars_[j].columns) c_[col] += lp_.cost()[j] * sign;

    for (const auto& r : rows)
        if (r.sense != RowSense::equal) ++slack_;
    const int m = static_cast<int>(rows.size());
    a_.assign(m, std::vector<double>(structural_ + slack_, 0.0));
    b_.assign(m, 0.0);
    original_row_.assign(m, -1);
    row_sign_.assign(m, 1.0);
    c_.resize(structural_ + slack_, 0.0);

    int slack_col = structural_;
    std::vector<int> own_slack(m, -1);
    for (int i = 0; i < m; ++i) {
        std::copy(rows[i].coef.begin(), rows[i].coef.end(), a_[i].begin());
        if (rows[i].sense == RowSense::less_equal) a_[i][slack_col] = 1.0;
        if (rows[i].sense == RowSense::greater_equal) a_[i][slack_col] = -1.0;
        if (rows[i].sense != RowSense::equal) own_slack[i] = slack_col++;
        b_[i] = rows[i].rhs;
        original_row_[i] = rows[i].origin;
        if (b_[i] < 0.0) {
            for (double& v : a_[i]) v = -v;
            b_[i] = -b_[i];
            row_sign_[i] = -1.0;
        }
    }

    // Rows whose slack enters with +1 start basic on it; the rest need an
    // artificial column.
    basis_.assign(m, -1);
    for (int i = 0; i < m; ++i)
        if (own_slack[i] >= 0 && a_[i][own_slack[i]] > 0.0) basis_[i] = own_slack[i];
    for (int i = 0; i < m; ++i)
        if (basis_[i] < 0) ++artificial_;

    tab_.assign(m, std::vector<double>(columns() + 1, 0.0));
    int art_col = structural_ + slack_;
    for (int i = 0; i < m; ++i) {
        std::copy(a_[i].begin(), a_[i].end(), tab_[i].begin());
        if (basis_[i] < 0) {
            tab_[i][art_col] = 1.0;
            basis_[i] = art_col++;
        }
        tab_[i][columns()] = b_[i];
    }
    row_alive_.assign(m, 1);
}

void Simplex::pivot(int row, int col) {
    auto& prow = tab_[row];
    const double p = prow[col];
    for (double& v : prow) v /= p;
    prow[col] = 1.0;
    for (std::size_t i = 0; i < tab_.size(); ++i) {
        if (static_cast<int>(i) == row || !row_alive_[i]) continue;
        auto& r = tab_[i];
        const double factor = r[col];
        if (factor == 0.0) continue;
        for (std::size_t k = 0; k < r.size(); ++k) r[k] -= factor * prow[k];
        r[col] = 0.0;
    }
    basis_[row] = col;
    ++iterations_;
}

std::vector<double> Simplex::reduced_costs(const std::vector<double>& cost) const {
    std::vector<double> d(cost);
    for (std::size_t i = 0; i < tab_.size(); ++i) {
        if (!row_alive_[i]) continue;
        const double cb = cost[basis_[i]];
        if (cb == 0.0) continue;
        for (int j = 0; j < columns(); ++j) d[j] -= cb * tab_[i][j];
    }
    return d;
}

bool Simplex::optimise(const std::vector<double>& cost, bool allow_artificial) {
    constexpr int kDegenerateRun = 50;
    constexpr int kMaxIterations = 200000;
    int degenerate = 0;
    const int rhs = columns();
    while (true) {
        if (iterations_ > kMaxIterations) throw InternalError("simplex iteration limit reached\n" + lp_.dump());
        const std::vector<double> d = reduced_costs(cost);
        const bool bland = degenerate >= kDegenerateRun;
        int enter = -1;
        double best = -tol_.optimality;
        for (int j = 0; j < columns(); ++j) {
            if (!allow_artificial && is_artificial(j)) continue;
            if (d[j] < best) {
                enter = j;
                if (bland) break;
                best = d[j];
            }
        }
        if (enter < 0) return true;

        int leave = -1;
        double ratio = 0.0;
        for (std::size_t i = 0; i < tab_.size(); ++i) {
            if (!row_alive_[i]) continue;
            const double a = tab_[i][enter];
            if (a <= tol_.pivot) continue;
            const double r = tab_[i][rhs] / a;
            if (leave < 0 || r < ratio - 1e-12) {
                leave = static_cast<int>(i);
                ratio = r;
            } else if (r <= ratio + 1e-12 && basis_[i] < basis_[leave]) {
                leave = static_cast<int>(i);
            }
        }
        if (leave < 0) return false;
        degenerate = ratio <= 1e-12 ? degenerate + 1 : 0;
        pivot(leave, enter);
    }
}

LpResult Simplex::run() {
    LpResult result;
    const int m = static_cast<int>(tab_.size());
    const int rhs = columns();

    if (artificial_ > 0) {
        std::vector<double> phase1(columns(), 0.0);
        for (int j = structural_ + slack_; j < columns(); ++j) phase1[j] = 1.0;
        optimise(phase1, true);
        double infeasibility = 0.0;
        double scale = 1.0;
        for (int i = 0; i < m; ++i) {
            scale = std::max(scale, b_[i]);
            if (is_artificial(basis_[i])) infeasibility += tab_[i][rhs];
        }
        if (infeasibility > tol_.feasibility * scale) {
            result.status = LpStatus::infeasible;
            result.iterations = iterations_;
            return result;
        }
        for (int i = 0; i < m; ++i) {
            if (!is_artificial(basis_[i])) continue;
            int col = -1;
            double best = 1e-9;
            for (int j = 0; j < structural_ + slack_; ++j)
                if (std::abs(tab_[i][j]) > best) {
                    best = std::abs(tab_[i][j]);
                    col = j;
                }
            if (col >= 0)
                pivot(i, col);
            else
                row_alive_[i] = 0;  // redundant row
        }
    }

    std::vector<double> phase2(columns(), 0.0);
    std::copy(c_.begin(), c_.end(), phase2.begin());
    if (!optimise(phase2, false)) {
        result.status = LpStatus::unbounded;
        result.iterations = iterations_;
        return result;
    }

    std::vector<double> s(structural_ + slack_, 0.0);
    for (int i = 0; i < m; ++i)
        if (row_alive_[i] && !is_artificial(basis_[i])) s[basis_[i]] = tab_[i][rhs];

    result.status = LpStatus::optimal;
    result.iterations = iterations_;
    result.x.assign(lp_.variable_count(), 0.0);
    for (int j = 0; j < lp_.variable_count(); ++j) {
        double v = vars_[j].offset;
        for (const auto& [col, sign] : vars_[j].columns) v += sign * s[col];
        result.x[j] = v;
    }
    result.value = lp_.objective(result.x);
    result.max_violation = lp_.max_violation(result.x);

    // Dual from the final basis: B^T y = c_B over the live rows.
    std::vector<int> live;
    for (int i = 0; i < m; ++i)
        if (row_alive_[i]) live.push_back(i);
    const int k = static_cast<int>(live.size());
    std::vector<double> y(m, 0.0);
    if (k > 0) {
        Eigen::MatrixXd bt(k, k);
        Eigen::VectorXd cb(k);
        for (int r = 0; r < k; ++r) {
            const int col = basis_[live[r]];
            cb(r) = c_[col];
            for (int q = 0; q < k; ++q) bt(r, q) = a_[live[q]][col];
        }
        const Eigen::VectorXd sol = bt.fullPivLu().solve(cb);
        for (int q = 0; q < k; ++q) y[live[q]] = sol(q);
    }
    double primal = 0.0, dual = 0.0;
    for (int j = 0; j < structural_ + slack_; ++j) primal += c_[j] * s[j];
    for (int i = 0; i < m; ++i) dual += b_[i] * y[i];
    double dual_violation = 0.0;
    for (int j = 0; j < structural_ + slack_; ++j) {
        double d = c_[j];
        for (int i = 0; i < m; ++i) d -= a_[i][j] * y[i];
        dual_violation = std::max(dual_violation, -d);
    }
    result.duality_gap = std::abs(primal - dual);
    result.dual_violation = dual_violation;
    result.duals.assign(lp_.rows().size(), 0.0);
    for (int i = 0; i < m; ++i)
        if (original_row_[i] >= 0) result.duals[original_row_[i]] = row_sign_[i] * y[i];

    const double scale = std::max(1.0, std::abs(result.value));
    if (result.max_violation > tol_.feasibility * scale || result.duality_gap > tol_.duality_gap * scale ||
        result.dual_violation > tol_.duality_gap * scale) {
        std::ostringstream msg;
        msg.precision(3);
        msg << "simplex solution failed certification (violation " << result.max_violation << ", gap "
            << result.duality_gap << ", dual violation " << result.dual_violation << ")\n"
            << lp_.dump();
        throw InternalError(msg.str());
    }
    return result;
}

}  // namespace

LpResult lp_solve(const LinearProgram& lp, const LpTolerances& tol) { return Simplex(lp, tol).run(); }

}  // namespace curvgraph
