// Heat semigroup P_t = e^{tΔ} on a finite graph and checks of the gradient
// estimates it satisfies under curvature bounds.
#ifndef CURVGRAPH_SEMIGROUP_HPP
#define CURVGRAPH_SEMIGROUP_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "curvgraph/graph.hpp"

namespace curvgraph {

/// Diagonalises the symmetric matrix M^{1/2} Δ M^{-1/2} once; every P_t is
/// then two dense products. Immutable after construction.
class HeatOperator {
public:
    explicit HeatOperator(const WeightedGraph& g);

    const WeightedGraph& graph() const { return graph_; }
    int size() const { return graph_.size(); }

    /// Eigenvalues of Δ, ascending (all <= 0, last one 0).
    const Eigen::VectorXd& eigenvalues() const { return lambda_; }
    /// Orthonormal eigenvectors of the symmetrised matrix, as columns.
    const Eigen::MatrixXd& eigenvectors() const { return basis_; }

    /// P_t f. OpenMP-parallel over rows.
    VertexFunction apply(double t, std::span<const double> f) const;
    /// Same result computed without threads; reference for tests and benches.
    VertexFunction apply_serial(double t, std::span<const double> f) const;

    /// Eigenfunction of -Δ for symmetrised eigenvector column `u`.
    VertexFunction eigenfunction(const Eigen::VectorXd& u) const;

private:
    WeightedGraph graph_;
    Eigen::VectorXd lambda_;
    Eigen::MatrixXd basis_;
    Eigen::MatrixXd basis_t_;  // row-major access for the second product
    Eigen::VectorXd sqrt_m_;
};

/// P_t f; throws InputError for t < 0.
VertexFunction heat_apply(const HeatOperator& h, double t, std::span<const double> f);

/// Eigenvalues of -Δ, ascending.
std::vector<double> spectrum(const WeightedGraph& g);

/// One verification run: a grid (times, s-values or eigenvalues), the
/// tracked quantity on that grid, and the verdict.
struct VerificationTrace {
    std::string name;
    std::vector<double> grid;
    /// Smallest margin at each grid point (or G_s for the monotonicity trace).
    std::vector<double> values;
    double worst_margin = std::numeric_limits<double>::infinity();
    double tolerance = 1e-8;
    bool applicable = true;
    bool pass = true;
    int worst_function = -1;
    Vertex worst_vertex = -1;
    double worst_at = 0.0;
    std::string note;

    void finish();
};

struct DecayHypotheses {
    /// Lower bound for K_R over pairs within R; enables the linear forms.
    std::optional<double> linear;
    /// Lower bound for K_R^q; enables the f log f forms.
    std::optional<double> quadratic;
};

/// e^{-Kt} P_t|∇_R f| - |∇_R P_t f| at every vertex.
VerificationTrace verify_linear_gradient_estimate(const HeatOperator& h, int radius, double K,
                                                  const std::vector<VertexFunction>& fs,
                                                  const std::vector<double>& ts, double tol = 1e-8);
/// e^{-2Kt} P_t|∇_R √f|² - |∇_R √(P_t f)|²; every f must be positive.
VerificationTrace verify_quadratic_gradient_estimate(const HeatOperator& h, int radius, double K,
                                                     const std::vector<VertexFunction>& fs,
                                                     const std::vector<double>& ts, double tol = 1e-8);
/// e^{-Kt}‖∇_R log f‖∞ - ‖∇_R log P_t f‖∞; every f must be positive.
VerificationTrace verify_exponential_gradient_estimate(const HeatOperator& h, int radius, double K,
                                                       const std::vector<VertexFunction>& fs,
                                                       const std::vector<double>& ts, double tol = 1e-8);

/// G_s = e^{-Ks} P_s|∇_R P_{t-s} f| at x on a uniform grid of `steps` + 1
/// points of [0, t]; passes when every increment is >= -tol.
VerificationTrace trace_G_monotone(const HeatOperator& h, int radius, double K, std::span<const double> f, Vertex x,
                                   double t, int steps, double tol = 1e-8);

/// Decay bounds with τ(K,t) = (e^{2Kt} - 1)/2K (τ = t at K = 0):
///   nonnegative_linear:    |∇_R P_t f|² <= (‖f‖∞²/t) 2R Deg_max^{R-1}
///   nonnegative_quadratic: |∇_R √(P_t f)|² <= (‖f log f‖∞/t) 2R Deg_max^{R-1}
///   general_linear:        τ|∇_R P_t f|² <= 2R dim^{R-1}/Q_min ‖f‖∞²
///   general_quadratic:     τ|∇_R √(P_t f)|² <= 2R dim^{R-1}/Q_min ‖f log f‖∞
/// The nonnegative forms need a simple graph and a bound K >= 0.
std::vector<VerificationTrace> verify_decay_bounds(const HeatOperator& h, int radius, const DecayHypotheses& hyp,
                                                   const std::vector<VertexFunction>& fs,
                                                   const std::vector<VertexFunction>& positive_fs,
                                                   const std::vector<double>& ts, double tol = 1e-8);

struct HarnackOptions {
    /// Require zero transport defect on every pair within R first.
    bool certify = false;
    /// Extra random orthonormal bases per degenerate eigenspace.
    int rotations = 2;
    std::uint64_t seed = 0;
    double tol = 1e-8;
};

/// 2eR dim^{R-1}/Q_min λ‖f‖∞² - max_x |∇_R f|²(x) for every eigenpair with
/// λ > 0; the grid holds the eigenvalues.
VerificationTrace harnack_check(const HeatOperator& h, int radius, const HarnackOptions& opt = {});

/// Seeded test functions: uniform in [-1,1], and exp of those.
std::vector<VertexFunction> random_functions(int n, int count, std::uint64_t seed);
std::vector<VertexFunction> positive_functions(int n, int count, std::uint64_t seed);
/// Geometric grid on [lo, hi].
std::vector<double> time_grid(double lo = 1e-3, double hi = 10.0, int count = 25);

}  // namespace curvgraph

#endif  // CURVGRAPH_SEMIGROUP_HPP
