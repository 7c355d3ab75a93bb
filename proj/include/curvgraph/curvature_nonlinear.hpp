// Upper estimates for the quadratic and exponential curvatures, paired with
// the lower bounds certified by transport-map defects.
#ifndef CURVGRAPH_CURVATURE_NONLINEAR_HPP
#define CURVGRAPH_CURVATURE_NONLINEAR_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "curvgraph/curvature_linear.hpp"
#include "curvgraph/graph.hpp"
#include "curvgraph/transport.hpp"

namespace curvgraph {

struct OptimizerConfig {
    /// Starts per sign branch (quadratic).
    int restarts = 6;
    int max_iterations = 300;
    double initial_step = 0.25;
    double step_decay = 0.985;
    /// Stop a run once the step falls below this.
    double tolerance = 1e-7;
    /// Geometric r-grid for the exponential variant.
    double r_lo = 1e-3;
    double r_hi = 1e3;
    int r_count = 33;
    bool refine = true;
    std::uint64_t seed = 0;
    /// Exhaustive lattice enumeration budget (exponential variant).
    long lattice_budget = 2'000'000;

    /// Throws InputError on out-of-range settings.
    void validate() const;
};

struct OptimizerDiagnostics {
    int starts = 0;
    int iterations = 0;
    /// Best run stopped on the step tolerance rather than the iteration cap.
    bool converged = true;
    /// Exponential: every lattice point was scored.
    bool exhaustive = true;
    long lattice_points = 0;
    int r_evaluations = 0;
    std::string note;
};

struct SandwichResult {
    CurvatureVariant variant = CurvatureVariant::quadratic;
    Vertex x = 0;
    Vertex y = 0;
    int radius = 1;
    /// Certified bound from the transport defect; -inf when none applies.
    double lower = 0.0;
    /// Objective at the best feasible point found.
    double upper = 0.0;
    /// Witness values on `support` (ascending); empty when upper is -inf.
    std::vector<Vertex> support;
    std::vector<double> witness;
    /// Quadratic: sign of g(y) - g(x) at the witness.
    int branch = 1;
    /// Exponential: r = g(y) - g(x) at the witness.
    double r = 0.0;
    /// Exponential estimates solve the problem with the gradient constraint
    /// restricted to B_{R+1}(x) ∪ B_{R+1}(y).
    bool truncated = false;
    std::optional<TransportCertificate> transport;
    OptimizerDiagnostics diagnostics;

    double gap() const { return upper - lower; }
    /// Witness on all of V; vertices off the support get `fill`.
    VertexFunction witness_on(const WeightedGraph& g, double fill) const;
};

/// ½[Δ|∇_R g|²(x) - sgn(g(y)-g(x)) (Δg²/g(y) - Δg²/g(x))] and the worst
/// breach of g > 0 on B_{R+1}(x), |∇_R g|(x) = 1 and |g(y) - g(x)| = 1.
ObjectiveEvaluation quadratic_objective(const WeightedGraph& g, std::span<const double> gfun, Vertex x, Vertex y,
                                        int radius);

/// (1/r)(Δe^g/e^g(x) - Δe^g/e^g(y)) with r = g(y) - g(x), and the worst
/// excess of |g(u) - g(v)| over r among pairs of `support` within distance R.
ObjectiveEvaluation exponential_objective(const WeightedGraph& g, std::span<const double> gfun, Vertex x, Vertex y,
                                          int radius, const std::vector<Vertex>& support);

SandwichResult k_quadratic_estimate(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                    const OptimizerConfig& cfg = {});
SandwichResult k_exponential_estimate(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                      const OptimizerConfig& cfg = {});

/// a log a - b log b - (a-b) log b - (a-b) >= (√a - √b)², up to rounding.
bool log_inequality_check(double a, double b);

/// Test functions built from a Hall violator `hall` ⊆ B_1(y) \ B_R(x):
/// exponential: g = 2r on A, r within R of A, 0 elsewhere;
/// quadratic:   g = r on A, eps at x, 1 + eps elsewhere.
/// Both return the variant's objective; it tends to -inf as r grows.
double exponential_divergent_value(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                   const std::vector<Vertex>& hall, double r);
double quadratic_divergent_value(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                 const std::vector<Vertex>& hall, double r, double eps);

}  // namespace curvgraph

#endif  // CURVGRAPH_CURVATURE_NONLINEAR_HPP
