// Gradient-Ollivier curvature K_R(x,y) and the classical Ollivier curvature
// of an edge, both computed exactly as linear programs.

#ifndef CURVGRAPH_CURVATURE_LINEAR_HPP
#define CURVGRAPH_CURVATURE_LINEAR_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "curvgraph/graph.hpp"
#include "curvgraph/lp.hpp"
#include "curvgraph/transport.hpp"

namespace curvgraph {

enum class CurvatureVariant { linear, ollivier, quadratic, exponential };
enum class BoundKind { exact, upper_estimate, lower_certificate };

std::string variant_name(CurvatureVariant v);
CurvatureVariant parse_variant(const std::string& name);
std::string kind_name(BoundKind k);

struct CurvatureResult {
    CurvatureVariant variant = CurvatureVariant::linear;
    Vertex x = 0;
    Vertex y = 0;
    int radius = 1;
    /// -inf when the defining infimum is unbounded.
    double value = 0.0;
    BoundKind kind = BoundKind::exact;
    /// Witness values on `support` (ascending ids); empty for -inf results.
    std::vector<Vertex> support;
    std::vector<double> witness;
    /// Transport certificate consulted before solving (simple graphs only).
    std::optional<TransportCertificate> transport;
    int lp_iterations = 0;

    /// The witness extended by zero to the whole vertex set.
    VertexFunction witness_on(const WeightedGraph& g) const;
};

struct LinearCurvatureOptions {
    /// Also solve the LP for pairs without a transport map and require the
    /// solver to report unboundedness.
    bool lp_crosscheck = false;
    /// Grow the LP support beyond B_{R+1}(x) by this many hops.
    int extra_support = 0;
};

/// Throws InputError unless x != y, R >= 1 and d(x,y) <= R.
void require_curvature_pair(const WeightedGraph& g, Vertex x, Vertex y, int radius);

/// Objective of the K_R variational problem at f, plus how far f is from
/// satisfying its normalisation |∇_R f|(x) = |f(y) - f(x)| = 1.
struct ObjectiveEvaluation {
    double value = 0.0;
    double violation = 0.0;
};

/// Δ|∇_R f|(x) - (Δf(y) - Δf(x)) sgn(f(y) - f(x)), from the graph operators.
ObjectiveEvaluation linear_objective(const WeightedGraph& g, std::span<const double> f, Vertex x, Vertex y, int radius);

/// Δf(x) - Δf(y) and the worst excess of |f(u) - f(v)| over d(u,v) on the
/// support B_1(x) ∪ B_1(y) (plus |f(y) - f(x) - 1|).
ObjectiveEvaluation ollivier_objective(const WeightedGraph& g, std::span<const double> f, Vertex x, Vertex y);

/// The LP whose optimum is K_R(x,y), with f(x) = 0 and f(y) = 1. Variables
/// are f on `support` followed by one t_z per neighbour z of x.
struct LinearCurvatureProgram {
    LinearProgram lp;
    std::vector<Vertex> support;
};
LinearCurvatureProgram linear_curvature_program(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                                int extra_support = 0);

/// Exact K_R(x,y). Requires 0 < d(x,y) <= R.
CurvatureResult k_linear(const WeightedGraph& g, Vertex x, Vertex y, int radius, const LinearCurvatureOptions& opt = {});

/// Exact classical Ollivier curvature of the edge xy:
/// min Δf(x) - Δf(y) over 1-Lipschitz f with f(y) - f(x) = 1.
CurvatureResult k_ollivier(const WeightedGraph& g, Vertex x, Vertex y);

/// Upper bound on K_R(x,y): the smallest objective over `trials` random
/// feasible functions and the LP witness itself.
double k_linear_sampling_oracle(const WeightedGraph& g, Vertex x, Vertex y, int radius, int trials, std::uint64_t seed);

}  // namespace curvgraph

#endif  // CURVGRAPH_CURVATURE_LINEAR_HPP
