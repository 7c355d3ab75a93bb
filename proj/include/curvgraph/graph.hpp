// Weighted graph model and the discrete operators built on it.
//
// Vertices are dense ids 0..n-1. Edge weights are symmetric and positive on
// edges; every vertex carries a positive measure m(v). The Laplacian is
//
//     (Δf)(x) = sum_y Q(x,y) (f(y) - f(x)),   Q(x,y) = w(x,y) / m(x).

#ifndef CURVGRAPH_GRAPH_HPP
#define CURVGRAPH_GRAPH_HPP

#include <cstddef>
#include <limits>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvgraph {

using Vertex = int;
using VertexFunction = std::vector<double>;

/// Hop count used for disconnected pairs.
inline constexpr int kUnreachable = std::numeric_limits<int>::max();

/// Malformed user input: bad vertex ids, out-of-range parameters, bad files.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical routine failed in a way the caller cannot fix.
class InternalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Edge {
    Vertex u = 0;
    Vertex v = 0;
    double weight = 1.0;
};

struct Neighbor {
    Vertex vertex = 0;
    double weight = 0.0;
};

/// Immutable weighted graph. Copies share the lazily filled distance cache,
/// which is safe to populate from several threads at once.
class WeightedGraph {
public:
    WeightedGraph() = default;

    /// Throws InputError on self-loops, out-of-range ids, non-positive
    /// weights, duplicate edges with different weights, or non-positive
    /// measure. An empty measure means m ≡ 1.
    WeightedGraph(int n, std::span<const Edge> edges, std::vector<double> measure = {});

    int size() const { return static_cast<int>(adjacency_.size()); }
    std::size_t edge_count() const { return edge_count_; }

    std::span<const Neighbor> neighbors(Vertex v) const { return adjacency_.at(check(v)); }
    /// w(u,v); 0 when u and v are not adjacent.
    double weight(Vertex u, Vertex v) const;
    double measure(Vertex v) const { return measure_.at(check(v)); }
    std::span<const double> measures() const { return measure_; }

    /// Q(x,y) = w(x,y) / m(x).
    double transition(Vertex x, Vertex y) const { return weight(x, y) / measure_[check(x)]; }
    double degree(Vertex x) const { return degree_.at(check(x)); }
    double max_degree() const { return max_degree_; }
    /// Smallest Q(x,y) over ordered adjacent pairs; 0 on edgeless graphs.
    double min_transition() const { return min_transition_; }
    /// Deg_max / Q_min.
    double dimension() const;

    /// Weights in {0,1} and unit measure.
    bool is_simple() const { return simple_; }

    /// All edges with u < v, sorted.
    std::vector<Edge> edges() const;

    /// Hop distances from `source` to every vertex (kUnreachable when
    /// disconnected). Computed by BFS on first use and cached.
    std::span<const int> distances_from(Vertex source) const;
    int distance(Vertex x, Vertex y) const;

    /// Vertex ids within `radius` hops, ascending.
    std::vector<Vertex> ball(Vertex x, int radius) const;

    Vertex check(Vertex v) const {
        if (v < 0 || v >= size()) throw InputError("vertex " + std::to_string(v) + " out of range");
        return v;
    }

private:
    struct DistanceCache;

    std::vector<std::vector<Neighbor>> adjacency_;
    std::vector<double> measure_;
    std::vector<double> degree_;
    std::size_t edge_count_ = 0;
    double max_degree_ = 0.0;
    double min_transition_ = 0.0;
    bool simple_ = true;
    std::shared_ptr<DistanceCache> cache_;
};

// ---------------------------------------------------------------------------
// Operators. All take the function as a dense vector indexed by vertex id.

/// Δf at every vertex.
VertexFunction laplacian(const WeightedGraph& g, std::span<const double> f);
/// Δf at a single vertex.
double laplacian_at(const WeightedGraph& g, std::span<const double> f, Vertex x);

/// Γf = Γ(f,f), the carré du champ.
VertexFunction gamma(const WeightedGraph& g, std::span<const double> f);

/// A f = Δf + Deg_max f. Maps non-negative functions to non-negative ones.
VertexFunction averaging(const WeightedGraph& g, std::span<const double> f);

/// A^k f.
VertexFunction averaging_power(const WeightedGraph& g, std::span<const double> f, int k);

struct RGradient {
    double value = 0.0;
    std::vector<Vertex> argmax;  // ascending; empty only when the ball is {x}
};

/// |∇_R f|(x) = max over d(x,y) <= R of |f(y) - f(x)|, with every maximiser.
RGradient r_gradient(const WeightedGraph& g, std::span<const double> f, Vertex x, int radius);

/// |∇_R f| at every vertex.
VertexFunction r_gradient_field(const WeightedGraph& g, std::span<const double> f, int radius);

/// max_x |∇_R f|(x).
double r_gradient_sup(const WeightedGraph& g, std::span<const double> f, int radius);

double sup_norm(std::span<const double> f);

}  // namespace curvgraph

#endif  // CURVGRAPH_GRAPH_HPP
