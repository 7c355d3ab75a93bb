#include "curvgraph/graph.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <queue>
#include <utility>

namespace curvgraph {

struct WeightedGraph::DistanceCache {
    explicit DistanceCache(int n) : flags(new std::once_flag[static_cast<std::size_t>(n)]), rows(n) {}
    std::unique_ptr<std::once_flag[]> flags;
    std::vector<std::vector<int>> rows;
};

WeightedGraph::WeightedGraph(int n, std::span<const Edge> edges, std::vector<double> measure)
    : adjacency_(n < 0 ? 0 : static_cast<std::size_t>(n)), measure_(std::move(measure)) {
    if (n < 0) throw InputError("vertex count must be non-negative");
    if (measure_.empty()) measure_.assign(static_cast<std::size_t>(n), 1.0);
    if (static_cast<int>(measure_.size()) != n)
        throw InputError("measure has " + std::to_string(measure_.size()) + " entries, expected " +
                         std::to_string(n));
    for (int v = 0; v < n; ++v) {
        if (!(measure_[v] > 0.0) || !std::isfinite(measure_[v]))
            throw InputError("measure of vertex " + std::to_string(v) + " must be positive");
        if (measure_[v] != 1.0) simple_ = false;
    }

    std::map<std::pair<Vertex, Vertex>, double> unique;
    for (const Edge& e : edges) {
        if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n)
            throw InputError("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
        if (e.u == e.v) throw InputError("self-loop at vertex " + std::to_string(e.u));
        if (!std::isfinite(e.weight) || e.weight < 0.0)
            throw InputError("edge weight must be finite and non-negative");
        if (e.weight == 0.0) continue;
        const auto key = std::minmax(e.u, e.v);
        auto [it, inserted] = unique.emplace(key, e.weight);
        if (!inserted && it->second != e.weight)
            throw InputError("edge (" + std::to_string(key.first) + "," + std::to_string(key.second) +
                             ") listed twice with different weights");
    }

    for (const auto& [key, w] : unique) {
        adjacency_[key.first].push_back({key.second, w});
        adjacency_[key.second].push_back({key.first, w});
        if (w != 1.0) simple_ = false;
    }
    edge_count_ = unique.size();
    for (auto& row : adjacency_)
        std::sort(row.begin(), row.end(), [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });

    degree_.assign(static_cast<std::size_t>(n), 0.0);
    min_transition_ = std::numeric_limits<double>::infinity();
    for (int x = 0; x < n; ++x) {
        for (const Neighbor& nb : adjacency_[x]) {
            const double q = nb.weight / measure_[x];
            degree_[x] += q;
            min_transition_ = std::min(min_transition_, q);
        }
        max_degree_ = std::max(max_degree_, degree_[x]);
    }
    if (edge_count_ == 0) min_transition_ = 0.0;
    cache_ = std::make_shared<DistanceCache>(n);
}

double WeightedGraph::weight(Vertex u, Vertex v) const {
    const auto row = neighbors(u);
    check(v);
    auto it = std::lower_bound(row.begin(), row.end(), v,
                               [](const Neighbor& nb, Vertex key) { return nb.vertex < key; });
    return (it != row.end() && it->vertex == v) ? it->weight : 0.0;
}

double WeightedGraph::dimension() const {
    return min_transition_ > 0.0 ? max_degree_ / min_transition_ : 0.0;
}

std::vector<Edge> WeightedGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (int u = 0; u < size(); ++u)
        for (const Neighbor& nb : adjacency_[u])
            if (u < nb.vertex) out.push_back({u, nb.vertex, nb.weight});
    return out;
}

std::span<const int> WeightedGraph::distances_from(Vertex source) const {
    check(source);
    std::call_once(cache_->flags[source], [&] {
        std::vector<int> dist(static_cast<std::size_t>(size()), kUnreachable);
        std::queue<Vertex> frontier;
        dist[source] = 0;
        frontier.push(source);
        while (!frontier.empty()) {
            const Vertex v = frontier.front();
            frontier.pop();
            for (const Neighbor& nb : adjacency_[v]) {
                if (dist[nb.vertex] == kUnreachable) {
                    dist[nb.vertex] = dist[v] + 1;
                    frontier.push(nb.vertex);
                }
            }
        }
        cache_->rows[source] = std::move(dist);
    });
    return cache_->rows[source];
}

int WeightedGraph::distance(Vertex x, Vertex y) const {
    check(y);
    return distances_from(x)[y];
}

std::vector<Vertex> WeightedGraph::ball(Vertex x, int radius) const {
    if (radius < 0) throw InputError("ball radius must be non-negative");
    const auto dist = distances_from(x);
    std::vector<Vertex> out;
    for (int v = 0; v < size(); ++v)
        if (dist[v] <= radius) out.push_back(v);
    return out;
}

namespace {

void require_total(const WeightedGraph& g, std::span<const double> f) {
    if (static_cast<int>(f.size()) != g.size())
        throw InputError("function has " + std::to_string(f.size()) + " values on a graph with " +
                         std::to_string(g.size()) + " vertices");
}

}  // namespace

double laplacian_at(const WeightedGraph& g, std::span<const double> f, Vertex x) {
    double acc = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) acc += nb.weight * (f[nb.vertex] - f[x]);
    return acc / g.measure(x);
}

VertexFunction laplacian(const WeightedGraph& g, std::span<const double> f) {
    require_total(g, f);
    VertexFunction out(f.size());
    for (int x = 0; x < g.size(); ++x) out[x] = laplacian_at(g, f, x);
    return out;
}

VertexFunction gamma(const WeightedGraph& g, std::span<const double> f) {
    require_total(g, f);
    VertexFunction out(f.size());
    for (int x = 0; x < g.size(); ++x) {
        double acc = 0.0;
        for (const Neighbor& nb : g.neighbors(x)) {
            const double d = f[nb.vertex] - f[x];
            acc += nb.weight * d * d;
        }
        out[x] = acc / (2.0 * g.measure(x));
    }
    return out;
}

VertexFunction averaging(const WeightedGraph& g, std::span<const double> f) {
    VertexFunction out = laplacian(g, f);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += g.max_degree() * f[i];
    return out;
}

VertexFunction averaging_power(const WeightedGraph& g, std::span<const double> f, int k) {
    if (k < 0) throw InputError("averaging power must be non-negative");
    require_total(g, f);
    VertexFunction out(f.begin(), f.end());
    for (int i = 0; i < k; ++i) out = averaging(g, out);
    return out;
}

RGradient r_gradient(const WeightedGraph& g, std::span<const double> f, Vertex x, int radius) {
    if (radius < 1) throw InputError("gradient radius must be at least 1");
    require_total(g, f);
    const auto dist = g.distances_from(x);
    RGradient out;
    for (int v = 0; v < g.size(); ++v)
        if (v != x && dist[v] <= radius) out.value = std::max(out.value, std::abs(f[v] - f[x]));
    for (int v = 0; v < g.size(); ++v)
        if (v != x && dist[v] <= radius && std::abs(f[v] - f[x]) == out.value) out.argmax.push_back(v);
    return out;
}

VertexFunction r_gradient_field(const WeightedGraph& g, std::span<const double> f, int radius) {
    if (radius < 1) throw InputError("gradient radius must be at least 1");
    require_total(g, f);
    VertexFunction out(f.size(), 0.0);
    for (int x = 0; x < g.size(); ++x) {
        const auto dist = g.distances_from(x);
        double best = 0.0;
        for (int v = 0; v < g.size(); ++v)
            if (dist[v] <= radius) best = std::max(best, std::abs(f[v] - f[x]));
        out[x] = best;
    }
    return out;
}

double r_gradient_sup(const WeightedGraph& g, std::span<const double> f, int radius) {
    return sup_norm(r_gradient_field(g, f, radius));
}

double sup_norm(std::span<const double> f) {
    double out = 0.0;
    for (double v : f) out = std::max(out, std::abs(v));
    return out;
}

}  // namespace curvgraph
