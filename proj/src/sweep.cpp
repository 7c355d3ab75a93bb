#include "curvgraph/sweep.hpp"

#include <limits>

namespace curvgraph {

std::vector<VertexPair> ordered_pairs(const WeightedGraph& g, int radius) {
    if (radius < 1) throw InputError("radius must be >= 1");
    std::vector<VertexPair> out;
    for (Vertex x = 0; x < g.size(); ++x)
        for (Vertex y : g.ball(x, radius))
            if (y != x) out.emplace_back(x, y);
    return out;
}

std::vector<CurvatureResult> sweep_linear(const WeightedGraph& g, int radius, int jobs) {
    return sweep_pairs(ordered_pairs(g, radius), [&](Vertex x, Vertex y) { return k_linear(g, x, y, radius); }, jobs);
}

std::vector<TransportCertificate> sweep_defect(const WeightedGraph& g, int radius, int jobs) {
    return sweep_pairs(ordered_pairs(g, radius),
                       [&](Vertex x, Vertex y) { return transport_defect(g, y, x, radius); }, jobs);
}

MinimumCurvature min_linear_curvature(const WeightedGraph& g, int radius, int jobs) {
    const auto pairs = ordered_pairs(g, radius);
    const auto values = sweep_pairs(pairs, [&](Vertex x, Vertex y) { return k_linear(g, x, y, radius).value; }, jobs);
    MinimumCurvature best{std::numeric_limits<double>::infinity(), {-1, -1}};
    for (std::size_t i = 0; i < pairs.size(); ++i)
        if (values[i] < best.value) best = {values[i], pairs[i]};
    return best;
}

}  // namespace curvgraph
