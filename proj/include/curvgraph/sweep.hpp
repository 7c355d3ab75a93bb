// Pair sweeps: every ordered pair (x, y) with 0 < d(x,y) <= R, evaluated
// serially or with OpenMP. Results come back in pair order either way.
#ifndef CURVGRAPH_SWEEP_HPP
#define CURVGRAPH_SWEEP_HPP

#include <exception>
#include <utility>
#include <vector>

#include "curvgraph/curvature_linear.hpp"
#include "curvgraph/graph.hpp"
#include "curvgraph/transport.hpp"

namespace curvgraph {

using VertexPair = std::pair<Vertex, Vertex>;

/// Lexicographic by (x, y).
std::vector<VertexPair> ordered_pairs(const WeightedGraph& g, int radius);

template <class Fn>
auto sweep_pairs_serial(const std::vector<VertexPair>& pairs, Fn&& fn) {
    using T = decltype(fn(Vertex{}, Vertex{}));
    std::vector<T> out;
    out.reserve(pairs.size());
    for (const auto& [x, y] : pairs) out.push_back(fn(x, y));
    return out;
}

/// `jobs` <= 1 runs serially; otherwise up to `jobs` threads. The first
/// exception (in pair order) is rethrown after the loop.
template <class Fn>
auto sweep_pairs(const std::vector<VertexPair>& pairs, Fn&& fn, int jobs) {
    using T = decltype(fn(Vertex{}, Vertex{}));
    if (jobs <= 1) return sweep_pairs_serial(pairs, fn);
    const int n = static_cast<int>(pairs.size());
    std::vector<T> out(n);
    std::vector<std::exception_ptr> errors(n);
#pragma omp parallel for schedule(dynamic) num_threads(jobs)
    for (int i = 0; i < n; ++i) {
        try {
            out[i] = fn(pairs[i].first, pairs[i].second);
        } catch (...) {
            errors[i] = std::current_exception();
        }
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
    return out;
}

std::vector<CurvatureResult> sweep_linear(const WeightedGraph& g, int radius, int jobs);
/// Certificates for the y -> x maps of each ordered pair (x, y).
std::vector<TransportCertificate> sweep_defect(const WeightedGraph& g, int radius, int jobs);

struct MinimumCurvature {
    double value = 0.0;
    VertexPair pair{-1, -1};
};
/// min k_linear over ordered pairs within R; +inf when there are none.
MinimumCurvature min_linear_curvature(const WeightedGraph& g, int radius, int jobs = 1);

}  // namespace curvgraph

#endif  // CURVGRAPH_SWEEP_HPP
