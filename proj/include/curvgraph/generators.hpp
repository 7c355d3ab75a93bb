// Deterministic constructors for the graph families used in tests and the CLI.

#ifndef CURVGRAPH_GENERATORS_HPP
#define CURVGRAPH_GENERATORS_HPP

#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "curvgraph/graph.hpp"

namespace curvgraph {

enum class Family { hex_torus, square_torus, cycle, path, complete, star, tree, gnp };

/// Size parameters per family:
///   hex_torus, square_torus: dims = {cells_a, cells_b}
///   cycle, path, complete:   dims = {n}
///   star:                    dims = {leaves}
///   tree:                    dims = {branching, depth}
///   gnp:                     dims = {n}, plus probability and seed
struct LatticeSpec {
    Family family = Family::cycle;
    std::vector<int> dims;
    double probability = 0.0;
    std::uint64_t seed = 0;
};

struct GeneratedGraph {
    WeightedGraph graph;
    /// Planar embedding for lattice families (debugging aid); empty otherwise.
    std::vector<std::array<double, 2>> coordinates;
};

/// Smallest hex_torus side length for which every 5-ball embeds into the
/// torus exactly as in the infinite honeycomb.
inline constexpr int kMinHexTorusSide = 6;

GeneratedGraph generate(const LatticeSpec& spec);

Family parse_family(const std::string& name);
std::string family_name(Family family);

/// Parses "6,6" style size lists.
std::vector<int> parse_dims(const std::string& text);

// Shorthands.
WeightedGraph hex_torus(int a, int b);
WeightedGraph square_torus(int a, int b);
WeightedGraph cycle_graph(int n);
WeightedGraph path_graph(int n);
WeightedGraph complete_graph(int n);
WeightedGraph star_graph(int leaves);
WeightedGraph tree_graph(int branching, int depth);
WeightedGraph gnp_graph(int n, double p, std::uint64_t seed);

/// Uniform double in [0,1) from the top 53 bits of a 64-bit Mersenne
/// Twister draw; stable across standard libraries.
class SeededUniform {
public:
    explicit SeededUniform(std::uint64_t seed) : engine_(seed) {}
    double operator()() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double in(double lo, double hi) { return lo + (hi - lo) * (*this)(); }
    /// Integer in [0, bound), bound > 0.
    std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>((*this)() * static_cast<double>(bound)); }

private:
    std::mt19937_64 engine_;
};

}  // namespace curvgraph

#endif  // CURVGRAPH_GENERATORS_HPP
