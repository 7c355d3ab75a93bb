#include "curvgraph/generators.hpp"

#include <cmath>
#include <sstream>

namespace curvgraph {

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw InputError(message);
}

void require_dims(const LatticeSpec& spec, std::size_t count) {
    require(spec.dims.size() == count, family_name(spec.family) + " expects " + std::to_string(count) +
                                           " size parameter(s), got " + std::to_string(spec.dims.size()));
}

// Honeycomb with two sites per cell. Site B of cell (i,j) touches site A of
// cells (i,j), (i+1,j) and (i,j+1).
GeneratedGraph make_hex_torus(int a, int b) {
    require(a >= kMinHexTorusSide && b >= kMinHexTorusSide,
            "hex_torus needs both sides >= " + std::to_string(kMinHexTorusSide) +
                " so that 5-balls do not wrap around; got " + std::to_string(a) + "," + std::to_string(b));
    auto site = [b](int i, int j, int s) { return 2 * (i * b + j) + s; };
    std::vector<Edge> edges;
    GeneratedGraph out;
    out.coordinates.resize(static_cast<std::size_t>(2 * a * b));
    const double s3 = std::sqrt(3.0);
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
            const double px = s3 * i + 0.5 * s3 * j;
            const double py = 1.5 * j;
            out.coordinates[site(i, j, 0)] = {px, py};
            out.coordinates[site(i, j, 1)] = {px + 0.5 * s3, py + 0.5};
            edges.push_back({site(i, j, 1), site(i, j, 0), 1.0});
            edges.push_back({site(i, j, 1), site((i + 1) % a, j, 0), 1.0});
            edges.push_back({site(i, j, 1), site(i, (j + 1) % b, 0), 1.0});
        }
    }
    out.graph = WeightedGraph(2 * a * b, edges);
    return out;
}

GeneratedGraph make_square_torus(int a, int b) {
    require(a >= 3 && b >= 3, "square_torus needs both sides >= 3");
    std::vector<Edge> edges;
    GeneratedGraph out;
    for (int i = 0; i < a; ++i) {
        for (int j = 0; j < b; ++j) {
            const int v = i * b + j;
            out.coordinates.push_back({static_cast<double>(i), static_cast<double>(j)});
            edges.push_back({v, ((i + 1) % a) * b + j, 1.0});
            edges.push_back({v, i * b + (j + 1) % b, 1.0});
        }
    }
    out.graph = WeightedGraph(a * b, edges);
    return out;
}

}  // namespace

GeneratedGraph generate(const LatticeSpec& spec) {
    switch (spec.family) {
        case Family::hex_torus:
            require_dims(spec, 2);
            return make_hex_torus(spec.dims[0], spec.dims[1]);
        case Family::square_torus:
            require_dims(spec, 2);
            return make_square_torus(spec.dims[0], spec.dims[1]);
        case Family::cycle: {
            require_dims(spec, 1);
            const int n = spec.dims[0];
            require(n >= 3, "cycle needs at least 3 vertices");
            std::vector<Edge> edges;
            GeneratedGraph out;
            for (int v = 0; v < n; ++v) {
                edges.push_back({v, (v + 1) % n, 1.0});
                const double angle = 2.0 * M_PI * v / n;
                out.coordinates.push_back({std::cos(angle), std::sin(angle)});
            }
            out.graph = WeightedGraph(n, edges);
            return out;
        }
        case Family::path: {
            require_dims(spec, 1);
            const int n = spec.dims[0];
            require(n >= 1, "path needs at least 1 vertex");
            std::vector<Edge> edges;
            GeneratedGraph out;
            for (int v = 0; v < n; ++v) {
                if (v + 1 < n) edges.push_back({v, v + 1, 1.0});
                out.coordinates.push_back({static_cast<double>(v), 0.0});
            }
            out.graph = WeightedGraph(n, edges);
            return out;
        }
        case Family::complete: {
            require_dims(spec, 1);
            const int n = spec.dims[0];
            require(n >= 1, "complete graph needs at least 1 vertex");
            std::vector<Edge> edges;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
            return {WeightedGraph(n, edges), {}};
        }
        case Family::star: {
            require_dims(spec, 1);
            const int leaves = spec.dims[0];
            require(leaves >= 1, "star needs at least 1 leaf");
            std::vector<Edge> edges;
            for (int v = 1; v <= leaves; ++v) edges.push_back({0, v, 1.0});
            return {WeightedGraph(leaves + 1, edges), {}};
        }
        case Family::tree: {
            require_dims(spec, 2);
            const int branching = spec.dims[0];
            const int depth = spec.dims[1];
            require(branching >= 1 && depth >= 0, "tree needs branching >= 1 and depth >= 0");
            std::vector<Edge> edges;
            int n = 1;
            int level_start = 0;
            int level_size = 1;
            for (int d = 0; d < depth; ++d) {
                require(static_cast<long long>(level_size) * branching < 1'000'000, "tree is too large");
                for (int p = level_start; p < level_start + level_size; ++p)
                    for (int c = 0; c < branching; ++c) edges.push_back({p, n++, 1.0});
                level_start += level_size;
                level_size *= branching;
            }
            return {WeightedGraph(n, edges), {}};
        }
        case Family::gnp: {
            require_dims(spec, 1);
            const int n = spec.dims[0];
            require(n >= 1, "gnp needs at least 1 vertex");
            require(spec.probability >= 0.0 && spec.probability <= 1.0, "gnp edge probability must lie in [0,1]");
            SeededUniform rng(spec.seed);
            std::vector<Edge> edges;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    if (rng() < spec.probability) edges.push_back({u, v, 1.0});
            return {WeightedGraph(n, edges), {}};
        }
    }
    throw InputError("unknown graph family");
}

Family parse_family(const std::string& name) {
    static const std::pair<const char*, Family> table[] = {
        {"hex_torus", Family::hex_torus}, {"square_torus", Family::square_torus}, {"cycle", Family::cycle},
        {"path", Family::path},           {"complete", Family::complete},         {"star", Family::star},
        {"tree", Family::tree},           {"gnp", Family::gnp},
    };
    for (const auto& [key, family] : table)
        if (name == key) return family;
    throw InputError("unknown graph family '" + name + "'");
}

std::string family_name(Family family) {
    switch (family) {
        case Family::hex_torus: return "hex_torus";
        case Family::square_torus: return "square_torus";
        case Family::cycle: return "cycle";
        case Family::path: return "path";
        case Family::complete: return "complete";
        case Family::star: return "star";
        case Family::tree: return "tree";
        case Family::gnp: return "gnp";
    }
    return "unknown";
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw InputError("bad size list '" + text + "'");
        }
    }
    if (out.empty()) throw InputError("empty size list");
    return out;
}

WeightedGraph hex_torus(int a, int b) { return generate({Family::hex_torus, {a, b}}).graph; }
WeightedGraph square_torus(int a, int b) { return generate({Family::square_torus, {a, b}}).graph; }
WeightedGraph cycle_graph(int n) { return generate({Family::cycle, {n}}).graph; }
WeightedGraph path_graph(int n) { return generate({Family::path, {n}}).graph; }
WeightedGraph complete_graph(int n) { return generate({Family::complete, {n}}).graph; }
WeightedGraph star_graph(int leaves) { return generate({Family::star, {leaves}}).graph; }
WeightedGraph tree_graph(int branching, int depth) { return generate({Family::tree, {branching, depth}}).graph; }
WeightedGraph gnp_graph(int n, double p, std::uint64_t seed) { return generate({Family::gnp, {n}, p, seed}).graph; }

}  // namespace curvgraph
