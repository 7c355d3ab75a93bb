#include <doctest.h>

#include <cmath>

#include "curvgraph/json_io.hpp"
#include "test_support.hpp"

using namespace curvgraph;
using curvgraph::testing::random_function;
using curvgraph::testing::random_weighted;
using curvgraph::testing::single_edge;

TEST_CASE("distance on small graphs") {
    const auto c6 = cycle_graph(6);
    CHECK(c6.distance(0, 3) == 3);
    CHECK(c6.distance(2, 2) == 0);

    const Edge two[] = {{0, 1, 1.0}, {2, 3, 1.0}};
    const WeightedGraph disjoint(4, two);
    CHECK(disjoint.distance(0, 2) == kUnreachable);
    CHECK(disjoint.ball(0, 5) == std::vector<Vertex>{0, 1});

    CHECK_THROWS_AS(c6.distance(0, 6), InputError);
    CHECK_THROWS_AS(c6.distance(-1, 0), InputError);
}

TEST_CASE("balls") {
    const auto hex = hex_torus(6, 6);
    CHECK(hex.ball(5, 0) == std::vector<Vertex>{5});
    CHECK(hex.ball(5, 1).size() == 4);
    CHECK(hex.ball(5, 2).size() == 10);

    const auto g = random_weighted(15, 0.2, 3);
    for (int x = 0; x < g.size(); ++x) {
        for (int r = 0; r < 5; ++r) {
            const auto inner = g.ball(x, r);
            const auto outer = g.ball(x, r + 1);
            CHECK(std::includes(outer.begin(), outer.end(), inner.begin(), inner.end()));
            CHECK(std::is_sorted(outer.begin(), outer.end()));
        }
    }
}

TEST_CASE("laplacian examples") {
    const auto e = single_edge();
    const VertexFunction f{0.0, 1.0};
    CHECK(laplacian(e, f) == VertexFunction{1.0, -1.0});

    const auto c4 = cycle_graph(4);
    CHECK(laplacian(c4, VertexFunction{1, 0, 0, 0}) == VertexFunction{-2, 1, 0, 1});
    CHECK(laplacian(c4, VertexFunction(4, 3.5)) == VertexFunction(4, 0.0));
    CHECK_THROWS_AS(laplacian(c4, VertexFunction(3, 0.0)), InputError);
}

TEST_CASE("laplacian mass balance and constants on weighted graphs") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = random_weighted(12, 0.35, seed);
        const auto f = random_function(g.size(), seed + 100);
        const auto lf = laplacian(g, f);
        double mass = 0.0;
        for (int x = 0; x < g.size(); ++x) mass += g.measure(x) * lf[x];
        CHECK(std::abs(mass) < 1e-12);
        for (double v : laplacian(g, VertexFunction(g.size(), -2.0))) CHECK(v == 0.0);
    }
}

TEST_CASE("gamma") {
    const auto e = single_edge();
    CHECK(gamma(e, VertexFunction{0.0, 1.0}) == VertexFunction{0.5, 0.5});
    CHECK(gamma(e, VertexFunction{4.0, 4.0}) == VertexFunction{0.0, 0.0});

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = random_weighted(10, 0.4, seed);
        const auto f = random_function(g.size(), seed * 7);
        VertexFunction f2(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) f2[i] = f[i] * f[i];
        const auto lf2 = laplacian(g, f2);
        const auto lf = laplacian(g, f);
        const auto gf = gamma(g, f);
        for (int x = 0; x < g.size(); ++x) {
            CHECK(gf[x] >= 0.0);
            CHECK(gf[x] == doctest::Approx(0.5 * (lf2[x] - 2.0 * f[x] * lf[x])).epsilon(1e-12));
        }
    }
}

TEST_CASE("averaging operator") {
    const auto c4 = cycle_graph(4);
    CHECK(averaging(c4, VertexFunction{1, 0, 0, 0}) == VertexFunction{0, 1, 0, 1});
    CHECK(averaging(c4, VertexFunction(4, 1.0)) == VertexFunction(4, 2.0));

    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto g = random_weighted(11, 0.3, seed);
        const auto f = random_function(g.size(), seed, 0.0, 1.0);
        const auto af = averaging(g, f);
        for (double v : af) CHECK(v >= 0.0);
        CHECK(sup_norm(af) <= g.max_degree() * sup_norm(f) + 1e-12);
    }
}

TEST_CASE("r-gradient") {
    const auto p3 = path_graph(3);
    const VertexFunction f{0, 1, 3};
    const auto grad = r_gradient(p3, f, 0, 2);
    CHECK(grad.value == 3.0);
    CHECK(grad.argmax == std::vector<Vertex>{2});
    CHECK(r_gradient(p3, f, 0, 1).value == 1.0);
    CHECK(r_gradient(p3, VertexFunction(3, 2.0), 1, 1).value == 0.0);
    CHECK_THROWS_AS(r_gradient(p3, f, 0, 0), InputError);

    // Ball covers the whole graph.
    const auto g = random_weighted(9, 0.5, 11);
    const auto h = random_function(g.size(), 5);
    for (int x = 0; x < g.size(); ++x) {
        double expected = 0.0;
        for (int v = 0; v < g.size(); ++v)
            if (g.distance(x, v) != kUnreachable) expected = std::max(expected, std::abs(h[v] - h[x]));
        CHECK(r_gradient(g, h, x, g.size()).value == expected);
    }
}

TEST_CASE("r-gradient is 1-homogeneous and shift invariant") {
    const auto g = random_weighted(12, 0.3, 21);
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto f = random_function(g.size(), seed);
        VertexFunction scaled(f), shifted(f);
        for (std::size_t i = 0; i < f.size(); ++i) {
            scaled[i] = -2.5 * f[i];
            shifted[i] = f[i] + 7.0;
        }
        for (int r = 1; r <= 3; ++r) {
            const auto base = r_gradient_field(g, f, r);
            const auto s = r_gradient_field(g, scaled, r);
            const auto t = r_gradient_field(g, shifted, r);
            for (int x = 0; x < g.size(); ++x) {
                CHECK(s[x] == doctest::Approx(2.5 * base[x]).epsilon(1e-12));
                CHECK(t[x] == doctest::Approx(base[x]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("squared R-gradient is dominated by averaged gamma") {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto g = random_weighted(10, 0.35, seed);
        if (g.edge_count() == 0) continue;
        const auto f = random_function(g.size(), seed + 1);
        const auto gf = gamma(g, f);
        for (int r = 1; r <= 3; ++r) {
            const auto avg = averaging_power(g, gf, r - 1);
            const double factor = 2.0 * r / std::pow(g.min_transition(), r);
            for (int x = 0; x < g.size(); ++x) {
                const double lhs = std::pow(r_gradient(g, f, x, r).value, 2);
                CHECK(lhs <= factor * avg[x] * (1 + 1e-12) + 1e-14);
            }
        }
    }
}

TEST_CASE("derived quantities") {
    const Edge e[] = {{0, 1, 2.0}, {1, 2, 1.0}};
    const WeightedGraph g(3, e, {1.0, 2.0, 4.0});
    CHECK(g.transition(1, 0) == 1.0);
    CHECK(g.degree(1) == 1.5);
    CHECK(g.max_degree() == 2.0);
    CHECK(g.min_transition() == 0.25);
    CHECK(g.dimension() == 8.0);
    CHECK_FALSE(g.is_simple());
    CHECK(hex_torus(6, 6).is_simple());
}

TEST_CASE("graph construction rejects bad input") {
    const Edge loop[] = {{1, 1, 1.0}};
    CHECK_THROWS_AS(WeightedGraph(3, loop), InputError);
    const Edge dup[] = {{0, 1, 1.0}, {1, 0, 2.0}};
    CHECK_THROWS_AS(WeightedGraph(3, dup), InputError);
    const Edge same[] = {{0, 1, 1.0}, {1, 0, 1.0}};
    CHECK(WeightedGraph(3, same).edge_count() == 1);
    const Edge ok[] = {{0, 1, 1.0}};
    CHECK_THROWS_AS(WeightedGraph(2, ok, {1.0, 0.0}), InputError);
    CHECK_THROWS_AS(WeightedGraph(2, ok, {1.0}), InputError);
    const Edge neg[] = {{0, 1, -1.0}};
    CHECK_THROWS_AS(WeightedGraph(2, neg), InputError);
}

TEST_CASE("graph JSON") {
    const auto doc = nlohmann::json::parse(R"({"n": 3, "edges": [[0, 1], [1, 2, 2.5]]})");
    const auto g = graph_from_json(doc);
    CHECK(g.weight(0, 1) == 1.0);
    CHECK(g.weight(2, 1) == 2.5);
    CHECK(g.measure(2) == 1.0);

    const auto back = graph_from_json(nlohmann::json::parse(canonical_dump(graph_to_json(g))));
    CHECK(canonical_dump(graph_to_json(back)) == canonical_dump(graph_to_json(g)));
    CHECK(graph_fingerprint(back) == graph_fingerprint(g));
    CHECK(graph_fingerprint(back) != graph_fingerprint(cycle_graph(3)));

    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"edges": []})")), InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "edges": [[0, 0]]})")), InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "edges": [[0, 1, 1], [1, 0, 3]]})")),
                    InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "measure": [1, -1]})")), InputError);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "edges": [[0, "a"]]})")), InputError);
}

TEST_CASE("canonical dump formatting") {
    nlohmann::json doc = {{"b", 0.1 + 0.2}, {"a", json_real(-INFINITY)}, {"c", 3}};
    CHECK(canonical_dump(doc) == R"({"a":"-inf","b":0.3,"c":3})");
}
