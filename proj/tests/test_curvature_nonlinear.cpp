#include <doctest.h>

#include <cmath>

#include "curvgraph/curvature_nonlinear.hpp"
#include "test_support.hpp"

using namespace curvgraph;
using curvgraph::testing::pairs_within;
using curvgraph::testing::random_weighted;
using curvgraph::testing::single_edge;

TEST_CASE("log inequality") {
    CHECK(log_inequality_check(1.0, 1.0));
    CHECK(log_inequality_check(4.0, 1.0));
    const double lhs = 4.0 * std::log(4.0) - 3.0;
    CHECK(lhs == doctest::Approx(2.545177).epsilon(1e-6));
    SeededUniform rng(42);
    int failures = 0;
    for (int i = 0; i < 100000; ++i) {
        const double a = std::exp(rng.in(-20.0, 20.0));
        const double b = std::exp(rng.in(-20.0, 20.0));
        failures += !log_inequality_check(a, b);
    }
    CHECK(failures == 0);
    CHECK_THROWS_AS(log_inequality_check(0.0, 1.0), InputError);
}

TEST_CASE("config validation") {
    OptimizerConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.restarts = 0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.r_lo = 2.0;
    cfg.r_hi = 1.0;
    CHECK_THROWS_AS(cfg.validate(), InputError);
    cfg = {};
    cfg.tolerance = 0.0;
    CHECK_THROWS_AS(k_quadratic_estimate(single_edge(), 0, 1, 1, cfg), InputError);
}

TEST_CASE("single edge, exponential: closed form 2 sinh(r)/r") {
    const auto e = single_edge();
    const auto est = k_exponential_estimate(e, 0, 1, 1);
    CHECK(est.lower == 0.0);
    CHECK(est.upper <= 2.0 + 1e-6);
    CHECK(est.upper >= 2.0);
    CHECK(est.r == doctest::Approx(1e-3));
    CHECK(est.upper == doctest::Approx(2.0 * std::sinh(1e-3) / 1e-3).epsilon(1e-12));
    CHECK(est.truncated);
    CHECK(est.diagnostics.exhaustive);
}

TEST_CASE("single edge, quadratic: 2 + 1/(2c(c+1)) decreases to 2") {
    const auto e = single_edge();
    const auto est = k_quadratic_estimate(e, 0, 1, 1);
    CHECK(est.lower == 0.0);
    CHECK(est.upper >= 2.0 - 1e-9);
    CHECK(est.upper <= 2.0 + 1e-3);

    VertexFunction gf{3.0, 4.0};
    CHECK(quadratic_objective(e, gf, 0, 1, 1).value == doctest::Approx(2.0 + 1.0 / 24.0));
    gf = {4.0, 3.0};
    CHECK(quadratic_objective(e, gf, 0, 1, 1).value == doctest::Approx(2.0 + 1.0 / 24.0));
}

TEST_CASE("hex torus: non-negative at R = 2") {
    const auto hex = hex_torus(6, 6);
    for (Vertex x : {0, 1}) {
        for (Vertex y : hex.ball(x, 2)) {
            if (hex.distance(x, y) != 2) continue;
            const auto q = k_quadratic_estimate(hex, x, y, 2);
            const auto e = k_exponential_estimate(hex, x, y, 2);
            CHECK(q.lower == 0.0);
            CHECK(e.lower == 0.0);
            CHECK(q.upper >= -1e-6);
            CHECK(e.upper >= -1e-6);
        }
    }
}

TEST_CASE("star: -inf and the divergent test functions") {
    const auto star = star_graph(3);
    const auto q = k_quadratic_estimate(star, 1, 0, 1);
    const auto e = k_exponential_estimate(star, 1, 0, 1);
    CHECK(std::isinf(q.upper));
    CHECK(q.upper < 0);
    CHECK(std::isinf(e.upper));
    CHECK(q.lower == q.upper);
    REQUIRE(e.transport.has_value());
    const auto hall = e.transport->hall_witness;
    REQUIRE(hall.size() == 2);

    double prev_e = INFINITY, prev_q = INFINITY;
    for (double r : {2.0, 5.0, 10.0, 20.0, 40.0}) {
        const double ve = exponential_divergent_value(star, 1, 0, 1, hall, r);
        const double vq = quadratic_divergent_value(star, 1, 0, 1, hall, r, 0.5);
        CHECK(ve < prev_e);
        CHECK(vq < prev_q);
        prev_e = ve;
        prev_q = vq;
    }
    CHECK(prev_e < -1e15);
    CHECK(prev_q < -100.0);

    // Reverse direction has a map with defect 1; K^e is not symmetric here.
    const auto back = k_exponential_estimate(star, 0, 1, 1);
    CHECK(std::isfinite(back.upper));
    CHECK(back.lower == -1.0);
    CHECK(back.upper >= -1.0 - 1e-9);
}

TEST_CASE("sandwich and witness checks on random simple graphs") {
    int zero_both = 0;
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto g = gnp_graph(9, 0.4, seed);
        for (int radius = 1; radius <= 2; ++radius) {
            for (const auto& [x, y] : pairs_within(g, radius)) {
                OptimizerConfig cfg;
                cfg.seed = seed;
                cfg.restarts = 3;
                const auto q = k_quadratic_estimate(g, x, y, radius, cfg);
                const auto e = k_exponential_estimate(g, x, y, radius, cfg);
                const auto& cert = *q.transport;
                if (!cert.map_exists()) {
                    CHECK(std::isinf(q.upper));
                    CHECK(std::isinf(e.upper));
                    continue;
                }
                const double d = *cert.defect;
                CHECK(q.lower == -1.5 * d);
                CHECK(e.lower == -d);
                CHECK(q.upper >= q.lower - 1e-6);
                CHECK(e.upper >= e.lower - 1e-6);

                const auto qe = quadratic_objective(g, q.witness_on(g, 1.0), x, y, radius);
                CHECK(qe.violation < 1e-7);
                CHECK(qe.value == doctest::Approx(q.upper).epsilon(1e-6));
                if (e.r < 50.0) {
                    const auto ee = exponential_objective(g, e.witness_on(g, 0.0), x, y, radius, e.support);
                    CHECK(ee.violation < 1e-7 * std::max(1.0, e.r));
                    CHECK(ee.value == doctest::Approx(e.upper).epsilon(1e-6));
                }
                if (cert.defect == 0) {
                    ++zero_both;
                    CHECK(q.upper >= -1e-4);
                    CHECK(e.upper >= -1e-4);
                    CHECK(k_quadratic_estimate(g, y, x, radius, cfg).upper >= -1e-4);
                    CHECK(k_exponential_estimate(g, y, x, radius, cfg).upper >= -1e-4);
                }
            }
        }
    }
    CHECK(zero_both > 0);
}

TEST_CASE("exponential: random feasible functions never beat the estimate") {
    // Any g on the support with |g(u) - g(v)| <= r for d(u,v) <= R and
    // g(y) - g(x) = r scores at least the inner minimum at that r.
    for (std::uint64_t seed = 1; seed <= 6; ++seed) {
        const auto g = gnp_graph(8, 0.45, seed);
        SeededUniform rng(seed * 31);
        for (const auto& [x, y] : pairs_within(g, 1)) {
            const auto est = k_exponential_estimate(g, x, y, 1);
            if (!std::isfinite(est.upper)) continue;
            for (int trial = 0; trial < 40; ++trial) {
                // A point of the default r-grid below ~20.
                const double r = 1e-3 * std::pow(1e6, static_cast<double>(rng.below(24)) / 32.0);
                // Random 1-Lipschitz (in hops) profile scaled by r, pinned at x, y.
                VertexFunction gf(g.size(), 0.0);
                const auto dx = g.distances_from(x);
                const auto dy = g.distances_from(y);
                for (int v = 0; v < g.size(); ++v) {
                    if (dx[v] == kUnreachable) continue;
                    const double lo = std::max(-static_cast<double>(dx[v]), 1.0 - dy[v]);
                    const double hi = std::min(static_cast<double>(dx[v]), 1.0 + dy[v]);
                    gf[v] = r * rng.in(lo, hi);
                }
                // Repair to the R = 1 constraint by a min-plus sweep.
                for (int pass = 0; pass < g.size(); ++pass)
                    for (const auto& edge : g.edges()) {
                        gf[edge.u] = std::min(gf[edge.u], gf[edge.v] + r);
                        gf[edge.v] = std::min(gf[edge.v], gf[edge.u] + r);
                    }
                if (std::abs(gf[y] - gf[x] - r) > 1e-12) continue;
                const auto eval = exponential_objective(g, gf, x, y, 1, est.support);
                REQUIRE(eval.violation < 1e-9);
                CHECK(eval.value >= est.upper - 1e-9 * std::max(1.0, std::abs(est.upper)));
            }
        }
    }
}

TEST_CASE("exponential grid: refinement never raises the estimate") {
    const auto g = gnp_graph(10, 0.35, 4);
    for (const auto& [x, y] : pairs_within(g, 2)) {
        OptimizerConfig coarse, fine, refined;
        coarse.refine = false;
        fine.refine = false;
        fine.r_count = 65;
        const auto a = k_exponential_estimate(g, x, y, 2, coarse);
        const auto b = k_exponential_estimate(g, x, y, 2, fine);
        const auto c = k_exponential_estimate(g, x, y, 2, refined);
        if (!std::isfinite(a.upper)) continue;
        CHECK(b.upper <= a.upper + 1e-15);
        CHECK(c.upper <= a.upper + 1e-15);
    }
}

TEST_CASE("exponential: local search stays above the exhaustive value") {
    const auto g = gnp_graph(10, 0.4, 9);
    for (const auto& [x, y] : pairs_within(g, 1)) {
        const auto exact = k_exponential_estimate(g, x, y, 1);
        if (!std::isfinite(exact.upper)) continue;
        OptimizerConfig cfg;
        cfg.lattice_budget = 1;
        const auto approx = k_exponential_estimate(g, x, y, 1, cfg);
        if (approx.diagnostics.exhaustive) continue;
        CHECK(approx.upper >= exact.upper - 1e-12);
        CHECK(approx.upper >= approx.lower - 1e-6);
    }
}

TEST_CASE("weighted graphs: no certificate, estimates still reproduce") {
    for (std::uint64_t seed = 1; seed <= 4; ++seed) {
        const auto g = random_weighted(8, 0.45, seed);
        for (const auto& [x, y] : pairs_within(g, 1)) {
            const auto q = k_quadratic_estimate(g, x, y, 1);
            const auto e = k_exponential_estimate(g, x, y, 1);
            CHECK(std::isinf(q.lower));
            CHECK_FALSE(q.transport.has_value());
            if (std::isfinite(q.upper))
                CHECK(quadratic_objective(g, q.witness_on(g, 1.0), x, y, 1).value ==
                      doctest::Approx(q.upper).epsilon(1e-6));
            if (std::isfinite(e.upper) && e.r < 50.0)
                CHECK(exponential_objective(g, e.witness_on(g, 0.0), x, y, 1, e.support).value ==
                      doctest::Approx(e.upper).epsilon(1e-6));
        }
    }
}

TEST_CASE("estimates are deterministic for a fixed seed") {
    const auto g = gnp_graph(9, 0.4, 3);
    OptimizerConfig cfg;
    cfg.seed = 17;
    for (const auto& [x, y] : pairs_within(g, 1)) {
        const auto a = k_quadratic_estimate(g, x, y, 1, cfg);
        const auto b = k_quadratic_estimate(g, x, y, 1, cfg);
        CHECK(a.upper == b.upper);
        CHECK(a.witness == b.witness);
    }
}
