#include "curvgraph/curvature_linear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curvgraph/generators.hpp"

namespace curvgraph {

namespace {

constexpr double kWitnessTolerance = 1e-7;

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

int position(const std::vector<Vertex>& sorted, Vertex v) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

}  // namespace

void require_curvature_pair(const WeightedGraph& g, Vertex x, Vertex y, int radius) {
    if (radius < 1) throw InputError("curvature radius must be at least 1");
    const int d = g.distance(x, y);
    if (x == y) throw InputError("curvature needs two distinct vertices");
    if (d > radius)
        throw InputError("pair (" + std::to_string(x) + "," + std::to_string(y) + ") is at distance " +
                         (d == kUnreachable ? std::string("inf") : std::to_string(d)) + " > R=" + std::to_string(radius));
}

std::string variant_name(CurvatureVariant v) {
    switch (v) {
        case CurvatureVariant::linear: return "linear";
        case CurvatureVariant::ollivier: return "ollivier";
        case CurvatureVariant::quadratic: return "quadratic";
        case CurvatureVariant::exponential: return "exponential";
    }
    return "unknown";
}

CurvatureVariant parse_variant(const std::string& name) {
    for (auto v : {CurvatureVariant::linear, CurvatureVariant::ollivier, CurvatureVariant::quadratic,
                   CurvatureVariant::exponential})
        if (variant_name(v) == name) return v;
    throw InputError("unknown curvature variant '" + name + "'");
}

std::string kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::exact: return "exact";
        case BoundKind::upper_estimate: return "upper_estimate";
        case BoundKind::lower_certificate: return "lower_certificate";
    }
    return "unknown";
}

VertexFunction CurvatureResult::witness_on(const WeightedGraph& g) const {
    VertexFunction f(static_cast<std::size_t>(g.size()), 0.0);
    for (std::size_t i = 0; i < support.size() && i < witness.size(); ++i) f[support[i]] = witness[i];
    return f;
}

ObjectiveEvaluation linear_objective(const WeightedGraph& g, std::span<const double> f, Vertex x, Vertex y, int radius) {
    const double grad_x = r_gradient(g, f, x, radius).value;
    const double rise = f[y] - f[x];
    ObjectiveEvaluation out;
    out.violation = std::max(std::abs(grad_x - 1.0), std::abs(std::abs(rise) - 1.0));
    if (g.distance(x, y) > radius) out.violation = std::numeric_limits<double>::infinity();

    // Δ|∇_R f|(x) only needs the gradient at x and its neighbours.
    double lap_grad = 0.0;
    for (const Neighbor& nb : g.neighbors(x))
        lap_grad += nb.weight * (r_gradient(g, f, nb.vertex, radius).value - grad_x);
    lap_grad /= g.measure(x);

    out.value = lap_grad - (laplacian_at(g, f, y) - laplacian_at(g, f, x)) * sgn(rise);
    return out;
}

ObjectiveEvaluation ollivier_objective(const WeightedGraph& g, std::span<const double> f, Vertex x, Vertex y) {
    std::vector<Vertex> support = g.ball(x, 1);
    for (Vertex v : g.ball(y, 1)) support.push_back(v);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    ObjectiveEvaluation out;
    out.value = laplacian_at(g, f, x) - laplacian_at(g, f, y);
    out.violation = std::abs(f[y] - f[x] - 1.0);
    for (Vertex u : support) {
        const auto du = g.distances_from(u);
        for (Vertex v : support) out.violation = std::max(out.violation, std::abs(f[u] - f[v]) - du[v]);
    }
    return out;
}

LinearCurvatureProgram linear_curvature_program(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                                int extra_support) {
    require_curvature_pair(g, x, y, radius);
    LinearCurvatureProgram out;
    out.support = g.ball(x, radius + 1 + std::max(0, extra_support));
    LinearProgram& lp = out.lp;
    const auto dist_x = g.distances_from(x);

    for (Vertex v : out.support) {
        if (v == x)
            lp.add_variable(0.0, 0.0);
        else if (v == y)
            lp.add_variable(1.0, 1.0);
        else if (dist_x[v] <= radius)
            lp.add_variable(-1.0, 1.0);
        else
            lp.add_variable(-LinearProgram::kInf, LinearProgram::kInf);
    }
    auto fvar = [&](Vertex v) { return position(out.support, v); };

    // Σ_z Q(x,z)(t_z - 1)
    for (const Neighbor& nb : g.neighbors(x)) {
        const Vertex z = nb.vertex;
        const double q = nb.weight / g.measure(x);
        const int t = lp.add_variable(0.0, LinearProgram::kInf, q);
        lp.add_offset(-q);
        const auto dz = g.distances_from(z);
        for (Vertex w : out.support) {
            if (w == z || dz[w] > radius) continue;
            lp.add_row({{t, 1.0}, {fvar(w), -1.0}, {fvar(z), 1.0}}, RowSense::greater_equal, 0.0);
            lp.add_row({{t, 1.0}, {fvar(w), 1.0}, {fvar(z), -1.0}}, RowSense::greater_equal, 0.0);
        }
    }
    // + Δf(x) - Δf(y)
    for (const Neighbor& nb : g.neighbors(x)) {
        const double q = nb.weight / g.measure(x);
        lp.add_cost(fvar(nb.vertex), q);
        lp.add_cost(fvar(x), -q);
    }
    for (const Neighbor& nb : g.neighbors(y)) {
        const double q = nb.weight / g.measure(y);
        lp.add_cost(fvar(nb.vertex), -q);
        lp.add_cost(fvar(y), q);
    }
    return out;
}

namespace {

CurvatureResult finish_linear(const WeightedGraph& g, CurvatureResult result, const LinearCurvatureProgram& program,
                              const LpResult& lp) {
    const Vertex x = result.x, y = result.y;
    const int radius = result.radius;
    result.value = lp.value;
    result.lp_iterations = lp.iterations;
    result.support = program.support;
    result.witness.assign(lp.x.begin(), lp.x.begin() + static_cast<std::ptrdiff_t>(program.support.size()));

    const VertexFunction f = result.witness_on(g);
    const ObjectiveEvaluation check = linear_objective(g, f, x, y, radius);
    if (check.violation > kWitnessTolerance || std::abs(check.value - result.value) > kWitnessTolerance)
        throw InternalError("K_R witness does not reproduce the LP value\n" + program.lp.dump());
    return result;
}

}  // namespace

CurvatureResult k_linear(const WeightedGraph& g, Vertex x, Vertex y, int radius, const LinearCurvatureOptions& opt) {
    require_curvature_pair(g, x, y, radius);
    CurvatureResult result;
    result.variant = CurvatureVariant::linear;
    result.x = x;
    result.y = y;
    result.radius = radius;
    result.kind = BoundKind::exact;
    const double neg_inf = -std::numeric_limits<double>::infinity();

    if (!g.is_simple()) {
        // Transport counting assumes unit weights; let the LP decide.
        const auto program = linear_curvature_program(g, x, y, radius, opt.extra_support);
        const LpResult lp = lp_solve(program.lp);
        if (lp.status == LpStatus::unbounded) {
            result.value = neg_inf;
            return result;
        }
        if (lp.status != LpStatus::optimal) throw InternalError("K_R program infeasible\n" + program.lp.dump());
        return finish_linear(g, std::move(result), program, lp);
    }

    result.transport = transport_defect(g, y, x, radius);
    if (!result.transport->map_exists()) {
        result.value = neg_inf;
        if (opt.lp_crosscheck) {
            const auto program = linear_curvature_program(g, x, y, radius, opt.extra_support);
            const LpResult lp = lp_solve(program.lp);
            if (lp.status != LpStatus::unbounded)
                throw InternalError("LP is bounded although no transport map exists\n" + program.lp.dump());
        }
        return result;
    }

    const auto program = linear_curvature_program(g, x, y, radius, opt.extra_support);
    const LpResult lp = lp_solve(program.lp);
    if (lp.status != LpStatus::optimal)
        throw InternalError(std::string("K_R program ") + (lp.status == LpStatus::unbounded ? "unbounded" : "infeasible") +
                            " although a transport map exists\n" + program.lp.dump());
    return finish_linear(g, std::move(result), program, lp);
}

CurvatureResult k_ollivier(const WeightedGraph& g, Vertex x, Vertex y) {
    if (x == y || g.distance(x, y) != 1)
        throw InputError("Ollivier curvature needs adjacent vertices, got (" + std::to_string(x) + "," +
                         std::to_string(y) + ")");
    CurvatureResult result;
    result.variant = CurvatureVariant::ollivier;
    result.x = x;
    result.y = y;
    result.radius = 1;
    result.kind = BoundKind::exact;

    std::vector<Vertex> support = g.ball(x, 1);
    for (Vertex v : g.ball(y, 1)) support.push_back(v);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());

    LinearProgram lp;
    for (Vertex v : support) {
        if (v == x)
            lp.add_variable(0.0, 0.0);
        else if (v == y)
            lp.add_variable(1.0, 1.0);
        else
            lp.add_variable(-LinearProgram::kInf, LinearProgram::kInf);
    }
    auto fvar = [&](Vertex v) { return position(support, v); };
    for (std::size_t i = 0; i < support.size(); ++i) {
        const auto du = g.distances_from(support[i]);
        for (std::size_t j = i + 1; j < support.size(); ++j) {
            const double d = du[support[j]];
            lp.add_row({{static_cast<int>(i), 1.0}, {static_cast<int>(j), -1.0}}, RowSense::less_equal, d);
            lp.add_row({{static_cast<int>(j), 1.0}, {static_cast<int>(i), -1.0}}, RowSense::less_equal, d);
        }
    }
    for (const Neighbor& nb : g.neighbors(x)) {
        const double q = nb.weight / g.measure(x);
        lp.add_cost(fvar(nb.vertex), q);
        lp.add_cost(fvar(x), -q);
    }
    for (const Neighbor& nb : g.neighbors(y)) {
        const double q = nb.weight / g.measure(y);
        lp.add_cost(fvar(nb.vertex), -q);
        lp.add_cost(fvar(y), q);
    }

    const LpResult sol = lp_solve(lp);
    if (sol.status != LpStatus::optimal) throw InternalError("Ollivier program not optimal\n" + lp.dump());
    result.value = sol.value;
    result.lp_iterations = sol.iterations;
    result.support = support;
    result.witness = sol.x;

    const ObjectiveEvaluation check = ollivier_objective(g, result.witness_on(g), x, y);
    if (check.violation > kWitnessTolerance || std::abs(check.value - result.value) > kWitnessTolerance)
        throw InternalError("Ollivier witness does not reproduce the LP value\n" + lp.dump());
    return result;
}

double k_linear_sampling_oracle(const WeightedGraph& g, Vertex x, Vertex y, int radius, int trials, std::uint64_t seed) {
    const CurvatureResult exact = k_linear(g, x, y, radius);
    if (!std::isfinite(exact.value)) return exact.value;
    const VertexFunction witness = exact.witness_on(g);
    double best = linear_objective(g, witness, x, y, radius).value;

    SeededUniform rng(seed);
    const auto dist_x = g.distances_from(x);
    VertexFunction f(witness.size(), 0.0);
    for (int trial = 0; trial < trials; ++trial) {
        const bool perturb = trial % 2 == 0;
        const double spread = rng.in(0.01, 1.0);
        for (int v = 0; v < g.size(); ++v) {
            if (dist_x[v] > radius + 1) {
                f[v] = 0.0;
                continue;
            }
            f[v] = perturb ? witness[v] + spread * rng.in(-1.0, 1.0) : rng.in(-2.0, 2.0);
            if (dist_x[v] <= radius) f[v] = std::clamp(f[v], -1.0, 1.0);
        }
        f[x] = 0.0;
        f[y] = 1.0;
        best = std::min(best, linear_objective(g, f, x, y, radius).value);
    }
    return best;
}

}  // namespace curvgraph
