#include "curvgraph/semigroup.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "curvgraph/generators.hpp"
#include "curvgraph/transport.hpp"

namespace curvgraph {

namespace {

constexpr int kParallelThreshold = 64;

void require_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("time must be finite and >= 0");
}

void require_size(const HeatOperator& h, std::span<const double> f) {
    if (static_cast<int>(f.size()) != h.size()) throw InputError("function length does not match the graph");
}

void require_radius(int radius) {
    if (radius < 1) throw InputError("radius must be >= 1");
}

void require_positive(const std::vector<VertexFunction>& fs) {
    for (const auto& f : fs)
        for (double v : f)
            if (!(v > 0.0)) throw InputError("test functions must be positive");
}

double tau(double K, double t) {
    if (K == 0.0) return t;
    return std::expm1(2.0 * K * t) / (2.0 * K);
}

VertexFunction sqrt_of(const VertexFunction& f) {
    VertexFunction out(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::sqrt(std::max(f[i], 0.0));
    return out;
}

VertexFunction squared(VertexFunction f) {
    for (double& v : f) v *= v;
    return f;
}

double f_log_f_sup(const VertexFunction& f) {
    double s = 0.0;
    for (double v : f) s = std::max(s, std::abs(v * std::log(v)));
    return s;
}

// Per-cell worst margin, reduced serially so the result does not depend on
// the thread schedule.
struct Cell {
    double margin = std::numeric_limits<double>::infinity();
    Vertex vertex = -1;
};

void note_vertexwise(Cell& cell, const VertexFunction& rhs, const VertexFunction& lhs) {
    for (std::size_t v = 0; v < rhs.size(); ++v) {
        const double m = rhs[v] - lhs[v];
        if (m < cell.margin) cell = {m, static_cast<Vertex>(v)};
    }
}

template <class Fn>
VerificationTrace run_grid(std::string name, int nf, const std::vector<double>& ts, double tol, Fn&& cell_fn) {
    for (double t : ts) require_time(t);
    if (!(tol >= 0.0)) throw InputError("tolerance must be >= 0");
    const int nt = static_cast<int>(ts.size());
    std::vector<Cell> cells(static_cast<std::size_t>(nf) * nt);
#pragma omp parallel for schedule(dynamic) if (nf * nt > 4)
    for (int k = 0; k < nf * nt; ++k) cells[k] = cell_fn(k / nt, ts[k % nt]);

    VerificationTrace tr;
    tr.name = std::move(name);
    tr.grid = ts;
    tr.tolerance = tol;
    tr.values.assign(nt, std::numeric_limits<double>::infinity());
    for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nt; ++j) {
            const Cell& c = cells[static_cast<std::size_t>(i) * nt + j];
            tr.values[j] = std::min(tr.values[j], c.margin);
            if (c.margin < tr.worst_margin) {
                tr.worst_margin = c.margin;
                tr.worst_function = i;
                tr.worst_vertex = c.vertex;
                tr.worst_at = ts[j];
            }
        }
    tr.finish();
    return tr;
}

Eigen::MatrixXd random_orthogonal(int k, SeededUniform& rng) {
    Eigen::MatrixXd a(k, k);
    for (int j = 0; j < k; ++j)
        for (int i = 0; i < k; ++i) a(i, j) = rng.in(-1.0, 1.0);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    return qr.householderQ() * Eigen::MatrixXd::Identity(k, k);
}

bool defect_free(const WeightedGraph& g, int radius) {
    if (!g.is_simple()) return false;
    for (Vertex x = 0; x < g.size(); ++x)
        for (Vertex y : g.ball(x, radius)) {
            if (y == x) continue;
            const auto cert = transport_defect(g, x, y, radius);
            if (!cert.map_exists() || *cert.defect != 0) return false;
        }
    return true;
}

}  // namespace

HeatOperator::HeatOperator(const WeightedGraph& g) : graph_(g) {
    const int n = g.size();
    if (n == 0) throw InputError("graph has no vertices");
    sqrt_m_.resize(n);
    for (int v = 0; v < n; ++v) sqrt_m_[v] = std::sqrt(g.measure(v));
    Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
    for (int x = 0; x < n; ++x) {
        double out = 0.0;
        for (const auto& nb : g.neighbors(x)) {
            s(x, nb.vertex) = nb.weight / (sqrt_m_[x] * sqrt_m_[nb.vertex]);
            out += nb.weight;
        }
        s(x, x) = -out / g.measure(x);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s);
    if (solver.info() != Eigen::Success) throw InternalError("eigendecomposition failed");
    lambda_ = solver.eigenvalues();
    basis_ = solver.eigenvectors();
    basis_t_ = basis_.transpose();
}

VertexFunction HeatOperator::apply(double t, std::span<const double> f) const {
    require_time(t);
    require_size(*this, f);
    const int n = size();
    if (n < kParallelThreshold) return apply_serial(t, f);
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = f[i] * sqrt_m_[i];
    Eigen::VectorXd c(n);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) c[k] = basis_.col(k).dot(v) * std::exp(t * lambda_[k]);
    VertexFunction out(n);
#pragma omp parallel for schedule(static)
    for (int i = 0; i < n; ++i) out[i] = basis_t_.col(i).dot(c) / sqrt_m_[i];
    return out;
}

VertexFunction HeatOperator::apply_serial(double t, std::span<const double> f) const {
    require_time(t);
    require_size(*this, f);
    const int n = size();
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = f[i] * sqrt_m_[i];
    Eigen::VectorXd c(n);
    for (int k = 0; k < n; ++k) c[k] = basis_.col(k).dot(v) * std::exp(t * lambda_[k]);
    VertexFunction out(n);
    for (int i = 0; i < n; ++i) out[i] = basis_t_.col(i).dot(c) / sqrt_m_[i];
    return out;
}

VertexFunction HeatOperator::eigenfunction(const Eigen::VectorXd& u) const {
    if (u.size() != size()) throw InputError("eigenvector length does not match the graph");
    VertexFunction f(size());
    for (int i = 0; i < size(); ++i) f[i] = u[i] / sqrt_m_[i];
    return f;
}

VertexFunction heat_apply(const HeatOperator& h, double t, std::span<const double> f) { return h.apply(t, f); }

std::vector<double> spectrum(const WeightedGraph& g) {
    const HeatOperator h(g);
    std::vector<double> out(h.size());
    for (int k = 0; k < h.size(); ++k) out[k] = std::max(0.0, -h.eigenvalues()[h.size() - 1 - k]);
    return out;
}

void VerificationTrace::finish() {
    pass = !applicable || worst_margin >= -tolerance;
}

VerificationTrace verify_linear_gradient_estimate(const HeatOperator& h, int radius, double K,
                                                  const std::vector<VertexFunction>& fs,
                                                  const std::vector<double>& ts, double tol) {
    require_radius(radius);
    if (!std::isfinite(K)) throw InputError("curvature bound must be finite");
    for (const auto& f : fs) require_size(h, f);
    const auto& g = h.graph();
    std::vector<VertexFunction> grads;
    for (const auto& f : fs) grads.push_back(r_gradient_field(g, f, radius));
    return run_grid("linear_gradient_estimate", static_cast<int>(fs.size()), ts, tol, [&](int i, double t) {
        auto rhs = h.apply_serial(t, grads[i]);
        for (double& v : rhs) v *= std::exp(-K * t);
        Cell c;
        note_vertexwise(c, rhs, r_gradient_field(g, h.apply_serial(t, fs[i]), radius));
        return c;
    });
}

VerificationTrace verify_quadratic_gradient_estimate(const HeatOperator& h, int radius, double K,
                                                     const std::vector<VertexFunction>& fs,
                                                     const std::vector<double>& ts, double tol) {
    require_radius(radius);
    if (!std::isfinite(K)) throw InputError("curvature bound must be finite");
    for (const auto& f : fs) require_size(h, f);
    require_positive(fs);
    const auto& g = h.graph();
    std::vector<VertexFunction> grads;
    for (const auto& f : fs) grads.push_back(squared(r_gradient_field(g, sqrt_of(f), radius)));
    return run_grid("quadratic_gradient_estimate", static_cast<int>(fs.size()), ts, tol, [&](int i, double t) {
        auto rhs = h.apply_serial(t, grads[i]);
        for (double& v : rhs) v *= std::exp(-2.0 * K * t);
        Cell c;
        note_vertexwise(c, rhs, squared(r_gradient_field(g, sqrt_of(h.apply_serial(t, fs[i])), radius)));
        return c;
    });
}

VerificationTrace verify_exponential_gradient_estimate(const HeatOperator& h, int radius, double K,
                                                       const std::vector<VertexFunction>& fs,
                                                       const std::vector<double>& ts, double tol) {
    require_radius(radius);
    if (!std::isfinite(K)) throw InputError("curvature bound must be finite");
    for (const auto& f : fs) require_size(h, f);
    require_positive(fs);
    const auto& g = h.graph();
    auto log_of = [](VertexFunction f) {
        for (double& v : f) v = std::log(v);
        return f;
    };
    std::vector<double> base;
    for (const auto& f : fs) base.push_back(r_gradient_sup(g, log_of(f), radius));
    return run_grid("exponential_gradient_estimate", static_cast<int>(fs.size()), ts, tol, [&](int i, double t) {
        const auto pf = h.apply_serial(t, fs[i]);
        for (double v : pf)
            if (!(v > 0.0)) throw InternalError("heat flow lost positivity");
        const auto field = r_gradient_field(g, log_of(pf), radius);
        const auto it = std::max_element(field.begin(), field.end());
        return Cell{std::exp(-K * t) * base[i] - *it, static_cast<Vertex>(it - field.begin())};
    });
}

VerificationTrace trace_G_monotone(const HeatOperator& h, int radius, double K, std::span<const double> f, Vertex x,
                                   double t, int steps, double tol) {
    require_radius(radius);
    require_time(t);
    require_size(h, f);
    h.graph().check(x);
    if (steps < 1) throw InputError("steps must be >= 1");
    if (!std::isfinite(K)) throw InputError("curvature bound must be finite");
    VerificationTrace tr;
    tr.name = "G_monotone";
    tr.tolerance = tol;
    tr.grid.resize(steps + 1);
    tr.values.resize(steps + 1);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k <= steps; ++k) {
        const double s = t * k / steps;
        const auto grad = r_gradient_field(h.graph(), h.apply_serial(t - s, f), radius);
        tr.grid[k] = s;
        tr.values[k] = std::exp(-K * s) * h.apply_serial(s, grad)[x];
    }
    for (int k = 1; k <= steps; ++k) {
        const double inc = tr.values[k] - tr.values[k - 1];
        if (inc < tr.worst_margin) {
            tr.worst_margin = inc;
            tr.worst_at = tr.grid[k];
            tr.worst_vertex = x;
            tr.worst_function = 0;
        }
    }
    tr.finish();
    return tr;
}

std::vector<VerificationTrace> verify_decay_bounds(const HeatOperator& h, int radius, const DecayHypotheses& hyp,
                                                   const std::vector<VertexFunction>& fs,
                                                   const std::vector<VertexFunction>& positive_fs,
                                                   const std::vector<double>& ts, double tol) {
    require_radius(radius);
    for (const auto& f : fs) require_size(h, f);
    for (const auto& f : positive_fs) require_size(h, f);
    require_positive(positive_fs);
    for (double t : ts)
        if (!(t > 0.0)) throw InputError("decay bounds need t > 0");
    const auto& g = h.graph();
    const double R = radius;
    const double simple_c = 2.0 * R * std::pow(g.max_degree(), R - 1.0);
    const double general_c = 2.0 * R * std::pow(g.dimension(), R - 1.0) / g.min_transition();

    auto skipped = [&](std::string name, std::string why) {
        VerificationTrace tr;
        tr.name = std::move(name);
        tr.grid = ts;
        tr.tolerance = tol;
        tr.applicable = false;
        tr.note = std::move(why);
        tr.finish();
        return tr;
    };
    auto lin_lhs = [&](const VertexFunction& f, double t) {
        return squared(r_gradient_field(g, h.apply_serial(t, f), radius));
    };
    auto quad_lhs = [&](const VertexFunction& f, double t) {
        return squared(r_gradient_field(g, sqrt_of(h.apply_serial(t, f)), radius));
    };
    auto bounded = [](const VertexFunction& lhs, double factor, double rhs) {
        Cell c;
        for (std::size_t v = 0; v < lhs.size(); ++v) {
            const double m = rhs - factor * lhs[v];
            if (m < c.margin) c = {m, static_cast<Vertex>(v)};
        }
        return c;
    };

    std::vector<VerificationTrace> out;
    const int nf = static_cast<int>(fs.size());
    const int np = static_cast<int>(positive_fs.size());
    const bool nonneg_linear = hyp.linear && *hyp.linear >= 0.0;
    const bool nonneg_quad = hyp.quadratic && *hyp.quadratic >= 0.0;

    if (!g.is_simple())
        out.push_back(skipped("nonnegative_linear", "needs a simple graph"));
    else if (!nonneg_linear)
        out.push_back(skipped("nonnegative_linear", "needs a curvature bound K >= 0"));
    else
        out.push_back(run_grid("nonnegative_linear", nf, ts, tol, [&](int i, double t) {
            const double n2 = sup_norm(fs[i]) * sup_norm(fs[i]);
            return bounded(lin_lhs(fs[i], t), 1.0, n2 / t * simple_c);
        }));

    if (!g.is_simple())
        out.push_back(skipped("nonnegative_quadratic", "needs a simple graph"));
    else if (!nonneg_quad)
        out.push_back(skipped("nonnegative_quadratic", "needs a quadratic curvature bound K >= 0"));
    else
        out.push_back(run_grid("nonnegative_quadratic", np, ts, tol, [&](int i, double t) {
            return bounded(quad_lhs(positive_fs[i], t), 1.0, f_log_f_sup(positive_fs[i]) / t * simple_c);
        }));

    if (!hyp.linear || !std::isfinite(*hyp.linear))
        out.push_back(skipped("general_linear", "needs a finite curvature bound"));
    else
        out.push_back(run_grid("general_linear", nf, ts, tol, [&](int i, double t) {
            const double n2 = sup_norm(fs[i]) * sup_norm(fs[i]);
            return bounded(lin_lhs(fs[i], t), tau(*hyp.linear, t), general_c * n2);
        }));

    if (!hyp.quadratic || !std::isfinite(*hyp.quadratic))
        out.push_back(skipped("general_quadratic", "needs a finite quadratic curvature bound"));
    else
        out.push_back(run_grid("general_quadratic", np, ts, tol, [&](int i, double t) {
            return bounded(quad_lhs(positive_fs[i], t), tau(*hyp.quadratic, t),
                           general_c * f_log_f_sup(positive_fs[i]));
        }));
    return out;
}

VerificationTrace harnack_check(const HeatOperator& h, int radius, const HarnackOptions& opt) {
    require_radius(radius);
    if (opt.rotations < 0) throw InputError("rotations must be >= 0");
    const auto& g = h.graph();
    VerificationTrace tr;
    tr.name = "harnack";
    tr.tolerance = opt.tol;
    if (opt.certify && !defect_free(g, radius)) {
        tr.applicable = false;
        tr.note = "curvature hypothesis not certified by zero transport defect";
        tr.pass = false;
        return tr;
    }
    const double c = 2.0 * std::numbers::e * radius * std::pow(g.dimension(), radius - 1.0) / g.min_transition();
    const int n = h.size();
    // -Δ eigenvalues ascending: reverse Eigen's order.
    std::vector<double> lam(n);
    Eigen::MatrixXd u(n, n);
    for (int k = 0; k < n; ++k) {
        lam[k] = -h.eigenvalues()[n - 1 - k];
        u.col(k) = h.eigenvectors().col(n - 1 - k);
    }
    const double zero_tol = 1e-9 * std::max(1.0, lam.back());

    auto score = [&](const Eigen::VectorXd& vec, double l, int index) {
        auto f = h.eigenfunction(vec);
        const double s = sup_norm(f);
        for (double& v : f) v /= s;
        const auto field = r_gradient_field(g, f, radius);
        const auto it = std::max_element(field.begin(), field.end());
        const double m = c * l - (*it) * (*it);
        if (m < tr.worst_margin) {
            tr.worst_margin = m;
            tr.worst_function = index;
            tr.worst_vertex = static_cast<Vertex>(it - field.begin());
            tr.worst_at = l;
        }
        return m;
    };

    SeededUniform rng(opt.seed);
    int k = 0;
    while (k < n) {
        int end = k + 1;
        while (end < n && lam[end] - lam[k] <= 1e-8 * std::max(1.0, lam[k])) ++end;
        if (lam[k] > zero_tol) {
            for (int j = k; j < end; ++j) {
                tr.grid.push_back(lam[j]);
                tr.values.push_back(score(u.col(j), lam[j], j));
            }
            const int dim = end - k;
            for (int rot = 0; dim > 1 && rot < opt.rotations; ++rot) {
                const Eigen::MatrixXd block = u.middleCols(k, dim) * random_orthogonal(dim, rng);
                for (int j = 0; j < dim; ++j) {
                    const double m = score(block.col(j), lam[k + j], k + j);
                    tr.values[tr.values.size() - dim + j] = std::min(tr.values[tr.values.size() - dim + j], m);
                }
            }
        }
        k = end;
    }
    tr.finish();
    return tr;
}

std::vector<VertexFunction> random_functions(int n, int count, std::uint64_t seed) {
    if (n < 0 || count < 0) throw InputError("sizes must be >= 0");
    SeededUniform rng(seed);
    std::vector<VertexFunction> out(count, VertexFunction(n));
    for (auto& f : out)
        for (double& v : f) v = rng.in(-1.0, 1.0);
    return out;
}

std::vector<VertexFunction> positive_functions(int n, int count, std::uint64_t seed) {
    auto out = random_functions(n, count, seed);
    for (auto& f : out)
        for (double& v : f) v = std::exp(v);
    return out;
}

std::vector<double> time_grid(double lo, double hi, int count) {
    if (!(lo > 0.0) || !(hi >= lo) || count < 1) throw InputError("time grid needs 0 < lo <= hi and count >= 1");
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i)
        out[i] = count == 1 ? lo : lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    return out;
}

}  // namespace curvgraph
