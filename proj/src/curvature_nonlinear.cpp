#include "curvgraph/curvature_nonlinear.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

#include "curvgraph/generators.hpp"

namespace curvgraph {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kWitnessTolerance = 1e-7;

int local_index(const std::vector<Vertex>& sorted, Vertex v) {
    return static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

std::vector<Vertex> merged(std::vector<Vertex> a, const std::vector<Vertex>& b) {
    a.insert(a.end(), b.begin(), b.end());
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

std::uint64_t pair_seed(std::uint64_t seed, Vertex x, Vertex y, int branch) {
    std::uint64_t h = seed ^ 0x9E3779B97F4A7C15ULL;
    for (std::uint64_t v : {static_cast<std::uint64_t>(x), static_cast<std::uint64_t>(y),
                            static_cast<std::uint64_t>(branch + 2)}) {
        h ^= v + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
    }
    return h;
}

// Certified lower bound and the -inf shortcut. Only simple graphs carry a
// transport characterisation.
struct Certification {
    double lower = -kInf;
    bool diverges = false;
    std::optional<TransportCertificate> transport;
};

Certification certify(const WeightedGraph& g, Vertex x, Vertex y, int radius, CurvatureVariant variant) {
    Certification c;
    if (!g.is_simple()) return c;
    c.transport = transport_defect(g, y, x, radius);
    const auto bounds = curvature_bounds_from_defect(*c.transport);
    c.diverges = !c.transport->map_exists();
    c.lower = variant == CurvatureVariant::quadratic ? bounds.quadratic : bounds.exponential;
    return c;
}

void check_sandwich(const SandwichResult& r) {
    if (std::isfinite(r.lower) && r.lower > r.upper + 1e-6)
        throw InternalError(variant_name(r.variant) + " estimate " + std::to_string(r.upper) +
                            " is below the certified bound " + std::to_string(r.lower) + " at (" +
                            std::to_string(r.x) + "," + std::to_string(r.y) + ")");
}

// ---------------------------------------------------------------------------
// Quadratic variant: projected subgradient descent in h = log g.

struct QuadraticProblem {
    struct Term {
        int idx;
        double q;
    };

    std::vector<Vertex> support;
    int ix = 0, iy = 0;
    int sign = 1;
    int dep = 0, base = 0;
    std::vector<int> clamped;              // B_R(x) minus x, y
    std::vector<Term> nx, ny;              // neighbours of x and y
    std::vector<std::vector<int>> zballs;  // B_R(z) for each neighbour z of x
    double deg_x = 0.0, deg_y = 0.0;

    QuadraticProblem(const WeightedGraph& g, Vertex x, Vertex y, int radius, int s) : sign(s) {
        support = g.ball(x, radius + 1);
        ix = local_index(support, x);
        iy = local_index(support, y);
        dep = s > 0 ? iy : ix;
        base = s > 0 ? ix : iy;
        for (Vertex v : g.ball(x, radius))
            if (v != x && v != y) clamped.push_back(local_index(support, v));
        for (const Neighbor& nb : g.neighbors(x)) {
            nx.push_back({local_index(support, nb.vertex), nb.weight / g.measure(x)});
            std::vector<int> ball;
            for (Vertex w : g.ball(nb.vertex, radius)) ball.push_back(local_index(support, w));
            zballs.push_back(std::move(ball));
        }
        for (const Neighbor& nb : g.neighbors(y)) ny.push_back({local_index(support, nb.vertex), nb.weight / g.measure(y)});
        deg_x = g.degree(x);
        deg_y = g.degree(y);
    }

    // g = e^h, then the branch constraints; h is rewritten to match.
    void project(std::vector<double>& h, std::vector<double>& gv) const {
        gv.resize(h.size());
        for (std::size_t i = 0; i < h.size(); ++i) gv[i] = std::exp(h[i]);
        gv[dep] = gv[base] + 1.0;
        h[dep] = std::log(gv[dep]);
        const double gx = gv[ix];
        for (int i : clamped) {
            const double c = std::clamp(gv[i], gx - 1.0, gx + 1.0);
            if (c != gv[i]) {
                gv[i] = c;
                h[i] = std::log(c);
            }
        }
    }

    // Δg²/g(v) = sum Q(v,u) g(u)²/g(v) - Deg(v) g(v), with its gradient.
    static double ratio_term(const std::vector<Term>& nbs, double deg, int iv, const std::vector<double>& gv,
                             std::vector<double>* grad, double scale) {
        const double gvv = gv[iv];
        double sum = 0.0;
        for (const Term& t : nbs) sum += t.q * gv[t.idx] * gv[t.idx];
        if (grad) {
            for (const Term& t : nbs) (*grad)[t.idx] += scale * 2.0 * t.q * gv[t.idx] / gvv;
            (*grad)[iv] += scale * (-sum / (gvv * gvv) - deg);
        }
        return sum / gvv - deg * gvv;
    }

    double value(const std::vector<double>& gv, std::vector<double>* grad) const {
        if (grad) grad->assign(gv.size(), 0.0);
        double lap_grad = 0.0;
        for (std::size_t k = 0; k < nx.size(); ++k) {
            const int z = nx[k].idx;
            double best = 0.0;
            int arg = z;
            for (int w : zballs[k]) {
                const double d = std::abs(gv[w] - gv[z]);
                if (d > best) {
                    best = d;
                    arg = w;
                }
            }
            lap_grad += nx[k].q * (best * best - 1.0);
            if (grad && arg != z) {
                const double d = 0.5 * nx[k].q * 2.0 * best * (gv[arg] > gv[z] ? 1.0 : -1.0);
                (*grad)[arg] += d;
                (*grad)[z] -= d;
            }
        }
        const double ty = ratio_term(ny, deg_y, iy, gv, grad, -0.5 * sign);
        const double tx = ratio_term(nx, deg_x, ix, gv, grad, 0.5 * sign);
        return 0.5 * (lap_grad - sign * (ty - tx));
    }
};

struct QuadraticRun {
    double value = kInf;
    std::vector<double> g;
    int iterations = 0;
    bool converged = false;
};

QuadraticRun descend(const QuadraticProblem& p, std::vector<double> h, const OptimizerConfig& cfg) {
    QuadraticRun run;
    std::vector<double> gv, grad_g, grad_h(h.size());
    double step = cfg.initial_step;
    for (int it = 0; it < cfg.max_iterations; ++it) {
        p.project(h, gv);
        const double val = p.value(gv, &grad_g);
        run.iterations = it + 1;
        if (std::isfinite(val) && val < run.value) {
            run.value = val;
            run.g = gv;
        }
        double norm = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) grad_h[i] = grad_g[i] * gv[i];
        grad_h[p.base] += grad_g[p.dep] * gv[p.base];
        grad_h[p.dep] = 0.0;
        for (double v : grad_h) norm += v * v;
        norm = std::sqrt(norm);
        if (norm == 0.0 || step < cfg.tolerance) {
            run.converged = true;
            break;
        }
        for (std::size_t i = 0; i < h.size(); ++i) h[i] -= step * grad_h[i] / norm;
        step *= cfg.step_decay;
    }
    return run;
}

// ---------------------------------------------------------------------------
// Exponential variant. With ψ = e^{rφ}, g = rφ, the inner problem for fixed
// r is linear in ψ over a polytope whose vertices are integer φ, so scoring
// every integer point of the core polytope is exact for that r.

struct ExponentialProblem {
    std::vector<Vertex> core;     // B_1(x) ∪ B_1(y)
    std::vector<Vertex> support;  // B_{R+1}(x) ∪ B_{R+1}(y)
    std::vector<std::vector<int>> hop;  // core × support, hops in the d <= R graph on support
    int cx = 0, cy = 0;
    std::vector<int> free;  // core indices other than x, y
    std::vector<int> lo, hi;
    std::vector<double> a, b;  // Q(x,·), Q(y,·) on core
    int m_lo = 0, m_hi = 0;

    ExponentialProblem(const WeightedGraph& g, Vertex x, Vertex y, int radius) {
        core = merged(g.ball(x, 1), g.ball(y, 1));
        support = merged(g.ball(x, radius + 1), g.ball(y, radius + 1));
        cx = local_index(core, x);
        cy = local_index(core, y);
        const int ns = static_cast<int>(support.size());
        std::vector<std::vector<int>> close(ns);
        for (int i = 0; i < ns; ++i) {
            const auto d = g.distances_from(support[i]);
            for (int j = 0; j < ns; ++j)
                if (i != j && d[support[j]] <= radius) close[i].push_back(j);
        }
        for (Vertex c : core) {
            std::vector<int> dist(ns, kUnreachable);
            std::queue<int> q;
            const int s = local_index(support, c);
            dist[s] = 0;
            q.push(s);
            while (!q.empty()) {
                const int u = q.front();
                q.pop();
                for (int v : close[u])
                    if (dist[v] == kUnreachable) {
                        dist[v] = dist[u] + 1;
                        q.push(v);
                    }
            }
            hop.push_back(std::move(dist));
        }
        const int nc = static_cast<int>(core.size());
        a.assign(nc, 0.0);
        b.assign(nc, 0.0);
        for (const Neighbor& nb : g.neighbors(x)) a[local_index(core, nb.vertex)] = nb.weight / g.measure(x);
        for (const Neighbor& nb : g.neighbors(y)) b[local_index(core, nb.vertex)] = nb.weight / g.measure(y);
        lo.assign(nc, 0);
        hi.assign(nc, 0);
        lo[cy] = hi[cy] = 1;
        for (int i = 0; i < nc; ++i) {
            if (i == cx || i == cy) continue;
            free.push_back(i);
            lo[i] = std::max(-h(i, cx), 1 - h(i, cy));
            hi[i] = std::min(h(i, cx), 1 + h(i, cy));
        }
        m_lo = *std::min_element(lo.begin(), lo.end()) - 1;
        m_hi = *std::max_element(hi.begin(), hi.end());
    }

    int h(int ci, int cj) const { return hop[ci][local_index(support, core[cj])]; }
    int width() const { return m_hi - m_lo + 1; }

    // C_m with F_r(φ) = (1/r) sum_m C_m expm1(r m).
    std::vector<double> coefficients(const std::vector<int>& phi) const {
        std::vector<double> c(width(), 0.0), mag(width(), 0.0);
        for (std::size_t i = 0; i < core.size(); ++i) {
            if (a[i] != 0.0) {
                c[phi[i] - m_lo] += a[i];
                mag[phi[i] - m_lo] += a[i];
            }
            if (b[i] != 0.0) {
                c[phi[i] - 1 - m_lo] -= b[i];
                mag[phi[i] - 1 - m_lo] += b[i];
            }
        }
        for (int k = 0; k < width(); ++k)
            if (std::abs(c[k]) <= 64 * std::numeric_limits<double>::epsilon() * mag[k]) c[k] = 0.0;
        return c;
    }

    // Value of F_r tends to -inf as r grows.
    bool divergent(const std::vector<double>& c) const {
        for (int k = width() - 1; k >= 0 && m_lo + k > 0; --k)
            if (c[k] != 0.0) return c[k] < 0.0;
        return false;
    }

    // Integer φ consistent with the assigned entries, one coordinate at a time.
    std::pair<int, int> window(const std::vector<int>& phi, const std::vector<char>& set, int i) const {
        int l = lo[i], u = hi[i];
        for (int j : free)
            if (set[j] && j != i) {
                l = std::max(l, phi[j] - h(i, j));
                u = std::min(u, phi[j] + h(i, j));
            }
        return {l, u};
    }

    // Returns false if the budget ran out.
    bool enumerate(long budget, std::vector<std::vector<int>>& out) const {
        std::vector<int> phi(core.size(), 0);
        phi[cy] = 1;
        std::vector<char> set(core.size(), 0);
        bool ok = true;
        auto rec = [&](auto& self, std::size_t k) -> void {
            if (!ok) return;
            if (k == free.size()) {
                if (static_cast<long>(out.size()) >= budget) {
                    ok = false;
                    return;
                }
                out.push_back(phi);
                return;
            }
            const int i = free[k];
            const auto [l, u] = window(phi, set, i);
            set[i] = 1;
            for (int v = l; v <= u && ok; ++v) {
                phi[i] = v;
                self(self, k + 1);
            }
            set[i] = 0;
        };
        rec(rec, 0);
        return ok;
    }
};

struct Scored {
    long double value = std::numeric_limits<long double>::infinity();
    std::size_t point = 0;
    double r = 0.0;
};

// Best point at one r; candidates whose rounding error could exceed 1e-9
// are skipped.
Scored score_at(const ExponentialProblem& p, const std::vector<std::vector<double>>& coeffs, double r) {
    const int w = p.width();
    std::vector<long double> e(w);
    for (int k = 0; k < w; ++k) e[k] = std::expm1(static_cast<long double>(r) * (p.m_lo + k));
    Scored best;
    best.r = r;
    const long double eps = std::numeric_limits<long double>::epsilon();
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        long double sum = 0.0L, mag = 0.0L;
        for (int k = 0; k < w; ++k) {
            const long double t = coeffs[i][k] * e[k];
            sum += t;
            mag += std::abs(t);
        }
        if (!std::isfinite(static_cast<double>(mag)) || mag * eps * (w + 1) / r > 1e-9L) continue;
        const long double v = sum / r;
        if (v < best.value) {
            best.value = v;
            best.point = i;
        }
    }
    return best;
}

std::vector<double> geometric(double lo, double hi, int count) {
    std::vector<double> out(count);
    for (int i = 0; i < count; ++i) out[i] = lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

// Coordinate descent over integer points for cores too large to enumerate.
std::vector<std::vector<int>> local_search_points(const ExponentialProblem& p, const std::vector<double>& grid,
                                                  const OptimizerConfig& cfg, std::uint64_t seed) {
    std::vector<std::vector<int>> out;
    SeededUniform rng(seed);
    for (double r : grid) {
        for (int start = 0; start < cfg.restarts; ++start) {
            std::vector<int> phi(p.core.size(), 0);
            phi[p.cy] = 1;
            std::vector<char> set(p.core.size(), 0);
            std::vector<int> order = p.free;
            if (start > 0)
                for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
            for (int i : order) {
                const auto [l, u] = p.window(phi, set, i);
                const double k = p.a[i] - p.b[i] * std::exp(-r);
                if (start == 0)
                    phi[i] = k > 0 ? l : u;
                else
                    phi[i] = l + static_cast<int>(rng.below(static_cast<std::uint64_t>(u - l + 1)));
                set[i] = 1;
            }
            for (bool moved = true; moved;) {
                moved = false;
                for (int i : p.free) {
                    const double k = p.a[i] - p.b[i] * std::exp(-r);
                    const int target = phi[i] + (k > 0 ? -1 : 1);
                    if (k == 0.0) continue;
                    set[i] = 0;
                    const auto [l, u] = p.window(phi, set, i);
                    set[i] = 1;
                    if (target >= l && target <= u) {
                        phi[i] = target;
                        moved = true;
                    }
                }
            }
            out.push_back(phi);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

}  // namespace

void OptimizerConfig::validate() const {
    if (restarts < 1) throw InputError("restarts must be at least 1");
    if (max_iterations < 1) throw InputError("max_iterations must be at least 1");
    if (!(initial_step > 0.0) || !(tolerance > 0.0)) throw InputError("step and tolerance must be positive");
    if (!(step_decay > 0.0 && step_decay <= 1.0)) throw InputError("step_decay must lie in (0, 1]");
    if (!(r_lo > 0.0 && r_lo < r_hi) || !std::isfinite(r_hi)) throw InputError("r-grid needs 0 < r_lo < r_hi");
    if (r_count < 2) throw InputError("r-grid needs at least two points");
    if (lattice_budget < 1) throw InputError("lattice budget must be positive");
}

VertexFunction SandwichResult::witness_on(const WeightedGraph& g, double fill) const {
    VertexFunction out(static_cast<std::size_t>(g.size()), fill);
    for (std::size_t i = 0; i < support.size() && i < witness.size(); ++i) out[support[i]] = witness[i];
    return out;
}

ObjectiveEvaluation quadratic_objective(const WeightedGraph& g, std::span<const double> gfun, Vertex x, Vertex y,
                                        int radius) {
    require_curvature_pair(g, x, y, radius);
    if (gfun.size() != static_cast<std::size_t>(g.size())) throw InputError("function size does not match graph");
    ObjectiveEvaluation out;
    for (Vertex v : g.ball(x, radius + 1))
        if (!(gfun[v] > 0.0)) out.violation = kInf;

    VertexFunction sq(gfun.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = gfun[i] * gfun[i];
    const double gx = r_gradient(g, gfun, x, radius).value;
    double lap = 0.0;
    for (const Neighbor& nb : g.neighbors(x)) {
        const double gz = r_gradient(g, gfun, nb.vertex, radius).value;
        lap += nb.weight / g.measure(x) * (gz * gz - gx * gx);
    }
    const double diff = gfun[y] - gfun[x];
    const double s = (diff > 0) - (diff < 0);
    const double ty = laplacian_at(g, sq, y) / gfun[y];
    const double tx = laplacian_at(g, sq, x) / gfun[x];
    out.value = 0.5 * (lap - s * (ty - tx));
    out.violation = std::max({out.violation, std::abs(gx - 1.0), std::abs(std::abs(diff) - 1.0)});
    return out;
}

ObjectiveEvaluation exponential_objective(const WeightedGraph& g, std::span<const double> gfun, Vertex x, Vertex y,
                                          int radius, const std::vector<Vertex>& support) {
    require_curvature_pair(g, x, y, radius);
    if (gfun.size() != static_cast<std::size_t>(g.size())) throw InputError("function size does not match graph");
    const double r = gfun[y] - gfun[x];
    ObjectiveEvaluation out;
    if (!(r > 0.0)) {
        out.value = kInf;
        out.violation = kInf;
        return out;
    }
    // Δe^g/e^g(v) = sum Q(v,u) (e^{g(u)-g(v)} - 1).
    auto ratio = [&](Vertex v) {
        double sum = 0.0;
        for (const Neighbor& nb : g.neighbors(v)) sum += nb.weight / g.measure(v) * std::expm1(gfun[nb.vertex] - gfun[v]);
        return sum;
    };
    out.value = (ratio(x) - ratio(y)) / r;
    for (Vertex u : support) {
        const auto d = g.distances_from(u);
        for (Vertex v : support)
            if (d[v] <= radius) out.violation = std::max(out.violation, std::abs(gfun[u] - gfun[v]) - r);
    }
    return out;
}

SandwichResult k_quadratic_estimate(const WeightedGraph& g, Vertex x, Vertex y, int radius, const OptimizerConfig& cfg) {
    require_curvature_pair(g, x, y, radius);
    cfg.validate();
    SandwichResult out;
    out.variant = CurvatureVariant::quadratic;
    out.x = x;
    out.y = y;
    out.radius = radius;
    Certification cert = certify(g, x, y, radius, out.variant);
    out.transport = std::move(cert.transport);
    out.lower = cert.lower;
    if (cert.diverges) {
        out.upper = -kInf;
        out.diagnostics.note = "no transport map";
        return out;
    }

    // Starting shapes from the K_R witness f: g = c + f and g = c + 1 - f.
    const CurvatureResult lin = k_linear(g, x, y, radius);
    VertexFunction f = lin.witness_on(g);
    if (lin.witness.empty()) {
        std::fill(f.begin(), f.end(), 0.0);
        f[y] = 1.0;
    }

    double best = kInf;
    for (int s : {1, -1}) {
        const QuadraticProblem p(g, x, y, radius, s);
        const std::size_t n = p.support.size();
        std::vector<double> shape(n);
        double fmin = kInf, fmax = -kInf;
        for (std::size_t i = 0; i < n; ++i) {
            shape[i] = s > 0 ? f[p.support[i]] : 1.0 - f[p.support[i]];
            fmin = std::min(fmin, shape[i]);
            fmax = std::max(fmax, shape[i]);
        }
        const double c0 = 0.25 + std::max(0.0, -fmin);
        const double offsets[] = {c0, c0 + 1.0, c0 + 10.0};
        std::vector<std::vector<double>> seeds;
        for (double c : offsets) {
            std::vector<double> h(n);
            for (std::size_t i = 0; i < n; ++i) h[i] = std::log(c + shape[i]);
            seeds.push_back(std::move(h));
        }
        SeededUniform rng(pair_seed(cfg.seed, x, y, s));
        for (int start = 0; start < cfg.restarts; ++start) {
            std::vector<double> h = seeds[static_cast<std::size_t>(start) % seeds.size()];
            if (start >= static_cast<int>(seeds.size()))
                for (double& v : h) v += rng.in(-0.5, 0.5);
            const QuadraticRun run = descend(p, std::move(h), cfg);
            ++out.diagnostics.starts;
            out.diagnostics.iterations += run.iterations;
            if (run.value < best) {
                best = run.value;
                out.branch = s;
                out.support = p.support;
                out.witness = run.g;
                out.diagnostics.converged = run.converged;
            }
        }
    }
    if (!std::isfinite(best)) throw InternalError("quadratic optimizer found no finite objective");
    out.upper = best;
    if (!out.diagnostics.converged) out.diagnostics.note = "best run hit the iteration cap";

    const ObjectiveEvaluation check = quadratic_objective(g, out.witness_on(g, 1.0), x, y, radius);
    if (check.violation > kWitnessTolerance || std::abs(check.value - best) > 1e-6 * std::max(1.0, std::abs(best)))
        throw InternalError("quadratic witness does not reproduce its objective");
    check_sandwich(out);
    return out;
}

SandwichResult k_exponential_estimate(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                      const OptimizerConfig& cfg) {
    require_curvature_pair(g, x, y, radius);
    cfg.validate();
    SandwichResult out;
    out.variant = CurvatureVariant::exponential;
    out.x = x;
    out.y = y;
    out.radius = radius;
    out.truncated = true;
    Certification cert = certify(g, x, y, radius, out.variant);
    out.transport = std::move(cert.transport);
    out.lower = cert.lower;
    if (cert.diverges) {
        out.upper = -kInf;
        out.diagnostics.note = "no transport map";
        return out;
    }

    const ExponentialProblem p(g, x, y, radius);
    std::vector<double> grid = geometric(cfg.r_lo, cfg.r_hi, cfg.r_count);
    std::vector<std::vector<int>> points;
    out.diagnostics.exhaustive = p.enumerate(cfg.lattice_budget, points);
    if (!out.diagnostics.exhaustive) {
        points = local_search_points(p, grid, cfg, pair_seed(cfg.seed, x, y, 0));
        out.diagnostics.note = "lattice budget exceeded; local search";
    }
    out.diagnostics.lattice_points = static_cast<long>(points.size());

    std::vector<std::vector<double>> coeffs;
    coeffs.reserve(points.size());
    for (const auto& phi : points) {
        coeffs.push_back(p.coefficients(phi));
        if (p.divergent(coeffs.back())) {
            out.upper = -kInf;
            out.diagnostics.note = "divergent lattice point";
            check_sandwich(out);
            return out;
        }
    }

    Scored best;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const Scored s = score_at(p, coeffs, grid[i]);
        ++out.diagnostics.r_evaluations;
        if (s.value < best.value) {
            best = s;
            best_index = i;
        }
    }
    if (cfg.refine) {
        const double lo = grid[best_index == 0 ? 0 : best_index - 1];
        const double hi = grid[std::min(best_index + 1, grid.size() - 1)];
        for (double r : geometric(lo, hi, 17)) {
            const Scored s = score_at(p, coeffs, r);
            ++out.diagnostics.r_evaluations;
            if (s.value < best.value) best = s;
        }
    }
    if (!std::isfinite(static_cast<double>(best.value))) throw InternalError("exponential grid produced no value");
    out.upper = static_cast<double>(best.value);
    out.r = best.r;

    // g = rφ on the core, extended to the support by the smallest r·hop-Lipschitz majorant.
    const auto& phi = points[best.point];
    out.support = p.support;
    out.witness.assign(p.support.size(), kInf);
    for (std::size_t c = 0; c < p.core.size(); ++c)
        for (std::size_t w = 0; w < p.support.size(); ++w)
            out.witness[w] = std::min(out.witness[w], best.r * (phi[c] + p.hop[c][w]));
    for (std::size_t c = 0; c < p.core.size(); ++c) out.witness[local_index(p.support, p.core[c])] = best.r * phi[c];

    int spread = 0;
    for (int v : phi) spread = std::max(spread, std::abs(v));
    if (best.r * (spread + 1) <= 300.0) {
        const ObjectiveEvaluation check = exponential_objective(g, out.witness_on(g, 0.0), x, y, radius, p.support);
        if (check.violation > kWitnessTolerance * std::max(1.0, best.r) ||
            std::abs(check.value - out.upper) > 1e-6 * std::max(1.0, std::abs(out.upper)))
            throw InternalError("exponential witness does not reproduce its objective");
    }
    check_sandwich(out);
    return out;
}

bool log_inequality_check(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw InputError("log inequality needs positive arguments");
    const double lhs = a * std::log(a) - b * std::log(b) - (a - b) * std::log(b) - (a - b);
    const double rhs = (std::sqrt(a) - std::sqrt(b)) * (std::sqrt(a) - std::sqrt(b));
    const double scale = std::abs(a * std::log(a)) + std::abs(b * std::log(b)) +
                         std::abs(a - b) * (std::abs(std::log(b)) + 1.0) + a + b;
    return lhs - rhs >= -16 * std::numeric_limits<double>::epsilon() * scale;
}

namespace {

std::vector<int> distance_to_set(const WeightedGraph& g, const std::vector<Vertex>& set) {
    std::vector<int> d(static_cast<std::size_t>(g.size()), kUnreachable);
    for (Vertex a : set) {
        const auto da = g.distances_from(a);
        for (int v = 0; v < g.size(); ++v) d[v] = std::min(d[v], da[v]);
    }
    return d;
}

}  // namespace

double exponential_divergent_value(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                   const std::vector<Vertex>& hall, double r) {
    const auto d = distance_to_set(g, hall);
    VertexFunction gf(static_cast<std::size_t>(g.size()), 0.0);
    for (int v = 0; v < g.size(); ++v) gf[v] = d[v] == 0 ? 2.0 * r : (d[v] <= radius ? r : 0.0);
    return exponential_objective(g, gf, x, y, radius, {}).value;
}

double quadratic_divergent_value(const WeightedGraph& g, Vertex x, Vertex y, int radius,
                                 const std::vector<Vertex>& hall, double r, double eps) {
    VertexFunction gf(static_cast<std::size_t>(g.size()), 1.0 + eps);
    for (Vertex a : hall) gf[a] = r;
    gf[x] = eps;
    return quadratic_objective(g, gf, x, y, radius).value;
}

}  // namespace curvgraph
