#include "curvgraph/transport.hpp"

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <queue>

namespace curvgraph {

namespace {

int index_of(const std::vector<Vertex>& sorted, Vertex v) {
    auto it = std::lower_bound(sorted.begin(), sorted.end(), v);
    return (it != sorted.end() && *it == v) ? static_cast<int>(it - sorted.begin()) : -1;
}

bool contains(const std::vector<Vertex>& sorted, Vertex v) { return index_of(sorted, v) >= 0; }

// Maximum matching of the mandatory vertices into `right` by augmenting
// paths. match_right[j] holds the left index matched to right[j], or -1.
struct MandatoryMatching {
    std::vector<int> match_right;
    std::vector<int> unmatched;  // left indices of unsaturated mandatory vertices
};

MandatoryMatching match_mandatory(const TransportInstance& inst) {
    const int nr = static_cast<int>(inst.right.size());
    MandatoryMatching m{std::vector<int>(nr, -1), {}};
    std::vector<char> seen;
    std::function<bool(int)> augment = [&](int li) {
        for (int j = 0; j < nr; ++j) {
            if (!inst.admissible[li][j] || seen[j]) continue;
            seen[j] = 1;
            if (m.match_right[j] < 0 || augment(m.match_right[j])) {
                m.match_right[j] = li;
                return true;
            }
        }
        return false;
    };
    for (Vertex z : inst.mandatory) {
        const int li = inst.left_index(z);
        seen.assign(nr, 0);
        if (!augment(li)) m.unmatched.push_back(li);
    }
    return m;
}

// Left vertices reachable from an unsaturated mandatory vertex along
// alternating paths. With a maximum matching every reached right vertex is
// matched, so the set has exactly one more element than its neighbourhood.
std::vector<Vertex> hall_violator(const TransportInstance& inst, const MandatoryMatching& m) {
    const int nr = static_cast<int>(inst.right.size());
    std::vector<char> left_seen(inst.left.size(), 0);
    std::vector<char> right_seen(nr, 0);
    std::queue<int> frontier;
    frontier.push(m.unmatched.front());
    left_seen[m.unmatched.front()] = 1;
    while (!frontier.empty()) {
        const int li = frontier.front();
        frontier.pop();
        for (int j = 0; j < nr; ++j) {
            if (!inst.admissible[li][j] || right_seen[j]) continue;
            right_seen[j] = 1;
            const int partner = m.match_right[j];
            if (partner >= 0 && !left_seen[partner]) {
                left_seen[partner] = 1;
                frontier.push(partner);
            }
        }
    }
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < inst.left.size(); ++i)
        if (left_seen[i]) out.push_back(inst.left[i]);
    return out;
}

// Maximum-weight assignment on a square integer matrix via shortest
// augmenting paths with potentials. Returns row -> column.
std::vector<int> max_weight_assignment(const std::vector<std::vector<std::int64_t>>& weight) {
    const int n = static_cast<int>(weight.size());
    constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> u(n + 1, 0), v(n + 1, 0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(n + 1, inf);
        std::vector<char> used(n + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            std::int64_t delta = inf;
            int j1 = 0;
            for (int j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const std::int64_t cur = -weight[i0 - 1][j - 1] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0 != 0);
    }
    std::vector<int> row_to_col(n, -1);
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
    return row_to_col;
}

int count_uncovered(const TransportInstance& inst, const std::vector<std::pair<Vertex, Vertex>>& assignment) {
    int covered = 0;
    for (Vertex t : inst.target)
        for (const auto& [z, u] : assignment)
            if (u == t) {
                ++covered;
                break;
            }
    return static_cast<int>(inst.target.size()) - covered;
}

TransportCertificate checked(const TransportInstance& inst, TransportCertificate cert) {
    if (auto problem = validate_certificate(inst, cert))
        throw InternalError("transport certificate failed validation: " + *problem);
    return cert;
}

}  // namespace

bool TransportInstance::is_mandatory(Vertex z) const { return contains(mandatory, z); }
bool TransportInstance::is_target(Vertex u) const { return contains(target, u); }
int TransportInstance::left_index(Vertex z) const { return index_of(left, z); }
int TransportInstance::right_index(Vertex u) const { return index_of(right, u); }

TransportInstance build_instance(const WeightedGraph& g, Vertex to, Vertex from, int radius) {
    if (radius < 1) throw InputError("transport radius must be at least 1");
    const int d = g.distance(to, from);
    if (d > radius)
        throw InputError("pair (" + std::to_string(to) + "," + std::to_string(from) + ") is farther apart than R=" +
                         std::to_string(radius));
    TransportInstance inst;
    inst.from = from;
    inst.to = to;
    inst.radius = radius;
    inst.left = g.ball(from, 1);
    inst.right = g.ball(to, 1);
    const auto dist_to = g.distances_from(to);
    const auto dist_from = g.distances_from(from);
    for (Vertex z : inst.left)
        if (dist_to[z] > radius) inst.mandatory.push_back(z);
    for (Vertex u : inst.right)
        if (dist_from[u] > radius) inst.target.push_back(u);
    inst.admissible.assign(inst.left.size(), std::vector<char>(inst.right.size(), 0));
    for (std::size_t i = 0; i < inst.left.size(); ++i) {
        const auto dz = g.distances_from(inst.left[i]);
        for (std::size_t j = 0; j < inst.right.size(); ++j) inst.admissible[i][j] = dz[inst.right[j]] <= radius;
    }
    return inst;
}

std::vector<Vertex> hall_neighborhood(const TransportInstance& inst, const std::vector<Vertex>& subset) {
    std::vector<Vertex> out;
    for (std::size_t j = 0; j < inst.right.size(); ++j) {
        for (Vertex a : subset) {
            const int li = inst.left_index(a);
            if (li >= 0 && inst.admissible[li][j]) {
                out.push_back(inst.right[j]);
                break;
            }
        }
    }
    return out;
}

TransportCertificate transport_defect(const WeightedGraph& g, Vertex from, Vertex to, int radius) {
    const TransportInstance inst = build_instance(g, to, from, radius);

    const MandatoryMatching first = match_mandatory(inst);
    if (!first.unmatched.empty()) {
        TransportCertificate cert;
        cert.status = TransportStatus::no_map;
        cert.hall_witness = hall_violator(inst, first);
        return checked(inst, std::move(cert));
    }

    // Mandatory vertices are worth more than all targets together, so any
    // maximum-weight matching saturates them and then covers as many targets
    // as possible.
    const int nl = static_cast<int>(inst.left.size());
    const int nr = static_cast<int>(inst.right.size());
    const int n = std::max(nl, nr);
    const std::int64_t big = nr + 1;
    std::vector<std::vector<std::int64_t>> weight(n, std::vector<std::int64_t>(n, 0));
    for (int i = 0; i < nl; ++i)
        for (int j = 0; j < nr; ++j)
            if (inst.admissible[i][j])
                weight[i][j] = big * (inst.is_mandatory(inst.left[i]) ? 1 : 0) + (inst.is_target(inst.right[j]) ? 1 : 0);
    const std::vector<int> row_to_col = max_weight_assignment(weight);

    TransportCertificate cert;
    cert.status = TransportStatus::map_found;
    std::int64_t total = 0;
    for (int i = 0; i < nl; ++i) {
        const int j = row_to_col[i];
        if (j < 0 || j >= nr || weight[i][j] == 0) continue;
        total += weight[i][j];
        cert.assignment.emplace_back(inst.left[i], inst.right[j]);
    }
    const std::int64_t saturation = big * static_cast<std::int64_t>(inst.mandatory.size());
    if (total < saturation || total - saturation >= big)
        throw InternalError("weighted matching lost mandatory saturation");
    cert.defect = static_cast<int>(inst.target.size()) - static_cast<int>(total % big);
    return checked(inst, std::move(cert));
}

TransportCertificate transport_defect_bruteforce(const WeightedGraph& g, Vertex from, Vertex to, int radius,
                                                 int cap) {
    const TransportInstance inst = build_instance(g, to, from, radius);
    if (static_cast<int>(inst.left.size()) > cap)
        throw InputError("brute-force transport limited to |B_1(y)| <= " + std::to_string(cap));

    const int nl = static_cast<int>(inst.left.size());
    const int nr = static_cast<int>(inst.right.size());
    std::vector<int> image(nl, -1);
    std::vector<char> used(nr, 0);
    std::optional<int> best;
    std::vector<int> best_image;

    std::function<void(int)> extend = [&](int i) {
        if (i == nl) {
            std::vector<std::pair<Vertex, Vertex>> assignment;
            for (int k = 0; k < nl; ++k)
                if (image[k] >= 0) assignment.emplace_back(inst.left[k], inst.right[image[k]]);
            const int d = count_uncovered(inst, assignment);
            if (!best || d < *best) {
                best = d;
                best_image = image;
            }
            return;
        }
        if (!inst.is_mandatory(inst.left[i])) {
            image[i] = -1;
            extend(i + 1);
        }
        for (int j = 0; j < nr; ++j) {
            if (used[j] || !inst.admissible[i][j]) continue;
            used[j] = 1;
            image[i] = j;
            extend(i + 1);
            used[j] = 0;
            image[i] = -1;
        }
    };
    extend(0);

    TransportCertificate cert;
    if (best) {
        cert.status = TransportStatus::map_found;
        cert.defect = *best;
        for (int k = 0; k < nl; ++k)
            if (best_image[k] >= 0) cert.assignment.emplace_back(inst.left[k], inst.right[best_image[k]]);
        return checked(inst, std::move(cert));
    }

    cert.status = TransportStatus::no_map;
    const int nm = static_cast<int>(inst.mandatory.size());
    for (int size = 1; size <= nm && cert.hall_witness.empty(); ++size) {
        for (unsigned mask = 0; mask < (1u << nm); ++mask) {
            if (__builtin_popcount(mask) != size) continue;
            std::vector<Vertex> subset;
            for (int k = 0; k < nm; ++k)
                if (mask & (1u << k)) subset.push_back(inst.mandatory[k]);
            if (hall_neighborhood(inst, subset).size() < subset.size()) {
                cert.hall_witness = std::move(subset);
                break;
            }
        }
    }
    return checked(inst, std::move(cert));
}

std::optional<std::string> validate_certificate(const TransportInstance& inst, const TransportCertificate& cert) {
    if (cert.status == TransportStatus::no_map) {
        if (cert.defect) return "no_map certificate carries a finite defect";
        if (cert.hall_witness.empty()) return "no_map certificate without Hall witness";
        for (Vertex a : cert.hall_witness)
            if (!inst.is_mandatory(a)) return "Hall witness vertex " + std::to_string(a) + " is not mandatory";
        if (hall_neighborhood(inst, cert.hall_witness).size() >= cert.hall_witness.size())
            return "Hall witness is not a violator";
        return std::nullopt;
    }
    if (!cert.defect) return "map_found certificate without defect";
    std::vector<char> image_used(inst.right.size(), 0);
    std::vector<char> domain_used(inst.left.size(), 0);
    for (const auto& [z, u] : cert.assignment) {
        const int li = inst.left_index(z);
        const int rj = inst.right_index(u);
        if (li < 0 || rj < 0) return "assignment leaves the unit balls";
        if (domain_used[li]) return "vertex " + std::to_string(z) + " assigned twice";
        if (image_used[rj]) return "assignment is not injective at " + std::to_string(u);
        if (!inst.admissible[li][rj]) return "pair (" + std::to_string(z) + "," + std::to_string(u) + ") moves too far";
        domain_used[li] = image_used[rj] = 1;
    }
    for (Vertex z : inst.mandatory)
        if (!domain_used[inst.left_index(z)]) return "mandatory vertex " + std::to_string(z) + " unassigned";
    if (*cert.defect != count_uncovered(inst, cert.assignment)) return "stated defect does not match the assignment";
    return std::nullopt;
}

CurvatureLowerBounds curvature_bounds_from_defect(const TransportCertificate& cert) {
    if (!cert.defect) {
        const double ninf = -std::numeric_limits<double>::infinity();
        return {ninf, ninf, ninf};
    }
    const double d = *cert.defect;
    return {0.0 - d, 0.0 - d, 0.0 - 1.5 * d};
}

}  // namespace curvgraph
