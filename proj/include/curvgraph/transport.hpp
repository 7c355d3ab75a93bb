// R-transport maps between unit balls and their defect.
//
// A y -> x R-transport map is an injective map phi: A -> B_1(x) with
// B_1(y) \ B_R(x) ⊆ A ⊆ B_1(y) and d(z, phi(z)) <= R. Its defect counts the
// vertices of B_1(x) \ B_R(y) that phi misses. The defect of the pair is the
// minimum over all such maps, or infinite when none exists; in the latter
// case Hall's theorem provides a set A with |N_R(A)| < |A|.

#ifndef CURVGRAPH_TRANSPORT_HPP
#define CURVGRAPH_TRANSPORT_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "curvgraph/graph.hpp"

namespace curvgraph {

struct TransportInstance {
    Vertex from = 0;  // y
    Vertex to = 0;    // x
    int radius = 1;
    std::vector<Vertex> left;       // B_1(y)
    std::vector<Vertex> mandatory;  // B_1(y) \ B_R(x)
    std::vector<Vertex> right;      // B_1(x)
    std::vector<Vertex> target;     // B_1(x) \ B_R(y)
    /// admissible[i][j]: d(left[i], right[j]) <= R.
    std::vector<std::vector<char>> admissible;

    bool is_mandatory(Vertex z) const;
    bool is_target(Vertex u) const;
    int left_index(Vertex z) const;
    int right_index(Vertex u) const;
};

enum class TransportStatus { map_found, no_map };

struct TransportCertificate {
    TransportStatus status = TransportStatus::no_map;
    /// (z, phi(z)) pairs sorted by z; covers every mandatory vertex.
    std::vector<std::pair<Vertex, Vertex>> assignment;
    /// Empty exactly when no map exists (infinite defect).
    std::optional<int> defect;
    /// A ⊆ mandatory with |N_R(A)| < |A|, when no map exists.
    std::vector<Vertex> hall_witness;

    bool map_exists() const { return status == TransportStatus::map_found; }
};

/// Throws InputError unless 0 <= d(x,y) <= R and R >= 1.
TransportInstance build_instance(const WeightedGraph& g, Vertex to, Vertex from, int radius);

/// N_R(A) = { u in B_1(x) : some a in A has d(a,u) <= R }, ascending.
std::vector<Vertex> hall_neighborhood(const TransportInstance& inst, const std::vector<Vertex>& subset);

/// Exact minimum defect of a `from` -> `to` R-transport map, by bipartite
/// matching. The certificate is re-validated before it is returned.
TransportCertificate transport_defect(const WeightedGraph& g, Vertex from, Vertex to, int radius);

/// Same answer by enumerating every admissible injective partial map.
/// Refuses balls B_1(from) larger than `cap`.
TransportCertificate transport_defect_bruteforce(const WeightedGraph& g, Vertex from, Vertex to, int radius,
                                                 int cap = 8);

/// Empty when the certificate is consistent with the instance, otherwise a
/// description of the first violated property.
std::optional<std::string> validate_certificate(const TransportInstance& inst, const TransportCertificate& cert);

/// Lower bounds implied by a certificate: -d for the linear and exponential
/// curvatures, -1.5 d for the quadratic one, all -inf without a map.
struct CurvatureLowerBounds {
    double linear = 0.0;
    double exponential = 0.0;
    double quadratic = 0.0;
};
CurvatureLowerBounds curvature_bounds_from_defect(const TransportCertificate& cert);

}  // namespace curvgraph

#endif  // CURVGRAPH_TRANSPORT_HPP
