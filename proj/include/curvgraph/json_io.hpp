// Graph JSON schema and canonical serialisation.
//
//   {"n": int, "edges": [[u, v, w], ...], "measure": [m_0, ..., m_{n-1}]}
//
// "measure" defaults to all ones and the per-edge weight to 1.0.

#ifndef CURVGRAPH_JSON_IO_HPP
#define CURVGRAPH_JSON_IO_HPP

#include <cstdint>
#include <string>

#include <json.hpp>

#include "curvgraph/graph.hpp"

namespace curvgraph {

WeightedGraph graph_from_json(const nlohmann::json& doc);
WeightedGraph load_graph(const std::string& path);

/// Full form: every edge carries its weight and the measure is always present.
nlohmann::json graph_to_json(const WeightedGraph& g);

/// Sorted keys, no whitespace, reals printed with %.12g, non-finite reals
/// printed as the strings "inf", "-inf", "nan".
std::string canonical_dump(const nlohmann::json& doc);

/// Finite doubles pass through; infinities and NaN become strings.
nlohmann::json json_real(double value);

/// FNV-1a 64 of the canonical graph JSON, as 16 hex digits.
std::string graph_fingerprint(const WeightedGraph& g);

}  // namespace curvgraph

#endif  // CURVGRAPH_JSON_IO_HPP
