#include "curvgraph/json_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace curvgraph {

namespace {

double as_real(const nlohmann::json& v, const char* what) {
    if (!v.is_number()) throw InputError(std::string(what) + " must be a number");
    return v.get<double>();
}

int as_index(const nlohmann::json& v, const char* what) {
    if (!v.is_number_integer()) throw InputError(std::string(what) + " must be an integer");
    return v.get<int>();
}

void dump_into(const nlohmann::json& doc, std::string& out) {
    using value_t = nlohmann::json::value_t;
    switch (doc.type()) {
        case value_t::object: {
            out += '{';
            bool first = true;
            for (const auto& [key, value] : doc.items()) {
                if (!first) out += ',';
                first = false;
                out += nlohmann::json(key).dump();
                out += ':';
                dump_into(value, out);
            }
            out += '}';
            break;
        }
        case value_t::array: {
            out += '[';
            for (std::size_t i = 0; i < doc.size(); ++i) {
                if (i) out += ',';
                dump_into(doc[i], out);
            }
            out += ']';
            break;
        }
        case value_t::number_float: {
            const double v = doc.get<double>();
            if (std::isnan(v)) {
                out += "\"nan\"";
            } else if (std::isinf(v)) {
                out += v > 0 ? "\"inf\"" : "\"-inf\"";
            } else {
                char buf[32];
                std::snprintf(buf, sizeof buf, "%.12g", v == 0.0 ? 0.0 : v);
                out += buf;
            }
            break;
        }
        default:
            out += doc.dump();
    }
}

}  // namespace

WeightedGraph graph_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw InputError("graph JSON must be an object");
    if (!doc.contains("n")) throw InputError("graph JSON is missing \"n\"");
    const int n = as_index(doc.at("n"), "\"n\"");

    std::vector<Edge> edges;
    if (doc.contains("edges")) {
        const auto& list = doc.at("edges");
        if (!list.is_array()) throw InputError("\"edges\" must be an array");
        for (const auto& e : list) {
            if (!e.is_array() || e.size() < 2 || e.size() > 3)
                throw InputError("each edge must be [u, v] or [u, v, w]");
            Edge edge{as_index(e[0], "edge endpoint"), as_index(e[1], "edge endpoint"), 1.0};
            if (e.size() == 3) edge.weight = as_real(e[2], "edge weight");
            if (edge.weight < 0.0) throw InputError("edge weight must be non-negative");
            edges.push_back(edge);
        }
    }

    std::vector<double> measure;
    if (doc.contains("measure")) {
        const auto& list = doc.at("measure");
        if (!list.is_array()) throw InputError("\"measure\" must be an array");
        for (const auto& m : list) measure.push_back(as_real(m, "measure entry"));
        if (measure.empty() && n > 0) throw InputError("\"measure\" must list every vertex");
    }
    return WeightedGraph(n, edges, std::move(measure));
}

WeightedGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open graph file " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("malformed graph JSON in " + path + ": " + e.what());
    }
    return graph_from_json(doc);
}

nlohmann::json graph_to_json(const WeightedGraph& g) {
    nlohmann::json edges = nlohmann::json::array();
    for (const Edge& e : g.edges()) edges.push_back({e.u, e.v, e.weight});
    nlohmann::json measure = nlohmann::json::array();
    for (double m : g.measures()) measure.push_back(m);
    return {{"n", g.size()}, {"edges", std::move(edges)}, {"measure", std::move(measure)}};
}

std::string canonical_dump(const nlohmann::json& doc) {
    std::string out;
    dump_into(doc, out);
    return out;
}

nlohmann::json json_real(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return value;
}

std::string graph_fingerprint(const WeightedGraph& g) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical_dump(graph_to_json(g))) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
    return buf;
}

}  // namespace curvgraph
