#include "curvgraph/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "curvgraph/curvature_linear.hpp"
#include "curvgraph/curvature_nonlinear.hpp"
#include "curvgraph/generators.hpp"
#include "curvgraph/json_io.hpp"
#include "curvgraph/semigroup.hpp"
#include "curvgraph/sweep.hpp"
#include "curvgraph/transport.hpp"

namespace curvgraph {

namespace {

using nlohmann::json;

struct Options {
    // gen
    std::string family;
    std::string size;
    double probability = 0.3;
    // shared
    std::string graph;
    int radius = 1;
    std::string pair;
    bool all_pairs = false;
    std::string format = "json";
    int jobs = 1;
    std::uint64_t seed = 0;
    // curvature
    std::string variant = "linear";
    int restarts = OptimizerConfig{}.restarts;
    bool lp_crosscheck = false;
    // verify
    std::string theorem;
    std::string k = "auto";
    int samples = 20;
    bool certify = false;
    std::string csv;
    double horizon = 1.0;
    int steps = 50;
    int vertex = -1;
    std::string times = "0.001,10,25";
};

json vertices_json(const std::vector<Vertex>& vs) {
    json a = json::array();
    for (Vertex v : vs) a.push_back(v);
    return a;
}

json reals_json(const std::vector<double>& vs) {
    json a = json::array();
    for (double v : vs) a.push_back(json_real(v));
    return a;
}

std::string csv_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<VertexPair> selected_pairs(const WeightedGraph& g, const Options& o, int radius) {
    if (o.all_pairs == !o.pair.empty()) throw InputError("give exactly one of --pair x,y and --all-pairs");
    if (o.all_pairs) return ordered_pairs(g, radius);
    const auto parts = parse_dims(o.pair);
    if (parts.size() != 2) throw InputError("--pair expects x,y");
    g.check(parts[0]);
    g.check(parts[1]);
    return {{parts[0], parts[1]}};
}

json transport_json(const TransportCertificate& c) {
    json j;
    j["status"] = c.map_exists() ? "map_found" : "no_map";
    j["defect"] = c.defect ? json(*c.defect) : json(nullptr);
    json a = json::array();
    for (const auto& [z, u] : c.assignment) a.push_back({z, u});
    j["assignment"] = std::move(a);
    j["hall_witness"] = vertices_json(c.hall_witness);
    return j;
}

json linear_json(const CurvatureResult& r) {
    json j;
    j["x"] = r.x;
    j["y"] = r.y;
    j["R"] = r.radius;
    j["variant"] = variant_name(r.variant);
    j["value"] = json_real(r.value);
    j["kind"] = kind_name(r.kind);
    j["support"] = vertices_json(r.support);
    j["witness"] = reals_json(r.witness);
    if (r.transport) j["transport"] = transport_json(*r.transport);
    return j;
}

json sandwich_json(const SandwichResult& r) {
    json j;
    j["x"] = r.x;
    j["y"] = r.y;
    j["R"] = r.radius;
    j["variant"] = variant_name(r.variant);
    j["lower"] = json_real(r.lower);
    j["upper"] = json_real(r.upper);
    j["gap"] = json_real(r.gap());
    j["value"] = json_real(r.upper);
    j["kind"] = kind_name(BoundKind::upper_estimate);
    j["support"] = vertices_json(r.support);
    j["witness"] = reals_json(r.witness);
    if (r.variant == CurvatureVariant::quadratic)
        j["branch"] = r.branch;
    else {
        j["r"] = json_real(r.r);
        j["truncated"] = r.truncated;
    }
    if (r.transport) j["transport"] = transport_json(*r.transport);
    const auto& d = r.diagnostics;
    j["diagnostics"] = {{"starts", d.starts},
                        {"iterations", d.iterations},
                        {"converged", d.converged},
                        {"exhaustive", d.exhaustive},
                        {"lattice_points", d.lattice_points},
                        {"r_evaluations", d.r_evaluations},
                        {"note", d.note}};
    return j;
}

json trace_json(const VerificationTrace& t) {
    return {{"name", t.name},
            {"grid", reals_json(t.grid)},
            {"values", reals_json(t.values)},
            {"worst_margin", json_real(t.worst_margin)},
            {"tolerance", t.tolerance},
            {"applicable", t.applicable},
            {"pass", t.pass},
            {"worst_function", t.worst_function},
            {"worst_vertex", t.worst_vertex},
            {"worst_at", json_real(t.worst_at)},
            {"note", t.note}};
}

struct Report {
    json doc;
    std::string csv;
    bool failed = false;
};

Report cmd_gen(const Options& o) {
    LatticeSpec spec;
    spec.family = parse_family(o.family);
    spec.dims = parse_dims(o.size);
    spec.probability = o.probability;
    spec.seed = o.seed;
    const auto g = generate(spec).graph;
    return {graph_to_json(g), {}, false};
}

Report cmd_curvature(const WeightedGraph& g, const Options& o) {
    const auto variant = parse_variant(o.variant);
    if (variant == CurvatureVariant::ollivier && o.radius != 1) throw InputError("ollivier curvature needs --radius 1");
    const auto pairs = selected_pairs(g, o, o.radius);
    for (const auto& [x, y] : pairs) require_curvature_pair(g, x, y, o.radius);
    Report rep;
    rep.doc = json::array();
    std::ostringstream csv;
    csv << "x,y,R,variant,value,kind\n";
    auto row = [&](Vertex x, Vertex y, double v, BoundKind k) {
        csv << x << ',' << y << ',' << o.radius << ',' << variant_name(variant) << ',' << csv_real(v) << ','
            << kind_name(k) << '\n';
    };
    if (variant == CurvatureVariant::linear || variant == CurvatureVariant::ollivier) {
        LinearCurvatureOptions lo;
        lo.lp_crosscheck = o.lp_crosscheck;
        const auto results = sweep_pairs(
            pairs,
            [&](Vertex x, Vertex y) {
                return variant == CurvatureVariant::linear ? k_linear(g, x, y, o.radius, lo) : k_ollivier(g, x, y);
            },
            o.jobs);
        for (const auto& r : results) {
            rep.doc.push_back(linear_json(r));
            row(r.x, r.y, r.value, r.kind);
        }
    } else {
        OptimizerConfig cfg;
        cfg.restarts = o.restarts;
        cfg.seed = o.seed;
        cfg.validate();
        const auto results = sweep_pairs(
            pairs,
            [&](Vertex x, Vertex y) {
                return variant == CurvatureVariant::quadratic ? k_quadratic_estimate(g, x, y, o.radius, cfg)
                                                              : k_exponential_estimate(g, x, y, o.radius, cfg);
            },
            o.jobs);
        for (const auto& r : results) {
            rep.doc.push_back(sandwich_json(r));
            row(r.x, r.y, r.upper, BoundKind::upper_estimate);
            row(r.x, r.y, r.lower, BoundKind::lower_certificate);
        }
    }
    rep.csv = csv.str();
    return rep;
}

Report cmd_defect(const WeightedGraph& g, const Options& o) {
    const auto pairs = selected_pairs(g, o, o.radius);
    for (const auto& [x, y] : pairs)
        if (x == y || g.distance(x, y) > o.radius) throw InputError("pair must satisfy 0 < d(x,y) <= R");
    const auto certs =
        sweep_pairs(pairs, [&](Vertex x, Vertex y) { return transport_defect(g, y, x, o.radius); }, o.jobs);
    Report rep;
    rep.doc = json::array();
    std::ostringstream csv;
    csv << "x,y,R,status,defect\n";
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        auto j = transport_json(certs[i]);
        j["x"] = pairs[i].first;
        j["y"] = pairs[i].second;
        j["R"] = o.radius;
        csv << pairs[i].first << ',' << pairs[i].second << ',' << o.radius << ',' << j["status"].get<std::string>()
            << ',' << (certs[i].defect ? std::to_string(*certs[i].defect) : std::string("inf")) << '\n';
        rep.doc.push_back(std::move(j));
    }
    rep.csv = csv.str();
    return rep;
}

Report cmd_spectrum(const WeightedGraph& g) {
    const auto s = spectrum(g);
    Report rep;
    rep.doc = {{"eigenvalues", reals_json(s)}};
    std::ostringstream csv;
    csv << "index,eigenvalue\n";
    for (std::size_t i = 0; i < s.size(); ++i) csv << i << ',' << csv_real(s[i]) << '\n';
    rep.csv = csv.str();
    return rep;
}

// Smallest certified lower bound over pairs within R; nullopt off simple graphs.
std::optional<double> certified_lower(const WeightedGraph& g, int radius, bool quadratic, int jobs) {
    if (!g.is_simple()) return std::nullopt;
    double k = INFINITY;
    for (const auto& c : sweep_defect(g, radius, jobs)) {
        const auto b = curvature_bounds_from_defect(c);
        k = std::min(k, quadratic ? b.quadratic : b.exponential);
    }
    return k;
}

Report cmd_verify(const WeightedGraph& g, const Options& o) {
    const std::string& th = o.theorem;
    if (o.samples < 1) throw InputError("--samples must be >= 1");
    if (o.radius < 1) throw InputError("radius must be >= 1");
    const auto tparts = [&] {
        std::vector<double> v;
        std::stringstream ss(o.times);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                v.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw InputError("--times expects lo,hi,count");
            }
        }
        if (v.size() != 3) throw InputError("--times expects lo,hi,count");
        return v;
    }();
    const auto ts = time_grid(tparts[0], tparts[1], static_cast<int>(tparts[2]));

    json doc;
    doc["theorem"] = th;
    std::optional<double> k_given;
    if (o.k != "auto") {
        try {
            std::size_t used = 0;
            k_given = std::stod(o.k, &used);
            if (used != o.k.size()) throw InputError("");
        } catch (const std::exception&) {
            throw InputError("--K expects a number or auto");
        }
    }
    auto linear_k = [&] {
        if (k_given) return *k_given;
        const auto m = min_linear_curvature(g, o.radius, o.jobs);
        return m.value;
    };
    auto nonlinear_k = [&](bool quadratic) -> std::optional<double> {
        if (k_given) return k_given;
        return certified_lower(g, o.radius, quadratic, o.jobs);
    };
    auto need_finite = [](std::optional<double> k) {
        if (!k) throw InputError("no certified curvature bound on weighted graphs; pass --K value");
        if (!std::isfinite(*k)) throw InputError("curvature bound is -inf; the estimate is vacuous");
        return *k;
    };

    const HeatOperator h(g);
    const auto fs = random_functions(g.size(), o.samples, o.seed);
    const auto pos = positive_functions(g.size(), o.samples, o.seed);
    std::vector<VerificationTrace> traces;
    if (th == "linear") {
        const double k = need_finite(linear_k());
        doc["K"] = k;
        traces.push_back(verify_linear_gradient_estimate(h, o.radius, k, fs, ts));
    } else if (th == "quadratic" || th == "exponential") {
        const double k = need_finite(nonlinear_k(th == "quadratic"));
        doc["K"] = k;
        traces.push_back(th == "quadratic" ? verify_quadratic_gradient_estimate(h, o.radius, k, pos, ts)
                                           : verify_exponential_gradient_estimate(h, o.radius, k, pos, ts));
    } else if (th == "decay") {
        DecayHypotheses hyp;
        const double kl = linear_k();
        if (std::isfinite(kl)) hyp.linear = kl;
        const auto kq = nonlinear_k(true);
        if (kq && std::isfinite(*kq)) hyp.quadratic = kq;
        doc["K"] = hyp.linear ? json(*hyp.linear) : json(nullptr);
        doc["K_quadratic"] = hyp.quadratic ? json(*hyp.quadratic) : json(nullptr);
        traces = verify_decay_bounds(h, o.radius, hyp, fs, pos, ts);
    } else if (th == "gmono") {
        const double k = need_finite(linear_k());
        doc["K"] = k;
        if (!(o.horizon > 0.0)) throw InputError("--t must be > 0");
        if (o.vertex >= 0) g.check(o.vertex);
        for (Vertex x = 0; x < g.size(); ++x)
            if (o.vertex < 0 || x == o.vertex) {
                auto tr = trace_G_monotone(h, o.radius, k, fs.front(), x, o.horizon, o.steps);
                tr.name += "@" + std::to_string(x);
                traces.push_back(std::move(tr));
            }
    } else if (th == "harnack") {
        HarnackOptions ho;
        ho.certify = o.certify;
        ho.seed = o.seed;
        traces.push_back(harnack_check(h, o.radius, ho));
    } else {
        throw InputError("unknown theorem '" + th + "'");
    }

    Report rep;
    json list = json::array();
    std::ostringstream csv;
    csv << "trace,grid,margin\n";
    bool any_applicable = false;
    for (const auto& t : traces) {
        list.push_back(trace_json(t));
        if (!t.pass) rep.failed = true;
        any_applicable = any_applicable || t.applicable;
        for (std::size_t i = 0; i < t.grid.size() && i < t.values.size(); ++i)
            csv << t.name << ',' << csv_real(t.grid[i]) << ',' << csv_real(t.values[i]) << '\n';
    }
    if (!any_applicable) rep.failed = true;
    doc["traces"] = std::move(list);
    doc["pass"] = !rep.failed;
    rep.doc = std::move(doc);
    rep.csv = csv.str();
    return rep;
}

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CURVGRAPH_SEED")) {
        try {
            std::size_t used = 0;
            const auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) return v;
        } catch (const std::exception&) {
        }
        throw InputError("CURVGRAPH_SEED must be a non-negative integer");
    }
    return 0;
}

void add_graph_flags(CLI::App* sub, Options& o) {
    sub->add_option("--graph", o.graph, "Graph JSON file")->required();
    sub->add_option("--radius", o.radius, "Radius R")->check(CLI::PositiveNumber);
}

void add_pair_flags(CLI::App* sub, Options& o) {
    sub->add_option("--pair", o.pair, "Ordered pair x,y");
    sub->add_flag("--all-pairs", o.all_pairs, "Every ordered pair with 0 < d(x,y) <= R");
    sub->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--jobs", o.jobs, "Threads for the pair sweep")->check(CLI::PositiveNumber);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Gradient-Ollivier curvature on graphs", "curvgraph"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    auto* gen = app.add_subcommand("gen", "Generate a graph");
    gen->add_option("--family", o.family, "hex_torus, square_torus, cycle, path, complete, star, tree, gnp")->required();
    gen->add_option("--size", o.size, "Size list, e.g. 6,6")->required();
    gen->add_option("--p", o.probability, "Edge probability (gnp)");
    gen->add_option("--seed", o.seed, "Seed (gnp)");

    auto* curv = app.add_subcommand("curvature", "Curvature of pairs");
    add_graph_flags(curv, o);
    add_pair_flags(curv, o);
    curv->add_option("--variant", o.variant, "linear, ollivier, quadratic or exponential");
    curv->add_option("--restarts", o.restarts, "Optimizer starts per branch")->check(CLI::PositiveNumber);
    curv->add_option("--seed", o.seed, "Optimizer seed");
    curv->add_flag("--lp-crosscheck", o.lp_crosscheck, "Solve the LP even when no transport map exists");

    auto* def = app.add_subcommand("defect", "Transport-map defect of pairs");
    add_graph_flags(def, o);
    add_pair_flags(def, o);

    auto* ver = app.add_subcommand("verify", "Check a heat-semigroup estimate numerically");
    add_graph_flags(ver, o);
    ver->add_option("--theorem", o.theorem, "linear, quadratic, exponential, decay, gmono or harnack")->required();
    ver->add_option("--K", o.k, "Curvature bound, or auto");
    ver->add_option("--seed", o.seed, "Seed for test functions");
    ver->add_option("--samples", o.samples, "Number of random test functions");
    ver->add_flag("--certify", o.certify, "Harnack: require zero defect on every pair first");
    ver->add_option("--csv", o.csv, "Also write (grid, margin) rows to this file");
    ver->add_option("--t", o.horizon, "gmono: final time");
    ver->add_option("--steps", o.steps, "gmono: grid steps")->check(CLI::PositiveNumber);
    ver->add_option("--vertex", o.vertex, "gmono: single vertex (default all)");
    ver->add_option("--times", o.times, "Time grid lo,hi,count");
    ver->add_option("--jobs", o.jobs, "Threads for the pair sweep")->check(CLI::PositiveNumber);

    auto* spec = app.add_subcommand("spectrum", "Eigenvalues of -Δ");
    spec->add_option("--graph", o.graph, "Graph JSON file")->required();
    spec->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    try {
        o.seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::CallForVersion&) {
        out << kToolVersion << '\n';
        return 0;
    } catch (const CLI::Success&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    json command = json::array();
    for (int i = 1; i < argc; ++i) command.push_back(argv[i]);

    try {
        if (gen->parsed()) {
            out << canonical_dump(cmd_gen(o).doc) << '\n';
            return 0;
        }
        const auto g = load_graph(o.graph);
        Report rep;
        std::string name;
        if (curv->parsed()) {
            rep = cmd_curvature(g, o);
            name = "curvature";
        } else if (def->parsed()) {
            rep = cmd_defect(g, o);
            name = "defect";
        } else if (ver->parsed()) {
            rep = cmd_verify(g, o);
            name = "verify";
        } else {
            rep = cmd_spectrum(g);
            name = "spectrum";
        }
        const int status = rep.failed ? 1 : 0;
        if (!o.csv.empty()) {
            std::ofstream f(o.csv);
            if (!f) throw InputError("cannot write " + o.csv);
            f << rep.csv;
        }
        if (o.format == "csv" && name != "verify") {
            out << rep.csv;
        } else {
            json report;
            report["tool"] = "curvgraph";
            report["version"] = kToolVersion;
            report["command"] = command;
            report["subcommand"] = name;
            report["graph"] = {{"fingerprint", graph_fingerprint(g)}, {"n", g.size()}, {"simple", g.is_simple()}};
            report["results"] = std::move(rep.doc);
            report["exit_status"] = status;
            out << canonical_dump(report) << '\n';
        }
        if (status != 0) err << "verification failed\n";
        return status;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    } catch (const InternalError& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace curvgraph
