#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "curvgraph/cli.hpp"
#include "curvgraph/json_io.hpp"

using namespace curvgraph;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome call(std::vector<std::string> args) {
    args.insert(args.begin(), "curvgraph");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "curvgraph_test_cli";
    std::filesystem::create_directories(dir);
    return (dir / name).string();
}

std::string write_file(const std::string& name, const std::string& text) {
    const auto path = scratch(name);
    std::ofstream(path) << text;
    return path;
}

std::string hex_file() {
    const auto gen = call({"gen", "--family", "hex_torus", "--size", "6,6"});
    REQUIRE(gen.code == 0);
    return write_file("hex.json", gen.out);
}

}  // namespace

TEST_CASE("gen round-trips through the loader") {
    const auto gen = call({"gen", "--family", "hex_torus", "--size", "6,6"});
    REQUIRE(gen.code == 0);
    const auto doc = nlohmann::json::parse(gen.out);
    CHECK(doc["n"] == 72);
    const auto g = graph_from_json(doc);
    CHECK(canonical_dump(graph_to_json(g)) + "\n" == gen.out);

    const auto gnp = call({"gen", "--family", "gnp", "--size", "10", "--p", "0.4", "--seed", "3"});
    CHECK(gnp.code == 0);
    CHECK(gnp.out == call({"gen", "--family", "gnp", "--size", "10", "--p", "0.4", "--seed", "3"}).out);
}

TEST_CASE("curvature csv on the hex torus is non-negative at R = 2") {
    const auto path = hex_file();
    const auto res = call({"curvature", "--variant", "linear", "--radius", "2", "--all-pairs", "--graph", path,
                           "--format", "csv"});
    REQUIRE(res.code == 0);
    std::istringstream in(res.out);
    std::string line;
    std::getline(in, line);
    CHECK(line == "x,y,R,variant,value,kind");
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        const auto value = std::stod(line.substr(0, line.rfind(',')).substr(line.find("linear,") + 7));
        CHECK(value >= -1e-9);
    }
    CHECK(rows == 72 * 9);
}

TEST_CASE("all-pairs enumerates both orientations") {
    const auto path = write_file("path3.json", R"({"n":3,"edges":[[0,1],[1,2]]})");
    const auto res = call({"defect", "--radius", "1", "--all-pairs", "--graph", path});
    REQUIRE(res.code == 0);
    const auto doc = nlohmann::json::parse(res.out);
    std::vector<std::pair<int, int>> pairs;
    for (const auto& r : doc["results"]) pairs.emplace_back(r["x"], r["y"]);
    CHECK(pairs == std::vector<std::pair<int, int>>{{0, 1}, {1, 0}, {1, 2}, {2, 1}});
    for (const auto& r : doc["results"]) {
        CHECK(r.contains("assignment"));
        CHECK(r.contains("hall_witness"));
        CHECK(r.contains("status"));
    }
}

TEST_CASE("nonlinear variants report lower, upper, gap and diagnostics") {
    const auto path = write_file("edge.json", R"({"n":2,"edges":[[0,1]]})");
    for (const char* v : {"quadratic", "exponential"}) {
        const auto res = call({"curvature", "--variant", v, "--pair", "0,1", "--graph", path, "--restarts", "2"});
        REQUIRE(res.code == 0);
        const auto r = nlohmann::json::parse(res.out)["results"][0];
        for (const char* key : {"lower", "upper", "gap", "diagnostics"}) CHECK(r.contains(key));
    }
}

TEST_CASE("verify exit codes") {
    const auto path = hex_file();
    CHECK(call({"verify", "--theorem", "harnack", "--radius", "2", "--graph", path}).code == 0);
    CHECK(call({"verify", "--theorem", "linear", "--radius", "1", "--graph", path, "--K", "5", "--samples", "3"}).code ==
          1);
    const auto csv = scratch("trace.csv");
    const auto res = call({"verify", "--theorem", "gmono", "--radius", "2", "--graph", path, "--K", "0", "--vertex",
                           "0", "--csv", csv});
    CHECK(res.code == 0);
    std::ifstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header == "trace,grid,margin");

    const auto star = write_file("star.json", R"({"n":4,"edges":[[0,1],[0,2],[0,3]]})");
    const auto vac = call({"verify", "--theorem", "linear", "--radius", "1", "--graph", star});
    CHECK(vac.code == 2);
    CHECK(call({"verify", "--theorem", "harnack", "--radius", "1", "--graph", star, "--certify"}).code == 1);
}

TEST_CASE("input errors exit 2 with one line") {
    const auto path = hex_file();
    const auto bad = write_file("bad.json", "{\"n\": 2, \"edges\": [[0, 0]]}");
    const auto junk = write_file("junk.json", "{not json");
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"curvature", "--graph", path, "--pair", "0,999"},
             {"curvature", "--graph", path, "--pair", "0,1", "--bogus"},
             {"curvature", "--graph", bad, "--pair", "0,1"},
             {"curvature", "--graph", junk, "--pair", "0,1"},
             {"curvature", "--graph", path},
             {"defect", "--graph", path, "--pair", "0,30"},
             {"verify", "--graph", path, "--theorem", "nope"},
             {"frobnicate"},
         }) {
        const auto res = call(args);
        CHECK(res.code == 2);
        CHECK(res.err.find('\n') == res.err.size() - 1);
    }
}

TEST_CASE("reports are byte-identical across runs") {
    const auto path = hex_file();
    const std::vector<std::string> args{"curvature", "--variant", "quadratic", "--pair", "0,1", "--graph", path,
                                        "--seed", "5"};
    CHECK(call(args).out == call(args).out);
    const std::vector<std::string> ver{"verify", "--theorem", "decay", "--radius", "2", "--graph", path, "--samples",
                                       "2", "--seed", "7"};
    const auto a = call(ver);
    CHECK(a.code == 0);
    CHECK(a.out == call(ver).out);
}

TEST_CASE("CURVGRAPH_SEED sets the default seed") {
    const auto path = hex_file();
    const std::vector<std::string> args{"verify", "--theorem", "linear", "--radius", "2", "--graph", path,
                                        "--K", "0", "--samples", "2", "--times", "0.1,1,3"};
    ::setenv("CURVGRAPH_SEED", "11", 1);
    const auto env = call(args);
    ::unsetenv("CURVGRAPH_SEED");
    auto explicit_args = args;
    explicit_args.insert(explicit_args.end(), {"--seed", "11"});
    const auto flag = call(explicit_args);
    const auto plain = call(args);
    CHECK(nlohmann::json::parse(env.out)["results"] == nlohmann::json::parse(flag.out)["results"]);
    CHECK(nlohmann::json::parse(env.out)["results"] != nlohmann::json::parse(plain.out)["results"]);
}
