#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <trustgraph/catalog.hpp>
#include <trustgraph/cli.hpp>

using namespace trustgraph;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string &name, const std::string &content) {
    auto path = std::filesystem::temp_directory_path() / ("trustgraph_cli_" + name);
    std::ofstream(path) << content;
    return path;
}

} // namespace

TEST_CASE("trustrank zero pattern on the top-down scenario") {
    Run r = run({"trustrank", "--scenario", "robustness-topdown", "--seeds", "A3,A4", "--format", "csv"});
    REQUIRE(r.code == 0);
    const PublishedColumn &col = scenario_graph("robustness-topdown").columns[2];
    std::istringstream in(r.out);
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::string node = line.substr(0, line.find(','));
        bool zero = line.substr(line.find(',') + 1) == "0.0000";
        CHECK_MESSAGE(zero == (col.values.at(node) == 0.0), node);
    }
}

TEST_CASE("validate") {
    auto bad = temp_file("bad.graph",
                         "orientation: bottom-up\n[nodes]\nA1 aspect\nM1 component\n[edges]\nA1 -> M1\n");
    Run r = run({"validate", bad.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("A1 -> M1") != std::string::npos);

    auto syntax = temp_file("syntax.graph", "orientation: free\n[nodes]\nA untyped\nB untyped\n[edges]\nA => B\n");
    r = run({"validate", syntax.string()});
    CHECK(r.code == 1);
    CHECK(r.err.find("line 6") != std::string::npos);

    r = run({"validate", "--scenario", "transparency-bottomup"});
    CHECK(r.code == 0);
    CHECK(r.out.find("14 nodes") != std::string::npos);
}

TEST_CASE("assess report") {
    Run r = run({"assess", "--scenario", "transparency-bottomup", "--seeds", "M3,M4,M5", "--format", "json"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["classifications"][0]["entries"].size() == 14);
}

TEST_CASE("assess with several seed sets and theta") {
    Run r = run({"assess", "--scenario", "robustness-topdown", "--seeds", "A3,A4", "--seeds", "A1", "--theta", "2"});
    REQUIRE(r.code == 0);
    auto doc = nlohmann::json::parse(r.out);
    CHECK(doc["seed_sets"].size() == 2);
    CHECK(doc["thresholds"]["dominance_ratio"].get<double>() == 2.0);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({"pagerank"}).code == 2);
    CHECK(run({"pagerank", "--scenario", "robustness-topdown", "--bogus"}).code == 2);
    CHECK(run({"pagerank", "--scenario", "robustness-topdown", "--alpha", "1.5"}).code == 2);
    CHECK(run({"pagerank", "--scenario", "nope"}).code == 2);
    CHECK(run({"pagerank", "--scenario", "robustness-topdown", "--format", "xml"}).code == 2);
    Run unknown_seed = run({"trustrank", "--scenario", "robustness-topdown", "--seeds", "A3,Q1"});
    CHECK(unknown_seed.code == 2);
    CHECK(unknown_seed.err.find("Q1") != std::string::npos);
    auto file = temp_file("both.graph", "orientation: free\n[nodes]\nA untyped\n");
    CHECK(run({"pagerank", file.string(), "--scenario", "robustness-topdown"}).code == 2);
}

TEST_CASE("strict convergence gate") {
    Run lax = run({"pagerank", "--scenario", "robustness-topdown", "--max-iter", "2"});
    CHECK(lax.code == 0);
    CHECK(lax.err.find("warning") != std::string::npos);
    CHECK_FALSE(lax.out.empty());
    Run strict = run({"pagerank", "--scenario", "robustness-topdown", "--max-iter", "2", "--strict"});
    CHECK(strict.code == 3);
}

TEST_CASE("output formats") {
    for (const char *fmt : {"csv", "json", "dot", "svg"}) {
        Run r = run({"pagerank", "--scenario", "robustness-topdown", "--format", fmt});
        CHECK(r.code == 0);
        CHECK_FALSE(r.out.empty());
    }
    Run svg = run({"assess", "--scenario", "robustness-topdown", "--seeds", "*", "--format", "svg"});
    CHECK(svg.code == 0);
    CHECK(svg.out.rfind("<svg", 0) == 0);
}

TEST_CASE("output file") {
    auto path = std::filesystem::temp_directory_path() / "trustgraph_cli_out.csv";
    std::filesystem::remove(path);
    Run r = run({"pagerank", "--scenario", "robustness-topdown", "-o", path.string()});
    CHECK(r.code == 0);
    CHECK(r.out.empty());
    CHECK(std::filesystem::file_size(path) > 0);
}

TEST_CASE("sweep") {
    Run csv = run({"sweep", "--scenario", "robustness-topdown", "--seeds", "A3,A4"});
    CHECK(csv.code == 0);
    CHECK(csv.out.find("add A2") != std::string::npos);
    Run json = run({"sweep", "--scenario", "robustness-topdown", "--seeds", "A3", "--format", "json"});
    CHECK(json.code == 0);
    CHECK(nlohmann::json::parse(json.out)["warnings"].size() == 1);
}

TEST_CASE("catalog") {
    Run all = run({"catalog"});
    CHECK(all.code == 0);
    CHECK(all.out.find("Accountability") != std::string::npos);
    Run one = run({"catalog", "--requirement", "transparency", "--format", "json"});
    CHECK(one.code == 0);
    CHECK(nlohmann::json::parse(one.out)[0]["aspects"].size() == 3);
    CHECK(run({"catalog", "--requirement", "nope"}).code == 2);
}

TEST_CASE("byte-reproducible") {
    std::vector<std::string> args{"assess", "--scenario", "robustness-topdown", "--seeds", "A1,A3,M5,M11"};
    CHECK(run(args).out == run(args).out);
}

TEST_CASE("timestamp from SOURCE_DATE_EPOCH") {
    setenv("SOURCE_DATE_EPOCH", "86400", 1);
    Run r = run({"assess", "--scenario", "transparency-bottomup", "--seeds", "M3"});
    unsetenv("SOURCE_DATE_EPOCH");
    CHECK(nlohmann::json::parse(r.out)["timestamp"] == "1970-01-02T00:00:00Z");
}

TEST_CASE("plain diagnostics off a terminal") {
    Run r = run({"pagerank", "--scenario", "nope"});
    CHECK(r.err.rfind("error: ", 0) == 0);
}

TEST_CASE("help exits cleanly") {
    Run r = run({"--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("trustrank") != std::string::npos);
}
