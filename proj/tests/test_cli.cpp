#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "genericlab/cli.hpp"
#include "genericlab/json_io.hpp"

using namespace genericlab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("genericlab_test_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::pair<int, std::string> run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str() + err.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
}

const char* kDirac0 = R"({"support":[{"kind":"ep","pre":[],"per":[0]}],"weights":["1"]})";
const char* kDirac1 = R"({"support":[{"kind":"ep","pre":[],"per":[1]}],"weights":["1"]})";
const char* kHalfHalf =
    R"({"support":[{"kind":"ep","pre":[],"per":[0]},{"kind":"ep","pre":[],"per":[1]}],"weights":["1/2","1/2"]})";

} // namespace

TEST_CASE("prohorov subcommand formats rational and decimal") {
    TempDir dir;
    write(dir.file("a.json"), kDirac0);
    write(dir.file("b.json"), kDirac0);
    auto [code, text] = run({"prohorov", dir.file("a.json"), dir.file("b.json")});
    CHECK(code == 0);
    CHECK(text == "0 (0.0)\n");

    write(dir.file("c.json"), kHalfHalf);
    auto [code2, text2] = run({"prohorov", dir.file("c.json"), dir.file("a.json")});
    CHECK(code2 == 0);
    CHECK(text2 == "1/2 (0.500000000000)\n");

    auto [code3, text3] = run({"prohorov", "--oracle", dir.file("c.json"), dir.file("a.json")});
    CHECK(code3 == 0);
    CHECK(text3 == text2);
}

TEST_CASE("exit codes distinguish parse and precondition failures") {
    TempDir dir;
    auto [missing, _] = run({"prohorov", dir.file("nope.json"), dir.file("nope.json")});
    CHECK(missing == 2);

    write(dir.file("bad.json"), "{not json");
    write(dir.file("a.json"), kDirac0);
    auto [badjson, _2] = run({"prohorov", dir.file("bad.json"), dir.file("a.json")});
    CHECK(badjson == 2);

    write(dir.file("badw.json"),
          R"({"support":[{"kind":"ep","pre":[],"per":[0]}],"weights":["1/2"]})");
    auto [badw, _3] = run({"prohorov", dir.file("badw.json"), dir.file("a.json")});
    CHECK(badw == 1);

    auto [usage, _4] = run({"prohorov"});
    CHECK(usage == 2);
}

TEST_CASE("oxtoby words prints the staged display") {
    auto [code, text] = run({"oxtoby", "--s", "3,4", "--depth", "2", "words"});
    CHECK(code == 0);
    CHECK(text.find("W_1 = 0xx\n") != std::string::npos);
    CHECK(text.find("W_2 = 0110xx0xx0xx\n") != std::string::npos);
}

TEST_CASE("trace subcommand verifies the exact concatenation by default") {
    TempDir dir;
    write(dir.file("spec.json"),
          R"([[{"kind":"ep","pre":[],"per":[0]},5],[{"kind":"ep","pre":[],"per":[1]},5]])");
    auto [code, text] = run({"trace", dir.file("spec.json"), "--eps", "1/4", "--d1", "0", "--d2",
                             "0"});
    CHECK(code == 0);
    CHECK(text.find("\"verdict\": true") != std::string::npos);
}

TEST_CASE("identical configurations produce byte-identical artifacts") {
    TempDir dir;
    write(dir.file("mu.json"), kHalfHalf);
    write(dir.file("nu.json"), kDirac1);
    write(dir.file("mubar.json"), kDirac0);
    write(dir.file("measures.json"), std::string("[") + kHalfHalf + "]");
    write(dir.file("phi.json"), R"({"window":1,"table":{"1":"1"},"default":"0"})");

    auto run_all = [&](const std::string& tag) {
        std::vector<std::string> outputs;
        run({"generic-build", "--measures", dir.file("measures.json"), "--eps", "1/4",
             "--stages", "2", "--cert-out", dir.file(tag + "_cert.csv")});
        outputs.push_back(slurp(dir.file(tag + "_cert.csv")));
        run({"emp-series", "--point", dir.file("point.json"), "--targets",
             dir.file("targets.json"), "--checkpoints", "2,4,8", "--out",
             dir.file(tag + "_emp.csv")});
        outputs.push_back(slurp(dir.file(tag + "_emp.csv")));
        run({"oxtoby", "--s", "4,8,16", "--depth", "3", "stats", "--out",
             dir.file(tag + "_ox.csv")});
        outputs.push_back(slurp(dir.file(tag + "_ox.csv")));
        run({"phi-reduce", "--beta", "1,1", "--breakpoints", "1,2,3", "--nu", dir.file("nu.json"),
             "--mu", dir.file("mubar.json"), "--phi", dir.file("phi.json"), "--eps", "1/4",
             "--stages", "3", "--out", dir.file(tag + "_phi.csv"), "--series-out",
             dir.file(tag + "_phis.csv")});
        outputs.push_back(slurp(dir.file(tag + "_phi.csv")));
        outputs.push_back(slurp(dir.file(tag + "_phis.csv")));
        return outputs;
    };
    write(dir.file("point.json"), R"({"kind":"ep","pre":[],"per":[0,1]})");
    write(dir.file("targets.json"), std::string("[") + kDirac0 + "," + kDirac1 + "]");

    auto first = run_all("a");
    auto second = run_all("b");
    REQUIRE(first.size() == second.size());
    for (std::size_t i = 0; i < first.size(); ++i) {
        CHECK(first[i] == second[i]);
        CHECK(!first[i].empty());
    }
}

TEST_CASE("tree-point emits a schedule with distances") {
    TempDir dir;
    write(dir.file("tree.json"), R"([[],[0]])");
    auto [code, text] = run({"tree-point", dir.file("tree.json"), "--stages", "4"});
    CHECK(code == 0);
    CHECK(text.find("stage,a,b,length,end,node_block") != std::string::npos);
    CHECK(text.find("true") != std::string::npos);
}
