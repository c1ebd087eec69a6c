#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "hmt/cli.hpp"
#include "hmt/errors.hpp"

using namespace hmt;
using json = nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::size_t count_of(const std::string& s, const std::string& needle) {
    std::size_t n = 0;
    for (auto p = s.find(needle); p != std::string::npos; p = s.find(needle, p + 1)) ++n;
    return n;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("corpus contract") {
    auto c = corpus();
    for (const char* name : {"tate", "a1hat", "triangle", "rank2", "orbifold"}) CHECK(corpus_entry(name).has_value());
    CHECK(corpus_entry("tate")->torus.k() == 0);
    for (const auto& d : c) {
        auto r = cli({"generic", d.name});
        INFO(d.name);
        CHECK(r.code == 0);
        CHECK((!d.singular || json::parse(r.out)["result"]["generic"] == false));
    }
    auto ch = json::parse(cli({"chambers", "a1hat"}).out);
    CHECK(ch["result"]["count"] == 2);
}

TEST_CASE("bundled data files mirror the corpus") {
    for (const auto& d : corpus()) {
        std::ifstream in(std::string(HMT_DATA_DIR) + "/" + d.name + ".json");
        REQUIRE(in.good());
        json j = json::parse(in);
        CHECK(j == to_json(d));
        auto back = dataset_from_json(j);
        CHECK(to_json(back) == j);
    }
}

TEST_CASE("schema validation") {
    json good = to_json(*corpus_entry("a1hat"));
    auto bad = good;
    bad["schema"] = "dataset/2";
    CHECK_THROWS_AS(dataset_from_json(bad), SchemaError);
    bad = good;
    bad["extra"] = 1;
    CHECK_THROWS_AS(dataset_from_json(bad), SchemaError);
    bad = good;
    bad["parameter"]["gammaTilde"] = json::array();
    CHECK_THROWS_AS(dataset_from_json(bad), SchemaError);
    bad = good;
    bad["torus"]["columns"] = json::array({json::array({2, 2})});
    CHECK_THROWS_AS(dataset_from_json(bad), SchemaError);
    bad = good;
    bad["options"]["window"]["lower"] = json::array({"2"});
    CHECK_THROWS_AS(dataset_from_json(bad), SchemaError);
    bad = good;
    bad["options"]["cutoff"] = -1;
    CHECK_THROWS_AS(dataset_from_json(bad), SchemaError);
}

TEST_CASE("worked examples through the command line") {
    auto t = cli({"chambers", std::string(HMT_DATA_DIR) + "/tate.json"});
    CHECK(t.code == 0);
    CHECK(json::parse(t.out)["result"]["count"] == 1);
    auto q = cli({"quiver", "--format", "dot", "a1hat.json"});
    CHECK(q.code == 0);
    CHECK(count_of(q.out, "[label=\"c") == 2);
    CHECK(count_of(q.out, "style=dashed") == 2);
    auto all = cli({"all", "--cutoff", "3", "triangle.json"});
    CHECK(all.code == 0);
    auto rep = json::parse(all.out);
    CHECK(rep["status"] == "pass");
    for (const char* s : {"circuits", "generic", "chambers", "quiver", "algebra", "oracle", "completion", "schober"})
        CHECK(rep["sections"][s]["status"] == "pass");
}

TEST_CASE("exit codes") {
    CHECK(cli({}).code == exit_code::usage);
    CHECK(cli({"frobnicate", "a1hat"}).code == exit_code::usage);
    CHECK(cli({"chambers"}).code == exit_code::usage);
    CHECK(cli({"chambers", "no-such-dataset"}).code == exit_code::usage);
    CHECK(cli({"circuits", "--format", "dot", "a1hat"}).code == exit_code::usage);
    CHECK(cli({"quiver", "--format", "yaml", "a1hat"}).code == exit_code::usage);
    CHECK(cli({"chambers", "a1hat_singular"}).code == exit_code::usage);
    CHECK(cli({"all", "a1hat_singular", "--order", "3", "--cutoff", "1"}).code == exit_code::ok);
    CHECK(cli({"--help"}).code == exit_code::ok);
}

TEST_CASE("deterministic output") {
    auto a = cli({"schober", "a1hat", "--cutoff", "2"});
    setenv("HML_THREADS", "3", 1);
    CHECK(thread_budget() == 3);
    auto b = cli({"schober", "a1hat", "--cutoff", "2"});
    unsetenv("HML_THREADS");
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(cli({"algebra", "orbifold", "--format", "table"}).out == cli({"algebra", "orbifold", "--format", "table"}).out);
}

}
