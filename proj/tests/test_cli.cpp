#include "catch_amalgamated.hpp"

#include <json.hpp>

#include <array>
#include <cstdio>
#include <string>
#include <sys/wait.h>

namespace {
struct Run {
    int status = -1;
    std::string out;
};

Run run(const std::string& args) {
    const std::string cmd = std::string(HYPERHET_CLI_PATH) + " " + args + " 2>/dev/null";
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
    const int st = pclose(pipe);
    r.status = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string fixture(const std::string& rel) { return std::string(HYPERHET_FIXTURES) + "/" + rel; }
} // namespace

TEST_CASE("census command", "[cli]") {
    const Run r = run("census " + fixture("hypergraphs/field_h1.json"));
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("robust_subspaces").size() == 3);
}

TEST_CASE("gh realization exit codes", "[cli]") {
    const Run ok = run("realize gh " + fixture("hypergraphs/uniform3_012.json") + " --homogeneous");
    CHECK(ok.status == 0);
    CHECK(nlohmann::json::parse(ok.out).at("construction") == "uniform-three");

    const Run no = run("realize gh " + fixture("hypergraphs/complete_undirected3.json"));
    CHECK(no.status == 2);
    CHECK(nlohmann::json::parse(no.out).at("reason") == "undirected-input-symmetry");

    const Run bad = run("realize gh " + fixture("hypergraphs/uniform3_012.json") + " --a 0.5");
    CHECK(bad.status == 1);
    CHECK(nlohmann::json::parse(bad.out).contains("error"));
}

TEST_CASE("field realization exit codes", "[cli]") {
    CHECK(run("realize field " + fixture("hypergraphs/complete_undirected3.json")).status == 2);
    const Run budget = run("realize field " + fixture("hypergraphs/field_h1.json") + " --max-draws 3");
    CHECK(budget.status == 1);
    CHECK(nlohmann::json::parse(budget.out).at("found") == false);
}

TEST_CASE("sweep and enumeration", "[cli]") {
    const Run s = run("uniform3 sweep");
    CHECK(s.status == 0);
    CHECK(nlohmann::json::parse(s.out).at("rows").size() == 20);
    CHECK(nlohmann::json::parse(run("uniform3 sweep --all").out).at("rows").size() == 125);

    const Run e = run("enumerate --n 3");
    CHECK(nlohmann::json::parse(e.out).at("count") == 49);
    CHECK(nlohmann::json::parse(run("enumerate --n 3 --max-order 3").out).at("count") == 42);
}

TEST_CASE("simulate output is deterministic", "[cli]") {
    const std::string args = "simulate " + fixture("systems/gh_uniform012.json") +
                             " --x0 0.3,0.4,0.5 --t 50 --log-coords --eq 1.8257418583505538,0,0"
                             " --eq 0,1.8257418583505538,0 --eq 0,0,1.8257418583505538 --no-states";
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    const auto j = nlohmann::json::parse(a.out);
    CHECK(j.contains("itinerary"));

    const Run csv = run("simulate " + fixture("systems/gh_uniform012.json") + " --x0 0.3,0.4,0.5 --t 1 --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.out.rfind("t,x1,x2,x3\n", 0) == 0);

    const Run bdf = run("simulate " + fixture("systems/gh_uniform012.json") + " --x0 0.3,0.4,0.5 --t 5 --method bdf --no-states");
    CHECK(bdf.status == 0);
    CHECK(run("simulate " + fixture("systems/gh_uniform012.json") + " --x0 0.3,0.4,0.5 --method rk4").status != 0);
}

TEST_CASE("classify command", "[cli]") {
    const Run r = run("classify " + fixture("systems/gh_uniform012.json"));
    CHECK(r.status == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("uniform_order") == 3);
    CHECK(j.at("directed") == true);
}

TEST_CASE("missing files are reported", "[cli]") {
    const Run r = run("census /nonexistent.json");
    CHECK(r.status == 1);
    CHECK(nlohmann::json::parse(r.out).contains("error"));
    CHECK(run("no-such-command").status != 0);
}
