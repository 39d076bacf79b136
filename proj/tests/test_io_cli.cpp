#include "doctest.h"
#include "test_support.hpp"

#include "projpart/bounds.hpp"
#include "projpart/error.hpp"
#include "projpart/io.hpp"
#include "projpart/search.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace projpart;
using testing::ipow;

namespace {

struct Run {
    int status = -1;
    std::string out;
};

Run run_cli(const std::string& args) {
    Run r;
    const std::string cmd = std::string(PROJPART_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t got = 0;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
    const int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "projpart_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("partition json round trip") {
    for (const Partition& p : {construct_plane_partition(3), construct_power_partition(2, 3, 2)}) {
        const io::json j = io::to_json(p);
        const Partition back = io::partition_from_json(j);
        CHECK(back.size() == p.size());
        CHECK(back.k == p.k);
        CHECK(verify(back).ok());
        CHECK(io::to_json(back) == j);
        CHECK(io::to_json(io::partition_from_json(io::json::parse(j.dump()))) == j);
    }
    CHECK_THROWS_AS(io::partition_from_json(io::json::parse(R"({"q": 6, "n": 2, "k": 2, "parts": []})")), Error);
    CHECK_THROWS_AS(io::partition_from_json(io::json::parse(R"({"q": 2})")), Error);
}

TEST_CASE("flats accept indices or coordinates") {
    const SpacePtr s = Space::make(3, 2);
    const Flat p = io::flat_from_json(s, io::json(5));
    CHECK(p == Flat::point(s, 5));
    const auto c = s->coords(5);
    io::json rows = io::json::array();
    rows.push_back(std::vector<int>(c.begin(), c.end()));
    CHECK(io::flat_from_json(s, rows) == p);
    const Flat line = enumerate_flats(s, 1)[4];
    CHECK(io::flat_from_json(s, io::to_json(line)) == line);
}

TEST_CASE("trace json") {
    const SpacePtr s = Space::make(2, 2);
    const Instance inst{s, {1, 4}};
    const DecisionTrace t = solve(inst);
    const io::json j = io::to_json(t);
    REQUIRE(j["queries"].size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        const io::json& a = j["queries"][i]["answer"];
        if (t.queries[i].answer.yes) {
            CHECK(a == "YES");
        } else {
            CHECK(a["NO"] == t.queries[i].answer.index);
        }
    }
    CHECK(j.contains("output"));
}

TEST_CASE("csv summary") {
    const std::string csv = io::partition_csv(construct_plane_partition(2));
    CHECK(csv.rfind("part,pattern,size\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 22);
}

TEST_CASE("bounds") {
    const auto g = general_lower_bound(5, 3);
    REQUIRE(g);
    CHECK(g->num == -9375);
    CHECK(g->den == 1);
    CHECK(!general_lower_bound(2, 2));
    // q^6 (1 - (1/q)((q+1)/(q-2))^3) at q = 8: 262144 - 32768 * 27 / 8
    const auto g8 = general_lower_bound(8, 3);
    REQUIRE(g8);
    CHECK(g8->num == 262144 - 110592);
    CHECK(Rational::make(6, -4).str() == "-3/2");
    CHECK(!upper_estimate(4, 3));

    const BoundsTable t = bounds_table(5, 3, 3);
    CHECK(t.points == 156);
    REQUIRE(t.total);
    CHECK(*t.total == 156ULL * 156 * 156);
    CHECK(t.flats == count_flats(3, 2, 5));
    REQUIRE(t.construction);
    CHECK(*t.construction == 6ULL * 31 * 156);
    CHECK(t.dependent_lower.num == 1);
    CHECK(t.dependent_lower.den == 26);
    CHECK(t.dependent_upper.den == 20);
    CHECK_THROWS_AS(bounds_table(5, 3, 5), Error);
}

TEST_CASE("bounded search") {
    const SearchResult tiny = search_min_partition(10);
    CHECK(!tiny.complete);
    CHECK(tiny.lower == 6);
    CHECK(tiny.best <= 21);
    CHECK(verify(tiny.partition).ok());
    CHECK(tiny.partition.size() == tiny.best);

    const SearchResult r = search_min_partition(100'000);
    CHECK(r.candidates == 329);
    CHECK(r.best < 21);
    CHECK(r.best >= r.lower);
    CHECK(verify(r.partition).ok());
    CHECK(r.partition.size() == r.best);
}

TEST_CASE("cli construct and verify") {
    const auto part = scratch("plane3.json");
    const Run c = run_cli("construct --q 3 --n 2 --kind plane --partition-out " + part.string());
    CHECK(c.status == 0);
    const io::json rep = io::json::parse(c.out);
    CHECK(rep["result"]["size"] == 52);
    CHECK(rep["result"]["pass"] == true);
    CHECK(rep["tool"] == "projpart");
    CHECK(run_cli("verify --in " + part.string()).status == 0);

    io::json broken = io::json::parse(std::ifstream(part));
    broken["parts"].erase(broken["parts"].size() - 1);
    const auto bad = scratch("plane3_broken.json");
    std::ofstream(bad) << broken.dump();
    const Run v = run_cli("verify --in " + bad.string());
    CHECK(v.status == 1);
    CHECK(io::json::parse(v.out)["result"]["verify"]["covering"] == false);
}

TEST_CASE("cli errors are machine readable") {
    const Run r = run_cli("construct --q 6 --n 2");
    CHECK(r.status == 2);
    const io::json e = io::json::parse(r.out);
    CHECK(e["error"] == "NotPrimePower");
    CHECK(run_cli("dependent --q 3 --n 3 --mode sampled").status == 2);
    CHECK(run_cli("construct --q").status == 2);
    CHECK(run_cli("verify --in /nonexistent/file.json").status == 2);
}

TEST_CASE("cli reports do not depend on the worker count") {
    for (const std::string args :
         {"dependent --q 3 --n 3", "dspan sweep --q 2 --n 3", "lemma surgery --q 3 --n 3 --samples 50 --seed 4",
          "lemma lines --q 3 --n 3 --mode sampled --samples 200 --seed 3", "bounds --q 3,5 --n 2,3 --format csv"}) {
        const Run one = run_cli("--workers 1 " + args);
        const Run many = run_cli("--workers 4 " + args);
        CAPTURE(args);
        CHECK(one.status == 0);
        CHECK(one.out == many.out);
        CHECK(one.out == run_cli("--workers 1 " + args).out);
    }
}

TEST_CASE("cli csv output") {
    const Run r = run_cli("--format csv dspan bench --configs 2x2,2x3 --samples 100 --seed 1");
    CHECK(r.status == 0);
    CHECK(r.out.rfind("q,n,mean_queries,max_queries,bound", 0) == 0);
    CHECK(run_cli("--format csv lemma gp --n 3").status == 2);
}
