#include "doctest.h"
#include "test_support.hpp"

#include "projpart/dspan.hpp"
#include "projpart/error.hpp"

#include <map>
#include <random>
#include <set>

using namespace projpart;
using testing::ipow;

TEST_CASE("oracle answers") {
    const SpacePtr s = Space::make(2, 2);
    const auto lines = enumerate_flats(s, 1);
    const Flat x = lines[0];
    const auto in = x.points().members();
    std::size_t out = 0;
    while (x.contains(out)) ++out;
    CHECK(oracle({s, {in[0], in[1]}}, x) == OracleAnswer::accept());
    CHECK(oracle({s, {out, in[0]}}, x) == OracleAnswer::reject(1));
    CHECK(oracle({s, {out, out}}, x) == OracleAnswer::reject(1));
    CHECK(oracle({s, {in[2], out}}, x) == OracleAnswer::reject(2));
    const Flat through = span(s, std::vector<std::size_t>{in[0], out});
    CHECK(oracle({s, {in[0], out}}, through).yes);
    CHECK(oracle({s, {in[0], out}}, through) == oracle({s, {in[0], out}}, through));

    CHECK_THROWS_AS(oracle({s, {0, 1}}, Flat::full(s)), Error);
    CHECK_THROWS_AS(oracle({s, {0}}, x), Error);
    CHECK_THROWS_AS(oracle({Space::make(3, 2), {0, 1}}, x), Error);
}

TEST_CASE("solver is correct and within the query budget") {
    for (auto [q, n] : {std::pair{2, 2}, {2, 3}, {3, 2}, {3, 3}, {4, 3}, {5, 3}, {3, 4}, {2, 5}}) {
        const SpacePtr s = Space::make(q, n);
        std::mt19937_64 rng(static_cast<std::uint64_t>(q * 100 + n));
        const std::uint64_t ceiling = static_cast<std::uint64_t>(n) * (n + 1) * (q + 1) + n;
        CHECK(query_bound(q, n) == static_cast<std::uint64_t>(n) * n * (q + 1) + 1);
        CHECK(query_bound(q, n) <= ceiling);
        bool all_ok = true;
        for (int trial = 0; trial < 10000; ++trial) {
            Instance inst{s, {}};
            for (int i = 0; i < n; ++i) inst.points.push_back(rng() % s->num_points());
            const DecisionTrace t = solve(inst);
            bool ok = t.output.has_value() && t.output->dim() == n - 1 && t.size() <= query_bound(q, n);
            for (std::size_t p : inst.points) ok = ok && t.output->contains(p);
            for (const QueryRecord& r : t.queries) ok = ok && oracle(inst, r.query) == r.answer;
            ok = ok && !t.queries.empty() && t.queries.back().answer.yes && t.queries.back().query == *t.output;
            all_ok = all_ok && ok;
        }
        CAPTURE(q);
        CAPTURE(n);
        CHECK(all_ok);
    }
}

TEST_CASE("degenerate instances") {
    const SpacePtr s = Space::make(3, 3);
    for (std::size_t p = 0; p < s->num_points(); p += 7) {
        const Instance inst{s, {p, p, p}};
        const DecisionTrace t = solve(inst);
        REQUIRE(t.output);
        CHECK(t.output->contains(p));
        CHECK(oracle(inst, *t.output).yes);
    }
}

TEST_CASE("induced part base cases") {
    const SpacePtr s = Space::make(2, 2);
    DecisionTrace empty{s, {}, std::nullopt};
    const auto full = induced_part(empty);
    REQUIRE(full.size() == 2);
    for (const Factor& f : full) CHECK(f.points() == s->full_set());

    const Flat x = enumerate_flats(s, 1)[2];
    DecisionTrace yes{s, {{x, OracleAnswer::accept()}}, x};
    for (const Factor& f : induced_part(yes)) CHECK(f.points() == x.points());

    DecisionTrace bad{s, {{x, OracleAnswer::accept()}, {x, OracleAnswer::reject(1)}}, std::nullopt};
    CHECK_THROWS_AS(induced_part(bad), Error);
}

TEST_CASE("induced parts equal the consistent instances") {
    for (auto [q, n] : {std::pair{2, 2}, {3, 2}, {2, 3}}) {
        const SpacePtr s = Space::make(q, n);
        const std::size_t np = s->num_points();
        std::vector<Instance> all;
        std::vector<std::vector<std::size_t>> members(n);
        for (auto& m : members)
            for (std::size_t p = 0; p < np; ++p) m.push_back(p);
        testing::for_each_tuple(members, [&](const std::vector<std::size_t>& t) { all.push_back({s, t}); });
        CHECK(all.size() == ipow(np, n));

        std::map<std::string, DecisionTrace> leaves;
        for (const Instance& inst : all) {
            DecisionTrace t = solve(inst);
            leaves.emplace(t.key(), std::move(t));
        }
        std::uint64_t covered = 0;
        for (const auto& [key, trace] : leaves) {
            std::set<std::vector<std::size_t>> consistent;
            for (const Instance& inst : all) {
                bool same = true;
                for (const QueryRecord& r : trace.queries) same = same && oracle(inst, r.query) == r.answer;
                if (same) consistent.insert(inst.points);
            }
            const auto part = induced_part(trace);
            std::vector<std::vector<std::size_t>> pm;
            for (const Factor& f : part) {
                pm.push_back(f.points().members());
                int holes = static_cast<int>(f.holes().size());
                CHECK(holes <= static_cast<int>(trace.size()));
            }
            std::set<std::vector<std::size_t>> got;
            testing::for_each_tuple(pm, [&](const std::vector<std::size_t>& t) { got.insert(t); });
            CHECK(got == consistent);
            covered += got.size();
        }
        CHECK(covered == all.size());
    }
}

TEST_CASE("leaf partition structure") {
    const LeafPartition lp = leaf_partition(2, 2);
    const LeafStructure& st = lp.structure;
    CHECK(st.instances == 49);
    CHECK(st.verify.ok());
    CHECK(st.solver_correct);
    CHECK(st.inside_output);
    CHECK(st.holes_within_trace);
    CHECK(st.leaves == st.distinct_traces);
    CHECK(lp.partition.size() == st.leaves);
    std::size_t by_size = 0;
    std::uint64_t mass = 0;
    for (const auto& [size, count] : st.leaf_sizes) {
        by_size += count;
        mass += size * count;
    }
    CHECK(by_size == st.leaves);
    CHECK(mass == 49);
    CHECK_THROWS_AS(leaf_partition(3, 4), Error);
}

TEST_CASE("bench is seeded and exhaustive when small") {
    const BenchRow small = bench(2, 2, 1000, 1);
    CHECK(small.exhaustive);
    CHECK(small.instances == 49);
    const BenchRow a = bench(3, 4, 500, 7), b = bench(3, 4, 500, 7);
    CHECK(!a.exhaustive);
    CHECK(a.mean_queries == b.mean_queries);
    CHECK(a.max_queries == b.max_queries);
    CHECK(a.correct);
    CHECK(a.ratio == doctest::Approx(a.mean_queries / (3.0 * 16)));
}
