#pragma once

#include "projpart/partition.hpp"
#include "projpart/projgeom.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace projpart {

/// n hidden points of F_qP^n, repeats allowed.
struct Instance {
    SpacePtr space;
    std::vector<std::size_t> points;
};

/// YES, or NO(index) with index the least 1-based position of a point
/// outside the query.
struct OracleAnswer {
    bool yes = true;
    int index = 0;

    static OracleAnswer accept() { return {true, 0}; }
    static OracleAnswer reject(int i) { return {false, i}; }
    std::string str() const { return yes ? "YES" : "NO(" + std::to_string(index) + ")"; }
    friend bool operator==(const OracleAnswer&, const OracleAnswer&) = default;
};

/// Throws BadQueryDim unless x is an (n-1)-flat, AmbientMismatch for a flat
/// of another space, InvalidArgument for an instance of the wrong length.
OracleAnswer oracle(const Instance& inst, const Flat& x);

struct QueryRecord {
    Flat query;
    OracleAnswer answer;
};

struct DecisionTrace {
    SpacePtr space;
    std::vector<QueryRecord> queries;
    std::optional<Flat> output;

    std::size_t size() const { return queries.size(); }
    /// The answer sequence; it determines the whole trace of a deterministic
    /// solver.
    std::string key() const;
    int no_count(int index) const;
};

using OracleFn = std::function<OracleAnswer(const Flat&)>;

/// Finds an (n-1)-flat containing every hidden point, seeing the instance
/// only through `ask`. The points are located one at a time modulo the span
/// S of those found so far, with hyperplanes through S; the span is then
/// extended by least points and confirmed by a final query. At most
/// n (1 + n (q - 1)) + 1 <= n^2 (q + 1) + 1 queries.
DecisionTrace solve(const SpacePtr& space, const OracleFn& ask);
DecisionTrace solve(const Instance& inst);

/// n^2 (q + 1) + 1.
std::uint64_t query_bound(int q, int n);

/// Instances consistent with the trace, as n factors. Throws
/// InconsistentTrace when the set is empty.
std::vector<Factor> induced_part(const DecisionTrace& trace);

struct LeafStructure {
    std::uint64_t instances = 0;
    std::size_t leaves = 0;
    std::size_t distinct_traces = 0;
    std::size_t max_queries = 0;
    double mean_queries = 0;
    std::size_t max_holes = 0;      // over all leaf factors
    bool holes_within_trace = true; // holes of factor j <= NO(j) answers <= h
    bool solver_correct = true;     // every output contains its instance
    bool inside_output = true;      // every part lies in L^n for its output L
    bool all_almost_flat = true;
    std::vector<std::string> non_almost_flat;  // "leaf i factor j", first few
    std::optional<bool> general_bound_holds;   // when all factors are almost-flats and q >= 3
    std::map<std::uint64_t, std::size_t> leaf_sizes;  // part size -> leaves
    VerifyReport verify;
};

struct LeafPartition {
    Partition partition;
    std::vector<DecisionTrace> traces;  // one per part
    LeafStructure structure;
};

inline constexpr std::uint64_t max_leaf_instances = 1'000'000;

/// Runs solve on every instance, groups instances by trace and checks the
/// induced parts. Throws TooLarge above max_leaf_instances.
LeafPartition leaf_partition(int q, int n);

struct BenchRow {
    int q = 0;
    int n = 0;
    std::uint64_t instances = 0;
    bool exhaustive = false;
    double mean_queries = 0;
    std::size_t max_queries = 0;
    std::uint64_t bound = 0;
    double ratio = 0;  // mean / (q n^2)
    bool correct = true;
};

/// Query counts over all instances when there are at most `samples`, else
/// over `samples` seeded random ones.
BenchRow bench(int q, int n, std::uint64_t samples, std::uint64_t seed);

}  // namespace projpart
