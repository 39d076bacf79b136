#pragma once

#include "projpart/partition.hpp"

#include <cstdint>

namespace projpart {

struct SearchResult {
    std::uint64_t lower = 0;  // proven lower bound on the partition size
    std::uint64_t best = 0;   // size of the best partition found
    bool complete = false;    // search space exhausted, so best is optimal
    std::uint64_t nodes = 0;
    std::uint64_t budget = 0;
    std::size_t candidates = 0;  // distinct candidate parts
    Partition partition;         // the best partition found
};

/// Branch and bound for a smallest partition of (F_2P^2)^2 into parts
/// A x B with A u B on a line. Exact cover over the 49 pairs, branching on
/// the uncovered pair with the fewest candidates, seeded with the plane
/// construction. The lower bound is the volume bound until the search
/// finishes within `node_budget`.
SearchResult search_min_partition(std::uint64_t node_budget);

}  // namespace projpart
