#pragma once

#include "projpart/partition.hpp"
#include "projpart/projgeom.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace projpart {

/// An exact fraction count / total of tuples.
struct DependentCount {
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    std::string mode = "exhaustive";  // or "sampled"
    std::uint64_t sample_size = 0;
    std::uint64_t seed = 0;

    double fraction() const { return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total); }
};

/// a/b < c/d on exact fractions.
bool fraction_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d);

struct CountOptions {
    std::uint64_t exact_limit = 1'000'000'000;
    bool allow_sampling = false;
    std::uint64_t sample_size = 100'000;
    std::uint64_t seed = 1;
};

/// Dependent tuples in A_1 x ... x A_k. Exhaustive counting walks the
/// independent prefixes only: once a prefix spans S, every point of the next
/// factor inside S contributes all completions at once. Sharded by the
/// first factor. Throws TooLargeForExact above the exact limit unless
/// sampling is allowed.
DependentCount count_dependent(const SpacePtr& space, std::span<const PointSet> factors, const CountOptions& options = {});
DependentCount count_dependent(const ProductPart& part, const CountOptions& options = {});

// ------------------------------------------------------------ Sylvester-Gallai

/// No k+1 of the lines lie in a k-flat, for k = 1..n-1. Throws
/// InvalidArgument for inputs that are not at most n+1 lines.
bool is_general_position(std::span<const Flat> lines);

struct SylvesterResult {
    std::size_t index = 0;          // position of the chosen line in the input
    PointSet intersections;         // points where it meets the other lines
    std::vector<std::size_t> chain; // the top-level chain, input positions
    std::vector<int> chain_dims;    // dim span of each chain prefix
};

/// Finds a line meeting the others in at most two points by growing a chain
/// of lines each meeting an earlier one, recursing into the chain when it
/// stalls. Throws NotGeneralPosition.
SylvesterResult sylvester_line(std::span<const Flat> lines);

// ------------------------------------------------------------ almost-lines

/// Every line and every line minus one of its points.
std::vector<Factor> almost_lines(const SpacePtr& space);

struct LinesBoundReport {
    std::uint64_t count = 0;
    std::uint64_t total = 0;
    std::uint64_t bound = 0;  // (q-2)^{n-1} (q-1)
    bool holds = false;
};

/// Exact dependent count of a product of n+1 almost-lines of F_qP^n against
/// (q-2)^{n-1}(q-1). Throws QTooSmall for q < 3.
LinesBoundReport verify_lines_bound(const SpacePtr& space, std::span<const Factor> family);

std::uint64_t lines_bound(int q, int n);

// ------------------------------------------------------------ surgery

struct SurgeryResult {
    ProductPart reduced;
    Flat by;                       // S = span of the leading points
    int leading_points = 0;        // k
    bool dependent_prefix = false; // then the fraction is 1 and nothing changes
    DependentCount before;
    DependentCount after;
    std::vector<std::string> choices;  // per replaced factor: flat | complete | remove | unchanged (k = 0)
};

/// Replaces R_{k+1}, ..., R_n of p_1 x ... x p_k x R_{k+1} x ... x R_n by
/// unions of classes mod S = span(p_1..p_k) without raising the dependent
/// fraction. k is the number of leading single-point factors; every other
/// factor must be an almost-flat of dimension k+1 (BadDims).
SurgeryResult surgery_reduce(const ProductPart& part);

// ------------------------------------------------------------ Graham-Pollak

/// Rank over the rationals of a 0/1 matrix (row-major, rows x cols).
int rational_rank(std::span<const int> matrix, int rows, int cols);

struct BicliqueResult {
    int minimum = 0;
    std::uint64_t nodes = 0;
    bool rank_pruning = true;
};

/// Smallest partition of the edges of K_{n,n} minus a perfect matching into
/// complete bipartite subgraphs, by exhaustive branch and bound on the
/// least uncovered edge. Throws TooLarge for n > 5.
BicliqueResult min_biclique_partition(int n, bool rank_pruning = true);

// ------------------------------------------------------------ almost-flat lemma

/// (1/(q+1)) ((q-2)/(q+1))^{n-1} as numerator / denominator.
std::pair<std::uint64_t, std::uint64_t> almostflat_bound(int q, int n);

struct AlmostFlatCheck {
    DependentCount direct;
    std::uint64_t pipeline_count = 0;  // smallest fraction over the final line products
    std::uint64_t pipeline_total = 1;
    std::uint64_t bound_num = 0;
    std::uint64_t bound_den = 1;
    std::size_t refined_parts = 0;
    std::size_t line_products = 0;
    bool direct_holds = false;
    bool pipeline_holds = false;
    bool pipeline_below_direct = false;  // pipeline minimum <= direct fraction
    bool quotient_preserves_fraction = true;
    bool surgery_monotone = true;
    bool lines_lemma_holds = true;

    bool ok() const {
        return direct_holds && pipeline_holds && pipeline_below_direct && quotient_preserves_fraction && surgery_monotone &&
               lines_lemma_holds;
    }
};

/// Runs refinement, surgery, quotient and line splitting on a product of n
/// almost-flats of F_qP^{n-1} whose pattern is not dominated by
/// (0, ..., n-1), and compares both the brute-force fraction and the
/// pipeline's lower estimate with the bound. Throws QTooSmall,
/// AlreadyDominated, DimOutOfRange.
AlmostFlatCheck almostflat_fraction_check(const ProductPart& part);

}  // namespace projpart
