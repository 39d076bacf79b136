#pragma once

#include "projpart/projgeom.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace projpart {

/// A flat minus a union of flats: base \ (holes[0] u ... u holes[h-1]).
/// The point set is never empty.
class Factor {
public:
    /// Throws InvalidArgument when the resulting set is empty.
    explicit Factor(Flat base, std::vector<Flat> holes = {});
    /// Returns nothing when the set would be empty.
    static std::optional<Factor> try_make(Flat base, std::vector<Flat> holes = {});

    /// Represents an arbitrary nonempty set: base = span(set), then a single
    /// hole when the complement in the base is a flat, else one hole per
    /// missing point.
    static Factor from_points(const SpacePtr& space, const PointSet& set);

    const Flat& base() const noexcept { return base_; }
    const std::vector<Flat>& holes() const noexcept { return holes_; }
    const PointSet& points() const noexcept { return points_; }
    const SpacePtr& space() const noexcept { return base_.space(); }
    std::uint64_t size() const noexcept { return size_; }
    /// Dimension of the smallest flat containing the points.
    int dim() const noexcept { return dim_; }

    bool is_flat() const noexcept { return points_ == base_.points(); }

    struct AlmostFlat {
        Flat base;
        std::optional<Flat> hole;  // proper subflat of base, or none for a flat
    };
    /// Canonical almost-flat form of the point set, if it is one.
    std::optional<AlmostFlat> as_almost_flat() const;

private:
    Flat base_;
    std::vector<Flat> holes_;
    PointSet points_;
    std::uint64_t size_ = 0;
    int dim_ = -1;
};

/// Sorted non-decreasing factor dimensions.
struct DimensionPattern {
    std::vector<int> dims;

    static DimensionPattern of(std::span<const Factor> factors);
    /// (0, 1, ..., n-1).
    static DimensionPattern staircase(int n);
    /// The n-1 minimal patterns not dominated by the staircase:
    /// (0,..,0, j,..,j) with j-1 zeros, for j = 1..n-1.
    static std::vector<DimensionPattern> minimal_non_dominated(int n);

    /// Componentwise <=.
    bool preceq(const DimensionPattern& other) const;
    bool dominated() const { return preceq(staircase(static_cast<int>(dims.size()))); }

    std::string str() const;
    friend bool operator==(const DimensionPattern&, const DimensionPattern&) = default;
};

struct ProductPart {
    std::vector<Factor> factors;
    std::optional<Flat> witness;

    std::uint64_t size() const;
    DimensionPattern pattern() const { return DimensionPattern::of(factors); }
    bool contains(std::span<const std::size_t> tuple) const;
};

struct Partition {
    SpacePtr space;
    int k = 0;
    std::vector<ProductPart> parts;

    int q() const { return space->q(); }
    int n() const { return space->dim(); }
    std::size_t size() const { return parts.size(); }
};

/// One r-flat through F kept whole, the other r-flats through F punctured by
/// F. The whole one contains the least point outside F. Requires
/// dim F = r - 1 and 1 <= r <= n; throws DimOutOfRange.
std::vector<Factor> partition_around(const Flat& around, int r);

/// Parts {p} x L and {p} x (L \ {p}) of (F_qP^2)^2.
Partition construct_plane_partition(int q);

/// Largest part count construct_power_partition will build.
inline constexpr std::uint64_t max_constructed_parts = 10'000'000;

/// prod_{i=1}^{k} (q^{n+1} - q^{i-1}) / (q^i - q^{i-1}). Throws Overflow.
std::uint64_t power_partition_size(int q, int n, int k);

/// Nested partitions around the span of the previous factor: factor j has
/// dimension j - 1. Throws TooLarge past max_constructed_parts.
Partition construct_power_partition(int q, int n, int k);

/// Every tuple of (F_qP^n)^k as its own part.
Partition singleton_partition(int q, int n, int k);

struct VerifyOptions {
    /// Above this many tuples the exact checks are complemented by sampled
    /// tuple membership.
    std::uint64_t exact_limit = 1'000'000'000;
    std::uint64_t sample_size = 10'000;
    std::uint64_t seed = 1;
};

struct VerifyReport {
    bool disjoint = true;
    bool covering = true;
    bool witnessed = true;
    bool well_formed = true;
    std::uint64_t covered = 0;  // sum of part sizes
    std::uint64_t total = 0;    // |F_qP^n|^k
    std::string mode = "exact";
    std::uint64_t samples = 0;
    std::vector<std::string> violations;  // first violation of each kind

    bool ok() const { return disjoint && covering && witnessed && well_formed; }
};

/// Disjointness by pairwise factor intersection, coverage by cardinality sum,
/// and witness containment.
VerifyReport verify(const Partition& partition, const VerifyOptions& options = {});

/// Splits every part A x B into (A&B)x(A&B), (A\B)x(A&B), (A&B)x(B\A) and
/// (A\B)x(B\A), dropping empty pieces. Throws WrongArity unless k = 2.
Partition canonicalize(const Partition& partition);

struct PhiProfile {
    std::vector<Flat> lines;
    std::vector<int> phi;  // phi[i] for lines[i]
    std::uint64_t sum = 0;
    std::uint64_t bound = 0;  // q (q^2 + q + 1)
    bool holds = false;
};

/// phi(L) = number of square-part factor sets meeting L. The sets must
/// partition the plane and each lie on a line; throws NotAPartition.
PhiProfile phi_profile(const SpacePtr& plane, std::span<const PointSet> square_sets);

/// The factor sets of the square parts (A = A) of a canonical k = 2 partition.
std::vector<PointSet> square_sets(const Partition& canonical);

/// Splits an almost-flat of dimension d into almost-flats of dimension d'
/// (0 < d' <= d): a flat, a flat minus a subflat of dimension >= d', or a
/// flat minus a subflat of dimension < d'. Deterministic choices use the
/// least points. d' = d returns the factor itself. Throws BadDims.
std::vector<Factor> split_factor(const Factor& factor, int target_dim);

/// The d' = 0 split.
std::vector<Factor> split_into_points(const Factor& factor);

/// Refines a product of almost-flats whose pattern is not dominated by
/// (0, 1, ..., n-1) into parts with minimal non-dominated patterns
/// p_1 x ... x p_k x R_{k+1} x ... x R_n. Throws AlreadyDominated or BadDims.
std::vector<ProductPart> refine_to_minimal(const ProductPart& part);

/// Partitions base minus the union of `removed` into at most n^h products
/// by the first coordinate at which a tuple leaves each removed product.
std::vector<ProductPart> product_minus_products_split(const ProductPart& base, std::span<const ProductPart> removed);

}  // namespace projpart
