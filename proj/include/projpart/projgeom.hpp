#pragma once

#include "projpart/gfq.hpp"
#include "projpart/point_set.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace projpart {

/// The projective space F_qP^n.
///
/// Points are the normalized nonzero vectors of F_q^{n+1} (first nonzero
/// coordinate equal to 1), indexed in lexicographic order of their
/// coordinates. Index 0 is therefore (0, ..., 0, 1).
class Space {
public:
    /// Largest q^{n+1} for which the dense vector -> index table is built.
    static constexpr std::uint64_t max_vectors = std::uint64_t{1} << 24;

    static std::shared_ptr<const Space> make(FieldPtr field, int n);
    static std::shared_ptr<const Space> make(int q, int n);

    const Field& field() const noexcept { return *field_; }
    const FieldPtr& field_ptr() const noexcept { return field_; }
    int q() const noexcept { return field_->q(); }
    int dim() const noexcept { return n_; }
    int width() const noexcept { return n_ + 1; }
    std::size_t num_points() const noexcept { return num_points_; }

    std::span<const Elem> coords(std::size_t point) const {
        return {coords_.data() + point * static_cast<std::size_t>(width()), static_cast<std::size_t>(width())};
    }

    /// Index of the projective point of a nonzero vector (any scaling).
    std::size_t index_of(std::span<const Elem> v) const;
    /// Index of a vector already normalized; no checks.
    std::size_t index_of_normalized(std::span<const Elem> v) const { return index_of_code_[code(v)]; }

    PointSet empty_set() const { return PointSet(num_points_); }
    PointSet full_set() const { return PointSet::full(num_points_); }

private:
    Space() = default;
    std::size_t code(std::span<const Elem> v) const noexcept {
        std::size_t c = 0;
        for (Elem e : v) c = c * static_cast<std::size_t>(field_->q()) + e;
        return c;
    }

    FieldPtr field_;
    int n_ = 0;
    std::size_t num_points_ = 0;
    std::vector<Elem> coords_;
    std::vector<std::uint32_t> index_of_code_;
};

using SpacePtr = std::shared_ptr<const Space>;

/// Reduced row echelon form in place. `mat` holds `rows` rows of `cols`
/// entries; on return it holds exactly rank rows. Returns the rank.
int row_reduce(std::vector<Elem>& mat, int rows, int cols, const Field& field);

/// A flat of F_qP^n, stored as the RREF basis of its linear subspace.
///
/// Copies share the immutable basis and point set.
class Flat {
public:
    static Flat empty(SpacePtr space);
    static Flat full(SpacePtr space);
    static Flat point(SpacePtr space, std::size_t index);
    /// Span of arbitrary row vectors (need not be independent).
    static Flat from_rows(SpacePtr space, std::span<const Elem> rows, int row_count);
    /// The hyperplane {v : <a, v> = 0} for a nonzero functional a.
    static Flat hyperplane(SpacePtr space, std::span<const Elem> functional);

    const SpacePtr& space() const noexcept { return impl_->space; }
    int rank() const noexcept { return impl_->rank; }
    int dim() const noexcept { return impl_->rank - 1; }
    std::span<const Elem> basis() const noexcept { return impl_->basis; }
    std::span<const Elem> row(int r) const {
        const auto w = static_cast<std::size_t>(space()->width());
        return basis().subspan(static_cast<std::size_t>(r) * w, w);
    }
    /// Pivot column of each basis row.
    const std::vector<int>& pivots() const noexcept { return impl_->pivots; }

    const PointSet& points() const noexcept { return impl_->points; }
    std::size_t size() const noexcept { return impl_->points.count(); }
    bool contains(std::size_t point) const { return impl_->points.contains(point); }
    bool contains(const Flat& other) const { return other.points().is_subset_of(points()); }

    friend bool operator==(const Flat& a, const Flat& b) {
        return a.impl_ == b.impl_ || (a.space() == b.space() && a.impl_->basis == b.impl_->basis);
    }
    /// Deterministic total order: by dimension, then basis entries.
    friend std::strong_ordering operator<=>(const Flat& a, const Flat& b);

    std::size_t hash() const noexcept { return impl_->points.hash(); }

private:
    struct Impl {
        SpacePtr space;
        int rank = 0;
        std::vector<Elem> basis;
        std::vector<int> pivots;
        PointSet points;
    };
    explicit Flat(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    static Flat from_reduced(SpacePtr space, std::vector<Elem> basis, int rank);

    std::shared_ptr<const Impl> impl_;
};

struct FlatHash {
    std::size_t operator()(const Flat& f) const noexcept { return f.hash(); }
};

/// Minimal flat containing all given points; span of nothing is the empty flat.
Flat span(const SpacePtr& space, std::span<const std::size_t> points);
Flat span(const SpacePtr& space, const PointSet& points);
/// Throws AmbientMismatch when the flats live in different spaces.
Flat span(std::span<const Flat> flats);
Flat join(const Flat& a, const Flat& b);
Flat meet(const Flat& a, const Flat& b);
/// Smallest-index extension: adds the least points outside the flat until
/// it reaches `dim`. Throws DimOutOfRange.
Flat extend_to_dim(const Flat& flat, int dim);
/// Span of the `count` least points of `within` that extend the running
/// span, starting from `start`; the result has dimension start.dim() + count
/// when `within` is large enough.
Flat greedy_extend(const Flat& start, const PointSet& within, int count);

/// Rank of the linear span of the representatives of the given points.
int rank_of(const Space& space, std::span<const std::size_t> points);
/// dim span(points) < k - 1 for a k-tuple.
bool is_dependent(const Space& space, std::span<const std::size_t> tuple);

/// |F_qP^n| = (q^{n+1} - 1) / (q - 1). Throws Overflow.
std::uint64_t point_count(int q, int n);
/// Number of k-flats of F_qP^n, -1 <= k <= n: the Gaussian binomial
/// [n+1, k+1]_q. Throws DimOutOfRange or Overflow.
std::uint64_t count_flats(int n, int k, int q);
/// Every k-flat, in canonical order (pivot pattern, then free entries).
std::vector<Flat> enumerate_flats(const SpacePtr& space, int k);

/// The quotient of F_qP^n by a flat S.
///
/// Points outside S fall into classes span(S + p) \ S. Classes are
/// identified with the points of a projective space of dimension
/// n - dim(S) - 1 through the linear map that reduces a vector modulo the
/// RREF basis of S and keeps the non-pivot coordinates.
class Quotient {
public:
    explicit Quotient(Flat by);

    const Flat& by() const noexcept { return by_; }
    int quotient_dim() const noexcept { return by_.space()->dim() - by_.dim() - 1; }
    /// Null when S is the whole space.
    const SpacePtr& quotient_space() const noexcept { return target_; }

    bool in_by(std::size_t point) const { return by_.contains(point); }
    /// Class of a point outside S (a point index of quotient_space()).
    /// Throws PointInFlat.
    std::size_t class_of(std::size_t point) const;
    /// Lexicographically least point of the class of p. Throws PointInFlat.
    std::size_t class_rep(std::size_t point) const;
    std::size_t class_count() const noexcept { return members_.size(); }
    const PointSet& class_members(std::size_t cls) const { return members_[cls]; }

    /// Images of the points of `set` outside S.
    PointSet image(const PointSet& set) const;
    /// Union of the classes in `classes`.
    PointSet preimage(const PointSet& classes) const;
    /// Image of a flat, as a flat of the quotient space.
    Flat image(const Flat& flat) const;

    /// Vector of quotient coordinates of a point (not normalized).
    std::vector<Elem> reduce(std::span<const Elem> v) const;

private:
    Flat by_;
    SpacePtr target_;
    std::vector<std::int64_t> class_of_;
    std::vector<std::size_t> rep_;
    std::vector<PointSet> members_;
    std::vector<int> free_cols_;
};

/// {x in F \ S : [x] meets [F']}: the union of the classes of F \ S that
/// intersect the flat F'.
PointSet restrict_to_classes(const Flat& sub, const Flat& within, const Quotient& quotient);

}  // namespace projpart
