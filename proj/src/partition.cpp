#include "projpart/partition.hpp"

#include "projpart/error.hpp"
#include "projpart/parallel.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <utility>

namespace projpart {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "product size overflows 64 bits");
    return r;
}

std::uint64_t checked_pow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r = checked_mul(r, b);
    return r;
}

}  // namespace

// ---------------------------------------------------------------- Factor

Factor::Factor(Flat base, std::vector<Flat> holes) : base_(std::move(base)), holes_(std::move(holes)) {
    points_ = base_.points();
    for (const Flat& h : holes_) {
        if (h.space() != base_.space()) fail(ErrorCode::AmbientMismatch, "hole from another projective space");
        points_ -= h.points();
    }
    size_ = points_.count();
    if (size_ == 0) fail(ErrorCode::InvalidArgument, "factor has no points");
    dim_ = holes_.empty() ? base_.dim() : span(base_.space(), points_).dim();
}

std::optional<Factor> Factor::try_make(Flat base, std::vector<Flat> holes) {
    PointSet pts = base.points();
    for (const Flat& h : holes) pts -= h.points();
    if (pts.empty()) return std::nullopt;
    return Factor(std::move(base), std::move(holes));
}

Factor Factor::from_points(const SpacePtr& space, const PointSet& set) {
    if (set.empty()) fail(ErrorCode::InvalidArgument, "factor has no points");
    Flat base = span(space, set);
    const PointSet missing = base.points() - set;
    if (missing.empty()) return Factor(std::move(base));
    Flat hole = span(space, missing);
    if (hole.points() == missing) return Factor(std::move(base), {std::move(hole)});
    std::vector<Flat> holes;
    missing.for_each([&](std::size_t p) { holes.push_back(Flat::point(space, p)); });
    return Factor(std::move(base), std::move(holes));
}

std::optional<Factor::AlmostFlat> Factor::as_almost_flat() const {
    Flat b = holes_.empty() ? base_ : span(space(), points_);
    const PointSet missing = b.points() - points_;
    if (missing.empty()) return AlmostFlat{std::move(b), std::nullopt};
    Flat h = span(space(), missing);
    if (h.points() != missing || h.dim() >= b.dim()) return std::nullopt;
    return AlmostFlat{std::move(b), std::move(h)};
}

// ---------------------------------------------------------------- patterns

DimensionPattern DimensionPattern::of(std::span<const Factor> factors) {
    DimensionPattern p;
    for (const Factor& f : factors) p.dims.push_back(f.dim());
    std::sort(p.dims.begin(), p.dims.end());
    return p;
}

DimensionPattern DimensionPattern::staircase(int n) {
    DimensionPattern p;
    for (int i = 0; i < n; ++i) p.dims.push_back(i);
    return p;
}

std::vector<DimensionPattern> DimensionPattern::minimal_non_dominated(int n) {
    std::vector<DimensionPattern> out;
    for (int j = 1; j <= n - 1; ++j) {
        DimensionPattern p;
        for (int i = 1; i <= n; ++i) p.dims.push_back(i >= j ? j : 0);
        out.push_back(std::move(p));
    }
    return out;
}

bool DimensionPattern::preceq(const DimensionPattern& other) const {
    if (dims.size() != other.dims.size()) fail(ErrorCode::WrongArity, "patterns of different length");
    for (std::size_t i = 0; i < dims.size(); ++i)
        if (dims[i] > other.dims[i]) return false;
    return true;
}

std::string DimensionPattern::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < dims.size(); ++i) os << (i ? "," : "") << dims[i];
    os << ')';
    return os.str();
}

std::uint64_t ProductPart::size() const {
    std::uint64_t s = 1;
    for (const Factor& f : factors) s = checked_mul(s, f.size());
    return s;
}

bool ProductPart::contains(std::span<const std::size_t> tuple) const {
    if (tuple.size() != factors.size()) return false;
    for (std::size_t j = 0; j < tuple.size(); ++j)
        if (!factors[j].points().contains(tuple[j])) return false;
    return true;
}

// ---------------------------------------------------------------- constructions

std::vector<Factor> partition_around(const Flat& around, int r) {
    const SpacePtr& space = around.space();
    if (r < 1 || r > space->dim() || around.dim() != r - 1)
        fail(ErrorCode::DimOutOfRange, "partition around a " + std::to_string(around.dim()) + "-flat into " + std::to_string(r) +
                                           "-flats of F_qP^" + std::to_string(space->dim()));
    std::vector<Factor> out;
    PointSet covered = around.points();
    bool first = true;
    while (true) {
        const std::size_t p = (space->full_set() - covered).first();
        if (p >= space->num_points()) break;
        Flat f = join(around, Flat::point(space, p));
        covered |= f.points();
        if (first)
            out.emplace_back(std::move(f));
        else
            out.emplace_back(std::move(f), std::vector<Flat>{around});
        first = false;
    }
    return out;
}

Partition construct_plane_partition(int q) {
    Partition part{Space::make(q, 2), 2, {}};
    const SpacePtr& space = part.space;
    for (std::size_t p = 0; p < space->num_points(); ++p) {
        const Flat pt = Flat::point(space, p);
        const Factor head(pt);
        for (Factor& f : partition_around(pt, 1)) {
            Flat witness = f.base();
            part.parts.push_back(ProductPart{{head, std::move(f)}, std::move(witness)});
        }
    }
    return part;
}

std::uint64_t power_partition_size(int q, int n, int k) {
    if (k < 1 || k > n) fail(ErrorCode::DimOutOfRange, "need 1 <= k <= n");
    std::uint64_t size = 1;
    for (int i = 1; i <= k; ++i) size = checked_mul(size, point_count(q, n + 1 - i));
    return size;
}

namespace {

void extend_power(const SpacePtr& space, int k, std::vector<Factor>& prefix, std::vector<ProductPart>& out) {
    const int j = static_cast<int>(prefix.size());
    if (j == k) {
        out.push_back(ProductPart{prefix, prefix.back().base()});
        return;
    }
    for (Factor& f : partition_around(prefix.back().base(), j)) {
        prefix.push_back(std::move(f));
        extend_power(space, k, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

Partition construct_power_partition(int q, int n, int k) {
    const std::uint64_t predicted = power_partition_size(q, n, k);
    if (predicted > max_constructed_parts)
        fail(ErrorCode::TooLarge, "power partition would have " + std::to_string(predicted) + " parts");
    Partition part{Space::make(q, n), k, {}};
    const SpacePtr& space = part.space;
    part.parts.reserve(predicted);
    // Sharded by the first (point) factor; shard outputs are concatenated in order.
    std::vector<std::vector<ProductPart>> shards(space->num_points());
    parallel_shards(space->num_points(), [&](std::size_t p) {
        std::vector<Factor> prefix{Factor(Flat::point(space, p))};
        extend_power(space, k, prefix, shards[p]);
    });
    for (auto& s : shards)
        for (auto& pp : s) part.parts.push_back(std::move(pp));
    return part;
}

Partition singleton_partition(int q, int n, int k) {
    Partition part{Space::make(q, n), k, {}};
    const SpacePtr& space = part.space;
    const std::uint64_t total = checked_pow(space->num_points(), k);
    if (total > max_constructed_parts) fail(ErrorCode::TooLarge, "singleton partition would have " + std::to_string(total) + " parts");
    std::vector<std::size_t> t(k, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
        std::uint64_t rest = c;
        for (int j = k - 1; j >= 0; --j) {
            t[j] = rest % space->num_points();
            rest /= space->num_points();
        }
        ProductPart pp;
        for (std::size_t p : t) pp.factors.emplace_back(Flat::point(space, p));
        pp.witness = extend_to_dim(span(space, t), k - 1);
        part.parts.push_back(std::move(pp));
    }
    return part;
}

// ---------------------------------------------------------------- verification

VerifyReport verify(const Partition& partition, const VerifyOptions& options) {
    VerifyReport rep;
    const SpacePtr& space = partition.space;
    const int k = partition.k;
    const std::size_t np = space->num_points();
    rep.total = checked_pow(np, k);

    for (std::size_t i = 0; i < partition.parts.size(); ++i) {
        const ProductPart& pp = partition.parts[i];
        bool ok = static_cast<int>(pp.factors.size()) == k;
        for (const Factor& f : pp.factors) ok = ok && f.space() == space;
        if (!ok) {
            rep.well_formed = false;
            rep.violations.push_back("part " + std::to_string(i) + " has the wrong arity or ambient space");
            return rep;
        }
        rep.covered += pp.size();
    }

    for (std::size_t i = 0; i < partition.parts.size(); ++i) {
        const ProductPart& pp = partition.parts[i];
        if (pp.witness) {
            bool ok = pp.witness->space() == space && pp.witness->dim() == k - 1;
            for (const Factor& f : pp.factors) ok = ok && f.points().is_subset_of(pp.witness->points());
            if (!ok) {
                rep.witnessed = false;
                rep.violations.push_back("part " + std::to_string(i) + " is not contained in the power of its witness flat");
                break;
            }
        } else {
            PointSet all = space->empty_set();
            for (const Factor& f : pp.factors) all |= f.points();
            if (span(space, all).dim() > k - 1) {
                rep.witnessed = false;
                rep.violations.push_back("part " + std::to_string(i) + " spans more than a " + std::to_string(k - 1) + "-flat");
                break;
            }
        }
    }

    // Parts can only meet if their first factors meet, so candidate pairs come
    // from buckets keyed by a point of the first factor. A pair is examined
    // only in the bucket of the least common first-factor point.
    std::vector<std::vector<std::size_t>> buckets(np);
    for (std::size_t i = 0; i < partition.parts.size(); ++i)
        partition.parts[i].factors[0].points().for_each([&](std::size_t x) { buckets[x].push_back(i); });
    constexpr auto none = std::pair<std::size_t, std::size_t>{SIZE_MAX, SIZE_MAX};
    std::vector<std::pair<std::size_t, std::size_t>> first_overlap(np, none);
    parallel_shards(np, [&](std::size_t x) {
        const auto& b = buckets[x];
        for (std::size_t a = 0; a < b.size(); ++a) {
            const ProductPart& pa = partition.parts[b[a]];
            for (std::size_t c = a + 1; c < b.size(); ++c) {
                const ProductPart& pc = partition.parts[b[c]];
                if ((pa.factors[0].points() & pc.factors[0].points()).first() != x) continue;
                bool meet = true;
                for (int j = 1; j < k && meet; ++j) meet = pa.factors[j].points().intersects(pc.factors[j].points());
                if (meet) {
                    first_overlap[x] = std::min(first_overlap[x], std::pair{b[a], b[c]});
                    return;
                }
            }
        }
    });
    const auto overlap = *std::min_element(first_overlap.begin(), first_overlap.end());
    if (overlap != none) {
        rep.disjoint = false;
        rep.violations.push_back("parts " + std::to_string(overlap.first) + " and " + std::to_string(overlap.second) + " intersect");
    }

    if (rep.disjoint) {
        rep.covering = rep.covered == rep.total;
        if (!rep.covering)
            rep.violations.push_back("cardinality " + std::string(rep.covered < rep.total ? "deficit" : "excess") + ": parts hold " +
                                     std::to_string(rep.covered) + " of " + std::to_string(rep.total) + " tuples");
    } else if (rep.total <= 10'000'000) {
        // Overlapping parts: fall back to marking tuples directly.
        std::vector<bool> hit(rep.total, false);
        for (const ProductPart& pp : partition.parts) {
            std::vector<std::vector<std::size_t>> mem;
            for (const Factor& f : pp.factors) mem.push_back(f.points().members());
            std::vector<std::size_t> idx(k, 0);
            while (true) {
                std::uint64_t code = 0;
                for (int j = 0; j < k; ++j) code = code * np + mem[j][idx[j]];
                hit[code] = true;
                int j = k - 1;
                while (j >= 0 && ++idx[j] == mem[j].size()) idx[j--] = 0;
                if (j < 0) break;
            }
        }
        const auto missing = static_cast<std::uint64_t>(std::count(hit.begin(), hit.end(), false));
        rep.covering = missing == 0;
        if (!rep.covering) rep.violations.push_back(std::to_string(missing) + " tuples are not covered");
    } else {
        rep.covering = false;
        rep.violations.push_back("coverage undetermined: parts overlap and the space is too large to mark");
    }

    if (rep.total > options.exact_limit) {
        rep.mode = "sampled";
        std::mt19937_64 rng(options.seed);
        std::uniform_int_distribution<std::size_t> pick(0, np - 1);
        std::vector<std::size_t> t(k);
        for (std::uint64_t s = 0; s < options.sample_size; ++s) {
            for (auto& x : t) x = pick(rng);
            int holders = 0;
            for (std::size_t i : buckets[t[0]]) holders += partition.parts[i].contains(t) ? 1 : 0;
            ++rep.samples;
            if (holders != 1) {
                rep.covering = rep.covering && holders != 0;
                rep.disjoint = rep.disjoint && holders <= 1;
                rep.violations.push_back("sampled tuple lies in " + std::to_string(holders) + " parts");
                break;
            }
        }
    }
    return rep;
}

// ---------------------------------------------------------------- k = 2 tools

Partition canonicalize(const Partition& partition) {
    if (partition.k != 2) fail(ErrorCode::WrongArity, "canonical parts are defined for k = 2");
    Partition out{partition.space, 2, {}};
    const SpacePtr& space = partition.space;
    for (const ProductPart& pp : partition.parts) {
        const PointSet& a = pp.factors.at(0).points();
        const PointSet& b = pp.factors.at(1).points();
        if (a == b || !a.intersects(b)) {
            out.parts.push_back(pp);
            continue;
        }
        const PointSet both = a & b;
        const PointSet only_a = a - b;
        const PointSet only_b = b - a;
        const std::pair<const PointSet*, const PointSet*> pieces[] = {
            {&both, &both}, {&only_a, &both}, {&both, &only_b}, {&only_a, &only_b}};
        for (const auto& [x, y] : pieces) {
            if (x->empty() || y->empty()) continue;
            out.parts.push_back(ProductPart{{Factor::from_points(space, *x), Factor::from_points(space, *y)}, pp.witness});
        }
    }
    return out;
}

std::vector<PointSet> square_sets(const Partition& canonical) {
    if (canonical.k != 2) fail(ErrorCode::WrongArity, "square parts are defined for k = 2");
    std::vector<PointSet> out;
    for (const ProductPart& pp : canonical.parts)
        if (pp.factors[0].points() == pp.factors[1].points()) out.push_back(pp.factors[0].points());
    return out;
}

PhiProfile phi_profile(const SpacePtr& plane, std::span<const PointSet> square_sets) {
    if (plane->dim() != 2) fail(ErrorCode::DimOutOfRange, "phi profile is defined on the projective plane");
    PointSet seen = plane->empty_set();
    for (const PointSet& s : square_sets) {
        if (s.universe() != plane->num_points()) fail(ErrorCode::AmbientMismatch, "square set from another space");
        if (s.empty() || s.intersects(seen)) fail(ErrorCode::NotAPartition, "square sets overlap or are empty");
        if (span(plane, s).dim() > 1) fail(ErrorCode::NotAPartition, "a square set is not contained in a line");
        seen |= s;
    }
    if (seen != plane->full_set()) fail(ErrorCode::NotAPartition, "square sets do not cover the plane");
    PhiProfile prof;
    const auto q = static_cast<std::uint64_t>(plane->q());
    prof.lines = enumerate_flats(plane, 1);
    for (const Flat& line : prof.lines) {
        int phi = 0;
        for (const PointSet& s : square_sets) phi += s.intersects(line.points()) ? 1 : 0;
        prof.phi.push_back(phi);
        prof.sum += static_cast<std::uint64_t>(phi);
    }
    prof.bound = q * (q * q + q + 1);
    prof.holds = prof.sum >= prof.bound;
    return prof;
}

// ---------------------------------------------------------------- splitting

namespace {

// Factors F(p) = span(anchor + p) for p in `sources` ascending, skipping
// points already covered. `first_whole` keeps the first one minus
// `first_hole` instead of minus the anchor.
void fan_out(const Flat& anchor, const PointSet& sources, std::optional<Flat> first_hole, bool first_whole,
             std::vector<Factor>& out) {
    const SpacePtr& space = anchor.space();
    PointSet covered = space->empty_set();
    bool first = true;
    sources.for_each([&](std::size_t p) {
        if (covered.contains(p)) return;
        Flat fp = join(anchor, Flat::point(space, p));
        covered |= fp.points();
        if (first && first_whole) {
            if (first_hole)
                out.emplace_back(std::move(fp), std::vector<Flat>{*first_hole});
            else
                out.emplace_back(std::move(fp));
        } else {
            out.emplace_back(std::move(fp), std::vector<Flat>{anchor});
        }
        first = false;
    });
}

}  // namespace

std::vector<Factor> split_factor(const Factor& factor, int target_dim) {
    const auto af = factor.as_almost_flat();
    if (!af) fail(ErrorCode::BadDims, "factor is not an almost-flat");
    const Flat& base = af->base;
    const int d = base.dim();
    const int dp = target_dim;
    if (dp <= 0 || dp > d)
        fail(ErrorCode::BadDims, "cannot split a " + std::to_string(d) + "-dimensional almost-flat into dimension " + std::to_string(dp));
    if (dp == d) return {factor};
    const SpacePtr& space = base.space();
    const Flat none = Flat::empty(space);
    std::vector<Factor> out;

    if (!af->hole) {
        // A d-flat: one F(p*) whole, the rest F(p) \ F_{d'}.
        const Flat anchor = greedy_extend(none, base.points(), dp);
        fan_out(anchor, base.points() - anchor.points(), std::nullopt, true, out);
        return out;
    }
    const Flat& hole = *af->hole;
    const int dh = hole.dim();
    if (dh >= dp) {
        // d > d'' >= d': anchor inside the hole, every piece F(p) \ F_{d'}.
        const Flat anchor = greedy_extend(none, hole.points(), dp);
        fan_out(anchor, base.points() - hole.points(), std::nullopt, false, out);
        return out;
    }
    // d > d' > d'': anchor through the hole, F(p*) \ F_{d''} plus F(p) \ F_{d'}.
    const Flat anchor = greedy_extend(hole, base.points(), dp - 1 - dh);
    fan_out(anchor, base.points() - anchor.points(), hole, true, out);
    return out;
}

std::vector<Factor> split_into_points(const Factor& factor) {
    std::vector<Factor> out;
    factor.points().for_each([&](std::size_t p) { out.emplace_back(Flat::point(factor.space(), p)); });
    return out;
}

std::vector<ProductPart> refine_to_minimal(const ProductPart& part) {
    const int n = static_cast<int>(part.factors.size());
    for (const Factor& f : part.factors)
        if (!f.as_almost_flat()) fail(ErrorCode::BadDims, "refinement needs almost-flat factors");
    const DimensionPattern pat = part.pattern();
    if (pat.dominated()) fail(ErrorCode::AlreadyDominated, "pattern " + pat.str() + " is dominated by the staircase");

    int k = 0;
    while (pat.dims[k] < k + 1) ++k;

    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return part.factors[a].dim() < part.factors[b].dim(); });

    std::vector<std::vector<Factor>> pieces(n);
    for (int r = 0; r < n; ++r) {
        const int i = order[r];
        const Factor& f = part.factors[i];
        if (r < k)
            pieces[i] = split_into_points(f);
        else if (f.dim() == k + 1)
            pieces[i] = {f};
        else
            pieces[i] = split_factor(f, k + 1);
    }

    std::vector<ProductPart> out;
    std::vector<std::size_t> idx(n, 0);
    while (true) {
        ProductPart pp;
        pp.witness = part.witness;
        for (int i = 0; i < n; ++i) pp.factors.push_back(pieces[i][idx[i]]);
        out.push_back(std::move(pp));
        int j = n - 1;
        while (j >= 0 && ++idx[j] == pieces[j].size()) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

std::vector<ProductPart> product_minus_products_split(const ProductPart& base, std::span<const ProductPart> removed) {
    const std::size_t k = base.factors.size();
    if (k == 0) return {base};
    const SpacePtr& space = base.factors[0].space();
    using Sets = std::vector<PointSet>;
    std::vector<Sets> pieces;
    {
        Sets s;
        for (const Factor& f : base.factors) s.push_back(f.points());
        pieces.push_back(std::move(s));
    }
    for (const ProductPart& r : removed) {
        if (r.factors.size() != k) fail(ErrorCode::WrongArity, "removed product has the wrong arity");
        std::vector<Sets> next;
        for (const Sets& x : pieces) {
            // Tuples of x leaving r first at coordinate j.
            for (std::size_t j = 0; j < k; ++j) {
                Sets y = x;
                bool nonempty = true;
                for (std::size_t i = 0; i < j; ++i) {
                    y[i] &= r.factors[i].points();
                    nonempty = nonempty && !y[i].empty();
                }
                y[j] -= r.factors[j].points();
                nonempty = nonempty && !y[j].empty();
                if (nonempty) next.push_back(std::move(y));
            }
        }
        pieces = std::move(next);
    }
    std::vector<ProductPart> out;
    for (const Sets& x : pieces) {
        ProductPart pp;
        pp.witness = base.witness;
        for (const PointSet& s : x) pp.factors.push_back(Factor::from_points(space, s));
        out.push_back(std::move(pp));
    }
    return out;
}

}  // namespace projpart
