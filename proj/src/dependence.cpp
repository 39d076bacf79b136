#include "projpart/dependence.hpp"

#include "projpart/error.hpp"
#include "projpart/parallel.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace projpart {

namespace {

using u128 = unsigned __int128;

std::uint64_t upow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (__builtin_mul_overflow(r, b, &r)) fail(ErrorCode::Overflow, "power overflows 64 bits");
    }
    return r;
}

struct Walker {
    const SpacePtr& space;
    std::span<const PointSet> factors;
    std::vector<std::uint64_t> suffix;  // suffix[j] = prod_{i >= j} |A_i|

    // Dependent completions of an independent prefix of length `depth`
    // spanning `prefix`.
    std::uint64_t walk(std::size_t depth, const Flat& prefix) const {
        const std::size_t k = factors.size();
        if (depth == k) return 0;
        const PointSet& next = factors[depth];
        std::uint64_t dep = next.intersection_count(prefix.points()) * suffix[depth + 1];
        if (depth + 1 == k) return dep;
        (next - prefix.points()).for_each([&](std::size_t p) { dep += walk(depth + 1, join(prefix, Flat::point(space, p))); });
        return dep;
    }
};

}  // namespace

bool fraction_less(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
    return static_cast<u128>(a) * d < static_cast<u128>(c) * b;
}

DependentCount count_dependent(const SpacePtr& space, std::span<const PointSet> factors, const CountOptions& options) {
    DependentCount res;
    const std::size_t k = factors.size();
    std::vector<std::uint64_t> suffix(k + 1, 1);
    bool overflow = false;
    for (std::size_t j = k; j-- > 0;) {
        if (factors[j].universe() != space->num_points()) fail(ErrorCode::AmbientMismatch, "factor from another space");
        overflow = overflow || __builtin_mul_overflow(suffix[j + 1], factors[j].count(), &suffix[j]);
    }
    if (!overflow) res.total = suffix[0];
    if (k == 0 || (!overflow && res.total == 0)) return res;

    if (overflow || res.total > options.exact_limit) {
        if (!options.allow_sampling)
            fail(ErrorCode::TooLargeForExact, "product too large for exhaustive counting; enable sampling");
        res.mode = "sampled";
        res.sample_size = options.sample_size;
        res.seed = options.seed;
        res.total = options.sample_size;
        std::mt19937_64 rng(options.seed);
        std::vector<std::vector<std::size_t>> mem;
        for (const PointSet& f : factors) mem.push_back(f.members());
        std::vector<std::size_t> t(k);
        for (std::uint64_t s = 0; s < options.sample_size; ++s) {
            for (std::size_t j = 0; j < k; ++j) {
                std::uniform_int_distribution<std::size_t> pick(0, mem[j].size() - 1);
                t[j] = mem[j][pick(rng)];
            }
            res.count += is_dependent(*space, t) ? 1 : 0;
        }
        return res;
    }

    Walker w{space, factors, suffix};
    const auto firsts = factors[0].members();
    std::vector<std::uint64_t> shard(firsts.size(), 0);
    parallel_shards(firsts.size(), [&](std::size_t i) { shard[i] = w.walk(1, Flat::point(space, firsts[i])); });
    res.count = std::accumulate(shard.begin(), shard.end(), std::uint64_t{0});
    return res;
}

DependentCount count_dependent(const ProductPart& part, const CountOptions& options) {
    if (part.factors.empty()) return {};
    std::vector<PointSet> sets;
    for (const Factor& f : part.factors) sets.push_back(f.points());
    return count_dependent(part.factors[0].space(), sets, options);
}

// ------------------------------------------------------------ Sylvester-Gallai

bool is_general_position(std::span<const Flat> lines) {
    if (lines.empty()) return true;
    const SpacePtr& space = lines[0].space();
    const int n = space->dim();
    const int m = static_cast<int>(lines.size());
    if (m > n + 1) fail(ErrorCode::InvalidArgument, "more than n+1 lines");
    for (const Flat& l : lines)
        if (l.dim() != 1 || l.space() != space) fail(ErrorCode::InvalidArgument, "general position is defined for lines of one space");
    for (unsigned mask = 1; mask < (1U << m); ++mask) {
        const int size = std::popcount(mask);
        const int k = size - 1;
        if (k < 1 || k > n - 1) continue;
        std::vector<Flat> sub;
        for (int i = 0; i < m; ++i)
            if (mask & (1U << i)) sub.push_back(lines[i]);
        if (span(sub).dim() <= k) return false;
    }
    return true;
}

namespace {

std::size_t sylvester_rec(std::span<const Flat> lines, std::vector<std::size_t> ids, SylvesterResult* top) {
    if (ids.size() == 1) {
        if (top) {
            top->chain = ids;
            top->chain_dims = {1};
        }
        return ids[0];
    }
    std::vector<std::size_t> chain{ids[0]};
    std::vector<std::size_t> rest(ids.begin() + 1, ids.end());
    while (!rest.empty()) {
        auto it = std::find_if(rest.begin(), rest.end(), [&](std::size_t cand) {
            return std::any_of(chain.begin(), chain.end(),
                               [&](std::size_t c) { return lines[cand].points().intersects(lines[c].points()); });
        });
        if (it == rest.end()) break;
        chain.push_back(*it);
        rest.erase(it);
    }
    if (top) {
        top->chain = chain;
        std::vector<Flat> pref;
        for (std::size_t c : chain) {
            pref.push_back(lines[c]);
            top->chain_dims.push_back(span(pref).dim());
        }
    }
    // A stalled chain meets no other line, so a good line for the chain is
    // good for the whole family.
    if (!rest.empty()) return sylvester_rec(lines, chain, nullptr);
    return chain.back();
}

}  // namespace

SylvesterResult sylvester_line(std::span<const Flat> lines) {
    if (lines.empty()) fail(ErrorCode::InvalidArgument, "no lines");
    if (!is_general_position(lines)) fail(ErrorCode::NotGeneralPosition, "lines are not in general position");
    SylvesterResult res;
    std::vector<std::size_t> ids(lines.size());
    std::iota(ids.begin(), ids.end(), 0);
    res.index = sylvester_rec(lines, ids, &res);
    res.intersections = lines[0].space()->empty_set();
    for (std::size_t i = 0; i < lines.size(); ++i)
        if (i != res.index) res.intersections |= lines[res.index].points() & lines[i].points();
    return res;
}

// ------------------------------------------------------------ almost-lines

std::vector<Factor> almost_lines(const SpacePtr& space) {
    std::vector<Factor> out;
    for (const Flat& line : enumerate_flats(space, 1)) {
        out.emplace_back(line);
        line.points().for_each([&](std::size_t p) { out.emplace_back(line, std::vector<Flat>{Flat::point(space, p)}); });
    }
    return out;
}

std::uint64_t lines_bound(int q, int n) {
    if (q < 3) fail(ErrorCode::QTooSmall, "the almost-line bound needs q >= 3");
    return upow(static_cast<std::uint64_t>(q - 2), n - 1) * static_cast<std::uint64_t>(q - 1);
}

LinesBoundReport verify_lines_bound(const SpacePtr& space, std::span<const Factor> family) {
    const int n = space->dim();
    if (space->q() < 3) fail(ErrorCode::QTooSmall, "the almost-line bound needs q >= 3");
    if (static_cast<int>(family.size()) != n + 1) fail(ErrorCode::InvalidArgument, "need exactly n+1 almost-lines");
    std::vector<PointSet> sets;
    for (const Factor& f : family) {
        const auto af = f.as_almost_flat();
        if (f.space() != space || !af || af->base.dim() != 1 || f.size() < static_cast<std::uint64_t>(space->q()))
            fail(ErrorCode::InvalidArgument, "family member is not an almost-line");
        sets.push_back(f.points());
    }
    const DependentCount c = count_dependent(space, sets);
    LinesBoundReport rep;
    rep.count = c.count;
    rep.total = c.total;
    rep.bound = lines_bound(space->q(), n);
    rep.holds = rep.count >= rep.bound;
    return rep;
}

// ------------------------------------------------------------ surgery

SurgeryResult surgery_reduce(const ProductPart& part) {
    const std::size_t m = part.factors.size();
    if (m == 0) fail(ErrorCode::InvalidArgument, "empty product");
    const SpacePtr& space = part.factors[0].space();
    std::size_t k = 0;
    while (k < m && part.factors[k].size() == 1) ++k;
    for (std::size_t i = k; i < m; ++i) {
        const auto af = part.factors[i].as_almost_flat();
        if (!af || af->base.dim() != static_cast<int>(k) + 1)
            fail(ErrorCode::BadDims, "factor " + std::to_string(i) + " is not an almost-flat of dimension " + std::to_string(k + 1));
    }
    std::vector<std::size_t> prefix;
    for (std::size_t i = 0; i < k; ++i) prefix.push_back(part.factors[i].points().first());
    const Flat S = span(space, prefix);

    SurgeryResult res{part, S, static_cast<int>(k), false, {}, {}, {}};
    res.before = count_dependent(part);
    if (k == 0) {
        // Quotient by the empty flat is the identity: every factor is
        // already a union of classes.
        res.after = res.before;
        res.choices.assign(m, "unchanged");
        return res;
    }
    if (S.rank() < static_cast<int>(k)) {
        res.dependent_prefix = true;
        res.after = res.before;
        return res;
    }

    const Quotient quo(S);
    std::vector<PointSet> current;
    for (const Factor& f : part.factors) current.push_back(f.points());

    auto factor_for = [&](const Flat& base, std::vector<Flat> holes, const PointSet& expect) {
        std::erase_if(holes, [](const Flat& h) { return h.rank() == 0; });
        Factor f(base, std::move(holes));
        return f.points() == expect ? f : Factor::from_points(space, expect);
    };

    for (std::size_t i = k; i < m; ++i) {
        const auto af = *part.factors[i].as_almost_flat();
        const Flat& F = af.base;
        const Flat FS = meet(F, S);
        const PointSet complete = F.points() - S.points();
        if (!af.hole) {
            res.reduced.factors[i] = factor_for(F, {FS}, complete);
            res.choices.emplace_back("flat");
            current[i] = complete;
            continue;
        }
        const PointSet classes = restrict_to_classes(*af.hole, F, quo);
        const PointSet remove = complete - classes;
        bool pick_remove = false;
        if (!remove.empty()) {
            current[i] = complete;
            const DependentCount with_complete = count_dependent(space, current);
            current[i] = remove;
            const DependentCount with_remove = count_dependent(space, current);
            pick_remove = !fraction_less(with_complete.count, with_complete.total, with_remove.count, with_remove.total);
        }
        if (pick_remove) {
            const Flat hull = join(FS, *af.hole);
            res.reduced.factors[i] = factor_for(F, {FS, hull}, remove);
            res.choices.emplace_back("remove");
            current[i] = remove;
        } else {
            res.reduced.factors[i] = factor_for(F, {FS}, complete);
            res.choices.emplace_back("complete");
            current[i] = complete;
        }
    }
    res.after = count_dependent(res.reduced);
    return res;
}

// ------------------------------------------------------------ Graham-Pollak

int rational_rank(std::span<const int> matrix, int rows, int cols) {
    // Fraction-free (Bareiss) elimination keeps every entry an integer.
    std::vector<long long> a(matrix.begin(), matrix.end());
    int rank = 0;
    long long prev = 1;
    for (int c = 0; c < cols && rank < rows; ++c) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (a[r * cols + c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < cols; ++j) std::swap(a[piv * cols + j], a[rank * cols + j]);
        for (int r = rank + 1; r < rows; ++r) {
            for (int j = c + 1; j < cols; ++j)
                a[r * cols + j] = (a[rank * cols + c] * a[r * cols + j] - a[r * cols + c] * a[rank * cols + j]) / prev;
            a[r * cols + c] = 0;
        }
        prev = a[rank * cols + c];
        ++rank;
    }
    return rank;
}

namespace {

struct BicliqueSearch {
    int n;
    bool rank_pruning;
    std::vector<std::uint32_t> bicliques;
    int best;
    std::uint64_t nodes = 0;

    int residual_rank(std::uint32_t uncovered) const {
        std::vector<int> m(static_cast<std::size_t>(n) * n, 0);
        for (int e = 0; e < n * n; ++e) m[e] = (uncovered >> e) & 1U;
        return rational_rank(m, n, n);
    }

    void dfs(std::uint32_t uncovered, int used) {
        ++nodes;
        if (uncovered == 0) {
            best = std::min(best, used);
            return;
        }
        if (used + 1 >= best) return;
        if (rank_pruning && used + residual_rank(uncovered) >= best) return;
        const std::uint32_t e = uncovered & (~uncovered + 1);
        for (std::uint32_t b : bicliques)
            if ((b & e) && (b & ~uncovered) == 0) dfs(uncovered & ~b, used + 1);
    }
};

}  // namespace

BicliqueResult min_biclique_partition(int n, bool rank_pruning) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "need n >= 1");
    if (n > 5) fail(ErrorCode::TooLarge, "exhaustive biclique search is limited to n <= 5");
    BicliqueSearch s{n, rank_pruning, {}, n * n + 1};
    // Edge (i, j), i != j, is bit i*n + j. A biclique is A x B with A, B
    // nonempty and disjoint.
    std::vector<int> side(n, 0);
    int pow3 = 1;
    for (int i = 0; i < n; ++i) pow3 *= 3;
    for (int code = 0; code < pow3; ++code) {
        int c = code;
        unsigned a = 0, b = 0;
        for (int i = 0; i < n; ++i) {
            if (c % 3 == 1) a |= 1U << i;
            if (c % 3 == 2) b |= 1U << i;
            c /= 3;
        }
        if (a == 0 || b == 0) continue;
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((a >> i & 1U) && (b >> j & 1U)) mask |= 1U << (i * n + j);
        s.bicliques.push_back(mask);
    }
    std::sort(s.bicliques.begin(), s.bicliques.end(), [](std::uint32_t x, std::uint32_t y) {
        const int px = std::popcount(x), py = std::popcount(y);
        return px != py ? px > py : x < y;
    });
    std::uint32_t edges = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) edges |= 1U << (i * n + j);
    s.dfs(edges, 0);
    return BicliqueResult{s.best, s.nodes, rank_pruning};
}

// ------------------------------------------------------------ almost-flat lemma

std::pair<std::uint64_t, std::uint64_t> almostflat_bound(int q, int n) {
    if (q < 3) fail(ErrorCode::QTooSmall, "the almost-flat bound needs q >= 3");
    return {upow(static_cast<std::uint64_t>(q - 2), n - 1), upow(static_cast<std::uint64_t>(q + 1), n)};
}

AlmostFlatCheck almostflat_fraction_check(const ProductPart& part) {
    const int n = static_cast<int>(part.factors.size());
    if (n == 0) fail(ErrorCode::InvalidArgument, "empty product");
    const SpacePtr& space = part.factors[0].space();
    const int q = space->q();
    if (q < 3) fail(ErrorCode::QTooSmall, "the almost-flat bound needs q >= 3");
    if (space->dim() != n - 1) fail(ErrorCode::DimOutOfRange, "expected n factors in F_qP^{n-1}");

    AlmostFlatCheck chk;
    std::tie(chk.bound_num, chk.bound_den) = almostflat_bound(q, n);
    chk.direct = count_dependent(part);
    chk.pipeline_count = 1;
    chk.pipeline_total = 1;

    auto take_min = [&](std::uint64_t c, std::uint64_t t) {
        if (fraction_less(c, t, chk.pipeline_count, chk.pipeline_total)) {
            chk.pipeline_count = c;
            chk.pipeline_total = t;
        }
    };

    const auto pieces = refine_to_minimal(part);
    chk.refined_parts = pieces.size();
    for (ProductPart piece : pieces) {
        // The fraction does not depend on the factor order; surgery wants
        // the single points first.
        std::stable_partition(piece.factors.begin(), piece.factors.end(), [](const Factor& f) { return f.size() == 1; });
        const SurgeryResult s = surgery_reduce(piece);
        if (fraction_less(s.before.count, s.before.total, s.after.count, s.after.total)) chk.surgery_monotone = false;
        if (s.dependent_prefix) {
            take_min(1, 1);
            continue;
        }
        const int k = s.leading_points;
        const Quotient quo(s.by);
        const SpacePtr& qspace = quo.quotient_space();
        std::vector<PointSet> images;
        std::vector<std::vector<Factor>> lines;
        for (int i = k; i < n; ++i) {
            images.push_back(quo.image(s.reduced.factors[i].points()));
            const Factor img = Factor::from_points(qspace, images.back());
            lines.push_back(img.dim() == 1 ? std::vector<Factor>{img} : split_factor(img, 1));
        }
        const DependentCount in_quotient = count_dependent(qspace, images);
        // The quotient keeps the fraction when every factor is a union of classes.
        if (static_cast<u128>(in_quotient.count) * s.after.total != static_cast<u128>(s.after.count) * in_quotient.total)
            chk.quotient_preserves_fraction = false;

        const int nq = qspace->dim();
        const std::uint64_t lemma = lines_bound(q, nq);
        std::vector<std::size_t> idx(lines.size(), 0);
        while (true) {
            std::vector<PointSet> sets;
            for (std::size_t j = 0; j < lines.size(); ++j) sets.push_back(lines[j][idx[j]].points());
            const DependentCount c = count_dependent(qspace, sets);
            ++chk.line_products;
            if (c.count < lemma) chk.lines_lemma_holds = false;
            take_min(c.count, c.total);
            std::size_t j = lines.size();
            while (j > 0 && ++idx[j - 1] == lines[j - 1].size()) idx[--j] = 0;
            if (j == 0) break;
        }
    }
    chk.direct_holds = !fraction_less(chk.direct.count, chk.direct.total, chk.bound_num, chk.bound_den);
    chk.pipeline_holds = !fraction_less(chk.pipeline_count, chk.pipeline_total, chk.bound_num, chk.bound_den);
    chk.pipeline_below_direct = !fraction_less(chk.direct.count, chk.direct.total, chk.pipeline_count, chk.pipeline_total);
    return chk;
}

}  // namespace projpart
