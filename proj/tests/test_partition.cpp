#include "doctest.h"
#include "test_support.hpp"

#include "projpart/error.hpp"
#include "projpart/partition.hpp"

#include <random>
#include <set>

using namespace projpart;
using testing::ipow;

namespace {

PointSet points_of(const SpacePtr& s, std::initializer_list<std::size_t> pts) {
    PointSet out = s->empty_set();
    for (std::size_t p : pts) out.insert(p);
    return out;
}

/// Tuples of a product, as a set, by enumeration.
std::set<std::vector<std::size_t>> tuples(const std::vector<PointSet>& factors) {
    std::vector<std::vector<std::size_t>> m;
    for (const PointSet& f : factors) m.push_back(f.members());
    std::set<std::vector<std::size_t>> out;
    testing::for_each_tuple(m, [&](const std::vector<std::size_t>& t) { out.insert(t); });
    return out;
}

std::vector<PointSet> sets_of(const ProductPart& part) {
    std::vector<PointSet> out;
    for (const Factor& f : part.factors) out.push_back(f.points());
    return out;
}

}  // namespace

TEST_CASE("partition around a point") {
    const SpacePtr s = Space::make(2, 2);
    const auto factors = partition_around(Flat::point(s, 0), 1);
    REQUIRE(factors.size() == 3);
    std::multiset<std::uint64_t> sizes;
    PointSet all = s->empty_set();
    for (const Factor& f : factors) {
        sizes.insert(f.size());
        CHECK(!f.points().intersects(all));
        all |= f.points();
    }
    CHECK(sizes == std::multiset<std::uint64_t>{2, 2, 3});
    CHECK(all == s->full_set());
    // the whole line holds the least point outside F
    for (const Factor& f : factors)
        if (f.size() == 3) CHECK(f.points().contains(1));
    // (q^{n+1} - q^r) / (q^{r+1} - q^r) at q=3, n=2, r=1
    CHECK(partition_around(Flat::point(Space::make(3, 2), 0), 1).size() == 4);
    CHECK_THROWS_AS(partition_around(Flat::point(s, 0), 2), Error);
}

TEST_CASE("constructions verify and have the product size") {
    for (int q : {2, 3, 4}) {
        const Partition p = construct_plane_partition(q);
        CHECK(verify(p).ok());
        CHECK(p.size() == static_cast<std::size_t>((q * q + q + 1) * (q + 1)));
    }
    CHECK(power_partition_size(2, 2, 2) == 21);
    CHECK(power_partition_size(3, 3, 3) == 2080);
    CHECK(power_partition_size(8, 3, 3) == 384345);
    for (auto [q, n, k] : {std::tuple{2, 2, 1}, {2, 3, 2}, {3, 2, 1}, {2, 3, 1}}) {
        const Partition p = construct_power_partition(q, n, k);
        CAPTURE(q);
        CAPTURE(n);
        CAPTURE(k);
        CHECK(p.size() == power_partition_size(q, n, k));
        CHECK(verify(p).ok());
    }
}

TEST_CASE("singleton partition") {
    const Partition p = singleton_partition(2, 2, 2);
    CHECK(p.size() == 49);
    const VerifyReport r = verify(p);
    CHECK(r.ok());
    CHECK(r.total == 49);
}

TEST_CASE("verify catches mutations") {
    const Partition good = construct_plane_partition(2);
    SUBCASE("dropped part") {
        Partition p = good;
        const std::uint64_t lost = p.parts.back().size();
        p.parts.pop_back();
        const VerifyReport r = verify(p);
        CHECK(!r.covering);
        CHECK(r.disjoint);
        CHECK(r.covered + lost == r.total);
    }
    SUBCASE("duplicated part") {
        Partition p = good;
        p.parts.push_back(p.parts.front());
        const VerifyReport r = verify(p);
        CHECK(!r.disjoint);
        CHECK(!r.ok());
    }
    SUBCASE("wrong witness") {
        Partition p = good;
        for (ProductPart& part : p.parts) {
            const Flat& w = *part.witness;
            bool swapped = false;
            for (const Flat& line : enumerate_flats(p.space, 1))
                if (!(line == w)) {
                    bool misses = false;
                    for (const Factor& f : part.factors) misses = misses || !f.points().is_subset_of(line.points());
                    if (misses) {
                        part.witness = line;
                        swapped = true;
                        break;
                    }
                }
            if (swapped) break;
        }
        CHECK(!verify(p).witnessed);
    }
}

TEST_CASE("canonical split of a part") {
    const SpacePtr s = Space::make(2, 2);
    const Flat line = enumerate_flats(s, 1).front();
    const auto m = line.points().members();
    const std::size_t a = m[0], b = m[1], c = m[2];
    auto single = [&](PointSet x, PointSet y) {
        return Partition{s, 2, {ProductPart{{Factor::from_points(s, x), Factor::from_points(s, y)}, line}}};
    };
    CHECK(canonicalize(single(points_of(s, {a, b}), points_of(s, {a, b}))).size() == 1);
    CHECK(canonicalize(single(points_of(s, {a}), points_of(s, {b, c}))).size() == 1);
    const Partition split = canonicalize(single(points_of(s, {a, b}), points_of(s, {b, c})));
    std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> got;
    for (const ProductPart& p : split.parts) got.emplace(p.factors[0].points().members(), p.factors[1].points().members());
    const std::set<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> want{
        {{b}, {b}}, {{a}, {b}}, {{b}, {c}}, {{a}, {c}}};
    CHECK(got == want);

    const Partition canon = canonicalize(construct_plane_partition(3));
    CHECK(verify(canon).ok());
    for (const ProductPart& p : canon.parts) {
        const PointSet& x = p.factors[0].points();
        const PointSet& y = p.factors[1].points();
        CHECK((x == y || !x.intersects(y)));
    }
    CHECK_THROWS_AS(canonicalize(construct_power_partition(2, 3, 3)), Error);
}

TEST_CASE("phi profile") {
    const SpacePtr s = Space::make(2, 2);
    std::vector<PointSet> singles;
    for (std::size_t p = 0; p < 7; ++p) singles.push_back(points_of(s, {p}));
    const PhiProfile all = phi_profile(s, singles);
    CHECK(all.sum == 21);
    for (int v : all.phi) CHECK(v == 3);
    CHECK(all.bound == 14);
    CHECK(all.holds);

    const Flat l0 = enumerate_flats(s, 1).front();
    std::vector<PointSet> with_line{l0.points()};
    for (std::size_t p = 0; p < 7; ++p)
        if (!l0.contains(p)) with_line.push_back(points_of(s, {p}));
    const PhiProfile ph = phi_profile(s, with_line);
    for (std::size_t i = 0; i < ph.lines.size(); ++i) {
        if (ph.lines[i] == l0) {
            CHECK(ph.phi[i] == 1);
        } else {
            CHECK(ph.phi[i] == 3);
        }
    }
    std::vector<PointSet> bad{points_of(s, {0})};
    CHECK_THROWS_AS(phi_profile(s, bad), Error);
}

TEST_CASE("dimension patterns") {
    const auto mins = DimensionPattern::minimal_non_dominated(4);
    REQUIRE(mins.size() == 3);
    CHECK(mins[0].dims == std::vector<int>{1, 1, 1, 1});
    CHECK(mins[1].dims == std::vector<int>{0, 2, 2, 2});
    CHECK(mins[2].dims == std::vector<int>{0, 0, 3, 3});
    for (const auto& p : mins) CHECK(!p.dominated());
    CHECK(DimensionPattern{{0, 1, 2}}.dominated());
    CHECK(DimensionPattern{{0, 0, 1}}.dominated());
    CHECK(DimensionPattern{{0, 0, 2}}.dominated());
    CHECK(!DimensionPattern{{0, 2, 2}}.dominated());
    CHECK(DimensionPattern{{0, 1, 1}}.preceq(DimensionPattern{{1, 1, 1}}));
    CHECK(!DimensionPattern{{2, 1, 1}}.preceq(DimensionPattern{{1, 1, 1}}));
}

TEST_CASE("split_factor examples") {
    const SpacePtr s = Space::make(2, 2);
    const Factor plane(Flat::full(s));
    SUBCASE("a plane into lines") {
        const auto pieces = split_factor(plane, 1);
        std::multiset<std::uint64_t> sizes;
        for (const Factor& f : pieces) sizes.insert(f.size());
        CHECK(sizes == std::multiset<std::uint64_t>{2, 2, 3});
    }
    SUBCASE("a plane minus a line into lines") {
        const Flat line = enumerate_flats(s, 1).front();
        const Factor f(Flat::full(s), {line});
        const auto pieces = split_factor(f, 1);
        CHECK(pieces.size() == 2);
        for (const Factor& p : pieces) CHECK(p.size() == 2);
    }
}

TEST_CASE("split_factor partitions almost-flats into almost-flats") {
    std::mt19937_64 rng(7);
    for (auto [q, n] : {std::pair{2, 3}, {3, 3}, {3, 2}, {4, 2}}) {
        const SpacePtr s = Space::make(q, n);
        for (int d = 1; d <= n; ++d) {
            const auto flats = enumerate_flats(s, d);
            for (int trial = 0; trial < 6; ++trial) {
                const Flat base = flats[rng() % flats.size()];
                std::vector<Flat> holes;
                if (trial % 2 == 1) {
                    const int hd = static_cast<int>(rng() % static_cast<std::uint64_t>(d));
                    for (const Flat& h : enumerate_flats(s, hd))
                        if (base.contains(h)) {
                            holes.push_back(h);
                            break;
                        }
                }
                const Factor f(base, holes);
                CHECK(split_factor(f, d).size() == 1);
                CHECK_THROWS_AS(split_factor(f, d + 1), Error);
                for (int target = 0; target < d; ++target) {
                    const auto pieces = target == 0 ? split_into_points(f) : split_factor(f, target);
                    PointSet all = s->empty_set();
                    for (const Factor& p : pieces) {
                        CHECK(p.dim() == target);
                        CHECK(p.as_almost_flat().has_value());
                        CHECK(!p.points().intersects(all));
                        all |= p.points();
                    }
                    CHECK(all == f.points());
                }
            }
        }
    }
}

TEST_CASE("refine_to_minimal") {
    const SpacePtr s = Space::make(2, 2);
    const Factor plane(Flat::full(s));
    const Factor line(enumerate_flats(s, 1).front());
    SUBCASE("already minimal patterns come back unchanged") {
        const ProductPart lines{{line, line, line}, std::nullopt};
        const auto out = refine_to_minimal(lines);
        REQUIRE(out.size() == 1);
        CHECK(sets_of(out[0]) == sets_of(lines));
        const ProductPart p022{{Factor(Flat::point(s, 3)), plane, plane}, std::nullopt};
        CHECK(refine_to_minimal(p022).size() == 1);
    }
    SUBCASE("(2,2,2) refines into a partition of minimal parts") {
        const ProductPart full{{plane, plane, plane}, std::nullopt};
        const auto out = refine_to_minimal(full);
        std::set<std::vector<std::size_t>> got;
        std::size_t total = 0;
        for (const ProductPart& p : out) {
            std::vector<int> dims = p.pattern().dims;
            std::sort(dims.begin(), dims.end());
            const bool minimal = dims == std::vector<int>{1, 1, 1} || dims == std::vector<int>{0, 2, 2};
            CHECK(minimal);
            const auto t = tuples(sets_of(p));
            total += t.size();
            got.insert(t.begin(), t.end());
        }
        CHECK(total == 343);
        CHECK(got.size() == 343);
    }
    SUBCASE("dominated input is rejected") {
        const ProductPart dom{{Factor(Flat::point(s, 0)), line, plane}, std::nullopt};
        CHECK_THROWS_AS(refine_to_minimal(dom), Error);
    }
}

TEST_CASE("product minus products") {
    const SpacePtr s = Space::make(2, 2);
    const Factor plane(Flat::full(s));
    const auto lines = enumerate_flats(s, 1);
    const ProductPart base{{plane, plane}, std::nullopt};
    CHECK(product_minus_products_split(base, {}).size() == 1);

    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
        const int h = 1 + static_cast<int>(rng() % 3);
        std::vector<ProductPart> removed;
        for (int i = 0; i < h; ++i)
            removed.push_back(ProductPart{{Factor(lines[rng() % 7]), Factor(lines[rng() % 7])}, std::nullopt});
        const auto pieces = product_minus_products_split(base, removed);
        CHECK(pieces.size() <= ipow(2, h));
        std::set<std::vector<std::size_t>> want = tuples(sets_of(base));
        for (const ProductPart& r : removed)
            for (const auto& t : tuples(sets_of(r))) want.erase(t);
        std::set<std::vector<std::size_t>> got;
        std::size_t total = 0;
        for (const ProductPart& p : pieces) {
            const auto t = tuples(sets_of(p));
            total += t.size();
            got.insert(t.begin(), t.end());
        }
        CHECK(total == got.size());
        CHECK(got == want);
    }
}
