#include "doctest.h"
#include "test_support.hpp"

#include "projpart/dependence.hpp"
#include "projpart/error.hpp"
#include "projpart/experiments.hpp"

#include <random>

using namespace projpart;
using testing::ipow;

namespace {

std::uint64_t naive_count(const Space& space, const std::vector<PointSet>& factors) {
    std::vector<std::vector<std::size_t>> m;
    for (const PointSet& f : factors) m.push_back(f.members());
    std::uint64_t count = 0;
    testing::for_each_tuple(m, [&](const std::vector<std::size_t>& t) { count += testing::naive_dependent(space, t); });
    return count;
}

PointSet random_subset(const SpacePtr& s, std::mt19937_64& rng) {
    PointSet out = s->empty_set();
    while (out.empty())
        for (std::size_t p = 0; p < s->num_points(); ++p)
            if (rng() % 3 == 0) out.insert(p);
    return out;
}

std::vector<PointSet> part_sets(const ProductPart& part) {
    std::vector<PointSet> out;
    for (const Factor& f : part.factors) out.push_back(f.points());
    return out;
}

}  // namespace

TEST_CASE("count_dependent matches the coefficient search") {
    std::mt19937_64 rng(11);
    for (auto [q, n, k] : {std::tuple{2, 2, 2}, {2, 3, 3}, {3, 2, 2}, {3, 2, 3}, {4, 2, 2}, {3, 3, 3}, {5, 2, 2}}) {
        const SpacePtr s = Space::make(q, n);
        for (int trial = 0; trial < 4; ++trial) {
            std::vector<PointSet> f;
            std::uint64_t total = 1;
            for (int i = 0; i < k; ++i) {
                f.push_back(random_subset(s, rng));
                total *= f.back().count();
            }
            if (total > 100'000) continue;
            const DependentCount c = count_dependent(s, f);
            CAPTURE(q);
            CAPTURE(n);
            CHECK(c.mode == "exhaustive");
            CHECK(c.total == total);
            CHECK(c.count == naive_count(*s, f));
        }
    }
}

TEST_CASE("full products") {
    const SpacePtr s = Space::make(2, 2);
    std::vector<PointSet> f(2, s->full_set());
    const DependentCount c = count_dependent(s, f);
    CHECK(c.count == 7);
    CHECK(c.total == 49);
}

TEST_CASE("count_dependent is monotone under growing factors") {
    std::mt19937_64 rng(5);
    const SpacePtr s = Space::make(3, 2);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<PointSet> small{random_subset(s, rng), random_subset(s, rng)};
        std::vector<PointSet> big = small;
        big[trial % 2] |= random_subset(s, rng);
        CHECK(count_dependent(s, small).count <= count_dependent(s, big).count);
    }
}

TEST_CASE("sampling is opt-in and seeded") {
    const SpacePtr s = Space::make(3, 3);
    std::vector<PointSet> f(3, s->full_set());
    CountOptions exact;
    exact.exact_limit = 1000;
    CHECK_THROWS_AS(count_dependent(s, f, exact), Error);
    CountOptions sampled = exact;
    sampled.allow_sampling = true;
    sampled.sample_size = 20000;
    sampled.seed = 9;
    const DependentCount a = count_dependent(s, f, sampled);
    const DependentCount b = count_dependent(s, f, sampled);
    CHECK(a.mode == "sampled");
    CHECK(a.count == b.count);
    CHECK(a.seed == 9);
    CHECK(a.total == 20000);
    const double exact_fraction = static_cast<double>(count_dependent(s, f).count) / 64000.0;
    CHECK(a.fraction() == doctest::Approx(exact_fraction).epsilon(0.3));
}

TEST_CASE("fraction comparison") {
    CHECK(fraction_less(1, 3, 1, 2));
    CHECK(!fraction_less(1, 2, 2, 4));
    CHECK(fraction_less(UINT64_MAX - 1, UINT64_MAX, 1, 1));
}

TEST_CASE("general position") {
    const SpacePtr p2 = Space::make(2, 2);
    const auto l2 = enumerate_flats(p2, 1);
    std::vector<Flat> same{l2[0], l2[0]};
    CHECK(!is_general_position(same));
    for (std::size_t a = 0; a < 7; ++a)
        for (std::size_t b = a + 1; b < 7; ++b)
            for (std::size_t c = b + 1; c < 7; ++c) {
                const std::vector<Flat> three{l2[a], l2[b], l2[c]};
                CHECK(is_general_position(three));
            }
    CHECK_THROWS_AS(is_general_position(l2), Error);

    const SpacePtr p3 = Space::make(2, 3);
    const Flat plane = enumerate_flats(p3, 2).front();
    std::vector<Flat> inside;
    for (const Flat& l : enumerate_flats(p3, 1))
        if (plane.contains(l) && inside.size() < 3) inside.push_back(l);
    CHECK(!is_general_position(inside));
}

TEST_CASE("sylvester line") {
    const SpacePtr s = Space::make(2, 2);
    const auto lines = enumerate_flats(s, 1);
    const std::vector<Flat> one{lines[3]};
    const SylvesterResult r1 = sylvester_line(one);
    CHECK(r1.index == 0);
    CHECK(r1.intersections.empty());
    const std::vector<Flat> three{lines[0], lines[2], lines[5]};
    const SylvesterResult r3 = sylvester_line(three);
    CHECK(r3.intersections.count() <= 2);
    PointSet meets = s->empty_set();
    for (std::size_t i = 0; i < 3; ++i)
        if (i != r3.index) meets |= three[r3.index].points() & three[i].points();
    CHECK(meets == r3.intersections);
}

TEST_CASE("almost-line bound examples") {
    CHECK(lines_bound(3, 1) == 2);
    CHECK(lines_bound(3, 2) == 2);
    CHECK(lines_bound(5, 3) == 36);
    CHECK_THROWS_AS(lines_bound(2, 2), Error);

    const SpacePtr s3 = Space::make(3, 1);
    const Factor full(Flat::full(s3));
    const std::vector<Factor> two_full{full, full};
    CHECK(verify_lines_bound(s3, two_full).count == 4);

    const SpacePtr s4 = Space::make(4, 1);
    const std::vector<Factor> punctured{Factor(Flat::full(s4), {Flat::point(s4, 0)}), Factor(Flat::full(s4), {Flat::point(s4, 1)})};
    const LinesBoundReport r = verify_lines_bound(s4, punctured);
    CHECK(r.count == 3);
    CHECK(r.bound == 3);
    CHECK(r.holds);
    CHECK(almost_lines(Space::make(3, 2)).size() == 13 * 5);
}

TEST_CASE("sampled almost-line families respect the bound") {
    const LinesSample a = lines_sample(3, 3, 400, 2);
    const LinesSample b = lines_sample(3, 3, 400, 2);
    CHECK(a.ok());
    CHECK(a.min_count == b.min_count);
    CHECK(a.strata.size() == 4);
    for (const auto& [name, st] : a.strata) CHECK(st.samples == 100);
    CHECK_THROWS_AS(lines_sweep(3, 3), Error);
}

TEST_CASE("surgery examples") {
    const SpacePtr s = Space::make(3, 2);
    const Factor plane(Flat::full(s));
    SUBCASE("no leading points leaves the part alone") {
        const auto lines = enumerate_flats(s, 1);
        const ProductPart part{{Factor(lines[0]), Factor(lines[1]), Factor(lines[2])}, std::nullopt};
        const SurgeryResult r = surgery_reduce(part);
        CHECK(r.leading_points == 0);
        for (std::size_t i = 0; i < 3; ++i) CHECK(r.reduced.factors[i].points() == part.factors[i].points());
    }
    SUBCASE("flat factors lose S") {
        const ProductPart part{{Factor(Flat::point(s, 4)), plane, plane}, std::nullopt};
        const SurgeryResult r = surgery_reduce(part);
        CHECK(r.leading_points == 1);
        PointSet want = s->full_set();
        want.erase(4);
        CHECK(r.reduced.factors[1].points() == want);
        CHECK(r.reduced.factors[2].points() == want);
        CHECK(r.after.count * r.before.total <= r.before.count * r.after.total);
    }
}

TEST_CASE("surgery never raises the dependent fraction") {
    std::mt19937_64 rng(21);
    const SpacePtr s = Space::make(3, 2);
    for (int trial = 0; trial < 60; ++trial) {
        const ProductPart part = random_minimal_part(s, 3, rng);
        const SurgeryResult r = surgery_reduce(part);
        const auto before = part_sets(part), after = part_sets(r.reduced);
        std::uint64_t tb = 1, ta = 1;
        for (const PointSet& f : before) tb *= f.count();
        for (const PointSet& f : after) ta *= f.count();
        const std::uint64_t cb = naive_count(*s, before), ca = naive_count(*s, after);
        CHECK(cb == r.before.count);
        CHECK(ca == r.after.count);
        CHECK(!fraction_less(cb, tb, ca, ta));
    }
}

TEST_CASE("rational rank") {
    const std::vector<int> id{1, 0, 0, 0, 1, 0, 0, 0, 1};
    CHECK(rational_rank(id, 3, 3) == 3);
    const std::vector<int> low{1, 2, 3, 2, 4, 6, 0, 1, 1};
    CHECK(rational_rank(low, 3, 3) == 2);
    const std::vector<int> zero(6, 0);
    CHECK(rational_rank(zero, 2, 3) == 0);
}

TEST_CASE("biclique partitions") {
    for (int n = 2; n <= 4; ++n) {
        const BicliqueResult with = min_biclique_partition(n, true);
        const BicliqueResult without = min_biclique_partition(n, false);
        CHECK(with.minimum == n);
        CHECK(without.minimum == n);
        CHECK(with.nodes <= without.nodes);
    }
    CHECK_THROWS_AS(min_biclique_partition(6), Error);
}

TEST_CASE("almost-flat bound") {
    CHECK(almostflat_bound(3, 2) == std::pair<std::uint64_t, std::uint64_t>{1, 16});
    CHECK(almostflat_bound(4, 3) == std::pair<std::uint64_t, std::uint64_t>{4, 125});

    std::mt19937_64 rng(4);
    const SpacePtr s = Space::make(3, 1);
    for (int trial = 0; trial < 20; ++trial) {
        const ProductPart part{{random_almost_flat(s, 1, rng), random_almost_flat(s, 1, rng)}, std::nullopt};
        const auto sets = part_sets(part);
        const std::uint64_t total = sets[0].count() * sets[1].count();
        CHECK(!fraction_less(naive_count(*s, sets), total, 1, 16));
        CHECK(almostflat_fraction_check(part).ok());
    }
}

TEST_CASE("a dependent point prefix makes every tuple dependent") {
    const SpacePtr s = Space::make(2, 3);
    const Factor p(Flat::point(s, 2));
    const Factor full(Flat::full(s));
    const ProductPart part{{p, p, full, full}, std::nullopt};
    const DependentCount c = count_dependent(part);
    CHECK(c.count == c.total);
    CHECK(surgery_reduce(part).dependent_prefix);
}
