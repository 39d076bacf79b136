#include "doctest.h"
#include "test_support.hpp"

#include "projpart/error.hpp"
#include "projpart/gfq.hpp"
#include "projpart/projgeom.hpp"

#include <set>

using namespace projpart;
using testing::ipow;

TEST_CASE("field construction") {
    const FieldPtr f2 = Field::make(2);
    CHECK(f2->p() == 2);
    CHECK(f2->m() == 1);
    const FieldPtr f4 = Field::make(4);
    CHECK(f4->p() == 2);
    CHECK(f4->m() == 2);
    // x^2 + x + 1, low degree first
    CHECK(f4->reduction_poly() == std::vector<int>{1, 1, 1});
    for (int bad : {6, 10, 12, 65, 0, 1}) CHECK_THROWS_AS(Field::make(bad), Error);
    try {
        Field::make(6);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotPrimePower);
    }
}

TEST_CASE("field arithmetic examples") {
    const FieldPtr f2 = Field::make(2), f3 = Field::make(3), f4 = Field::make(4);
    CHECK(f2->add(1, 1) == 0);
    CHECK(f3->mul(2, 2) == 1);
    // x is code 2, x + 1 is code 3
    CHECK(f4->mul(2, 2) == 3);
    CHECK_THROWS_AS(f3->div(1, 0), Error);
    const FieldElement a(f4, 2), b(f4, 3);
    CHECK((a * b).repr() == 1);
    CHECK(field_arith(a, b, FieldOp::add).repr() == 1);
    CHECK_THROWS_AS(field_arith(a, FieldElement(f3, 1), FieldOp::add), Error);
}

TEST_CASE("field axioms hold for every supported order") {
    for (int q = 2; q <= 64; ++q) {
        if (!is_prime(q)) {
            int p = 2;
            while (q % p != 0) ++p;
            int r = q;
            while (r % p == 0) r /= p;
            if (r != 1) continue;
        }
        const FieldPtr f = Field::make(q);
        CAPTURE(q);
        int nonzero_units = 0;
        for (int a = 0; a < q; ++a) {
            const auto ea = static_cast<Elem>(a);
            CHECK(f->add(ea, f->neg(ea)) == 0);
            CHECK(f->mul(ea, 1) == ea);
            if (a != 0) {
                CHECK(f->mul(ea, f->inv(ea)) == 1);
                ++nonzero_units;
            }
            for (int b = 0; b < q; b += 3)
                for (int c = 0; c < q; c += 5) {
                    const auto eb = static_cast<Elem>(b), ec = static_cast<Elem>(c);
                    CHECK(f->mul(ea, f->add(eb, ec)) == f->add(f->mul(ea, eb), f->mul(ea, ec)));
                    CHECK(f->mul(f->mul(ea, eb), ec) == f->mul(ea, f->mul(eb, ec)));
                }
        }
        CHECK(nonzero_units == q - 1);
    }
}

TEST_CASE("point enumeration") {
    for (auto [q, n] : {std::pair{2, 2}, {3, 2}, {4, 3}, {5, 2}, {9, 2}, {2, 5}}) {
        const SpacePtr s = Space::make(q, n);
        CHECK(s->num_points() == (ipow(q, n + 1) - 1) / (q - 1));
        CHECK(point_count(q, n) == s->num_points());
        std::vector<Elem> prev;
        for (std::size_t i = 0; i < s->num_points(); ++i) {
            const auto c = s->coords(i);
            std::vector<Elem> v(c.begin(), c.end());
            std::size_t lead = 0;
            while (lead < v.size() && v[lead] == 0) ++lead;
            REQUIRE(lead < v.size());
            CHECK(v[lead] == 1);
            CHECK(s->index_of(c) == i);
            if (i > 0) CHECK(prev < v);
            prev = v;
        }
    }
}

TEST_CASE("span examples") {
    const SpacePtr s = Space::make(2, 2);
    CHECK(span(s, std::vector<std::size_t>{}).dim() == -1);
    const std::vector<std::size_t> same{4, 4};
    CHECK(span(s, same).dim() == 0);
    CHECK(span(s, same).size() == 1);
    const std::vector<std::size_t> two{1, 5};
    const Flat line = span(s, two);
    CHECK(line.dim() == 1);
    CHECK(line.size() == 3);
    CHECK(line == span(s, std::vector<std::size_t>{5, 1}));
}

TEST_CASE("dependence of pairs in the Fano plane") {
    const SpacePtr s = Space::make(2, 2);
    int dependent = 0;
    for (std::size_t a = 0; a < 7; ++a)
        for (std::size_t b = 0; b < 7; ++b) {
            const std::vector<std::size_t> t{a, b};
            const bool d = is_dependent(*s, t);
            CHECK(d == (a == b));
            dependent += d;
        }
    CHECK(dependent == 7);
}

TEST_CASE("dependence agrees with the coefficient search") {
    for (auto [q, n] : {std::pair{2, 3}, {3, 2}, {4, 2}, {3, 3}}) {
        const SpacePtr s = Space::make(q, n);
        const std::size_t np = s->num_points();
        for (std::size_t a = 0; a < np; a += 2)
            for (std::size_t b = 0; b < np; b += 3)
                for (std::size_t c = 0; c < np; c += 5) {
                    const std::vector<std::size_t> t{a, b, c};
                    CHECK(is_dependent(*s, t) == testing::naive_dependent(*s, t));
                }
    }
}

TEST_CASE("flat counts") {
    CHECK(count_flats(2, 1, 2) == 7);
    CHECK(count_flats(2, 0, 3) == 13);
    CHECK(count_flats(3, 1, 3) == 130);
    for (auto [q, n] : {std::pair{2, 3}, {3, 2}, {3, 3}, {4, 2}}) {
        const SpacePtr s = Space::make(q, n);
        for (int k = -1; k <= n; ++k) {
            const auto flats = enumerate_flats(s, k);
            CHECK(flats.size() == count_flats(n, k, q));
            std::set<std::vector<Elem>> bases;
            for (const Flat& f : flats) {
                CHECK(f.dim() == k);
                CHECK(f.size() == (ipow(q, k + 1) - 1) / (q - 1));
                bases.emplace(f.basis().begin(), f.basis().end());
            }
            CHECK(bases.size() == flats.size());
        }
    }
}

TEST_CASE("join and meet follow the dimension formula") {
    const SpacePtr s = Space::make(3, 3);
    const auto lines = enumerate_flats(s, 1);
    const auto planes = enumerate_flats(s, 2);
    for (std::size_t i = 0; i < lines.size(); i += 7)
        for (std::size_t j = 0; j < planes.size(); j += 5) {
            const Flat m = meet(lines[i], planes[j]);
            const Flat jn = join(lines[i], planes[j]);
            CHECK(m.dim() + jn.dim() == lines[i].dim() + planes[j].dim());
            CHECK(m.points() == (lines[i].points() & planes[j].points()));
        }
}

TEST_CASE("quotient examples") {
    const SpacePtr s = Space::make(2, 2);
    SUBCASE("by the empty flat") {
        const Quotient quo(Flat::empty(s));
        CHECK(quo.class_count() == 7);
        CHECK(quo.quotient_dim() == 2);
    }
    SUBCASE("by a point") {
        const Quotient quo(Flat::point(s, 0));
        CHECK(quo.class_count() == 3);
        CHECK(quo.quotient_dim() == 1);
        for (std::size_t c = 0; c < 3; ++c) {
            const PointSet& m = quo.class_members(c);
            CHECK(m.count() == 2);
            // each class is a line through the point, minus the point
            PointSet with = m;
            with.insert(0);
            CHECK(span(s, with).dim() == 1);
            CHECK(quo.class_rep(m.first()) == m.first());
        }
    }
    SUBCASE("flats disjoint from S keep their dimension") {
        const SpacePtr s3 = Space::make(3, 3);
        const Flat by = Flat::point(s3, 0);
        const Quotient quo(by);
        for (const Flat& l : enumerate_flats(s3, 1)) {
            if (l.contains(0)) {
                CHECK(quo.image(l).dim() == 0);
            } else {
                CHECK(quo.image(l).dim() == 1);
            }
        }
    }
}

TEST_CASE("class sizes are q^(dim S + 1)") {
    const SpacePtr s = Space::make(3, 3);
    for (int d = 0; d <= 1; ++d) {
        const Flat by = enumerate_flats(s, d).front();
        const Quotient quo(by);
        CHECK(quo.class_count() == quo.quotient_space()->num_points());
        for (std::size_t c = 0; c < quo.class_count(); ++c) CHECK(quo.class_members(c).count() == ipow(3, d + 1));
    }
}
