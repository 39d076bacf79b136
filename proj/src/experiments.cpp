#include "projpart/experiments.hpp"

#include "projpart/error.hpp"
#include "projpart/parallel.hpp"

#include <algorithm>
#include <unordered_map>

namespace projpart {

namespace {

std::string describe(const PointSet& s) {
    std::string out = "{";
    s.for_each([&](std::size_t p) { out += (out.size() > 1 ? "," : "") + std::to_string(p); });
    return out + "}";
}

std::size_t pick_member(const PointSet& s, std::mt19937_64& rng) {
    const auto members = s.members();
    std::uniform_int_distribution<std::size_t> d(0, members.size() - 1);
    return members[d(rng)];
}

// Calls fn on every increasing index tuple of length `len` over [0, count),
// non-decreasing when repeats are allowed.
template <typename Fn>
void for_each_combination(std::size_t count, std::size_t len, bool repeats, Fn&& fn) {
    if (len == 0 || (!repeats && len > count) || count == 0) return;
    std::vector<std::size_t> idx(len);
    for (std::size_t i = 0; i < len; ++i) idx[i] = repeats ? 0 : i;
    while (true) {
        fn(idx);
        std::size_t i = len;
        while (i > 0) {
            --i;
            const std::size_t limit = repeats ? count - 1 : count - len + i;
            if (idx[i] < limit) {
                ++idx[i];
                for (std::size_t j = i + 1; j < len; ++j) idx[j] = repeats ? idx[i] : idx[j - 1] + 1;
                break;
            }
            if (i == 0) return;
        }
    }
}

// Every tuple in [0, N)^len, in lexicographic order.
template <typename Fn>
void for_each_tuple(std::size_t N, std::size_t len, Fn&& fn) {
    std::vector<std::size_t> t(len, 0);
    while (true) {
        fn(t);
        std::size_t i = len;
        while (i > 0 && ++t[i - 1] == N) t[--i] = 0;
        if (i == 0) return;
    }
}

}  // namespace

Flat random_flat(const Flat& within, int dim, std::mt19937_64& rng) {
    if (dim > within.dim()) fail(ErrorCode::DimOutOfRange, "flat larger than its container");
    Flat cur = Flat::empty(within.space());
    while (cur.dim() < dim) cur = join(cur, Flat::point(within.space(), pick_member(within.points() - cur.points(), rng)));
    return cur;
}

Factor random_almost_flat(const SpacePtr& space, int dim, std::mt19937_64& rng) {
    Flat base = random_flat(Flat::full(space), dim, rng);
    if (dim < 1 || std::uniform_int_distribution<int>(0, 1)(rng) == 0) return Factor(std::move(base));
    const int hole_dim = std::uniform_int_distribution<int>(0, dim - 1)(rng);
    Flat hole = random_flat(base, hole_dim, rng);
    return Factor(std::move(base), {std::move(hole)});
}

// ------------------------------------------------------------ Sylvester-Gallai

SylvesterSweep sylvester_sweep(int q, int n) {
    const SpacePtr space = Space::make(q, n);
    const auto lines = enumerate_flats(space, 1);
    SylvesterSweep sw;
    sw.q = q;
    sw.n = n;
    for (std::size_t len = 1; len <= static_cast<std::size_t>(n) + 1; ++len) {
        for_each_combination(lines.size(), len, false, [&](const std::vector<std::size_t>& idx) {
            std::vector<Flat> fam;
            for (std::size_t i : idx) fam.push_back(lines[i]);
            if (!is_general_position(fam)) return;
            ++sw.families;
            const SylvesterResult r = sylvester_line(fam);
            const std::size_t hits = r.intersections.count();
            sw.max_intersections = std::max(sw.max_intersections, hits);
            if (hits > 2) ++sw.violations;
            // A prefix of i lines spans an i-flat; the (n+1)-th line stays in the space.
            for (std::size_t i = 0; i < r.chain_dims.size(); ++i)
                if (r.chain_dims[i] != std::min(static_cast<int>(i) + 1, n)) {
                    ++sw.chain_breaks;
                    break;
                }
        });
    }
    return sw;
}

// ------------------------------------------------------------ almost-lines

LinesSweep lines_sweep(int q, int n) {
    const SpacePtr space = Space::make(q, n);
    const auto fam = almost_lines(space);
    LinesSweep sw;
    sw.q = q;
    sw.n = n;
    sw.bound = lines_bound(q, n);
    sw.min_count = UINT64_MAX;
    std::vector<PointSet> sets;
    for (const Factor& f : fam) sets.push_back(f.points());
    // C(|fam| + n, n + 1) unordered families.
    double families = 1;
    for (int i = 0; i <= n; ++i) families = families * static_cast<double>(fam.size() + i) / (i + 1);
    if (families > static_cast<double>(max_line_families))
        fail(ErrorCode::TooLargeForExact, "too many almost-line families for exhaustive search; use sampling");

    // Shard by the first member of the family; merged in shard order.
    struct Shard {
        std::uint64_t families = 0, violations = 0, min = UINT64_MAX;
        std::vector<std::size_t> argmin;
    };
    const std::size_t len = static_cast<std::size_t>(n) + 1;
    std::vector<Shard> shards(fam.size());
    parallel_shards(fam.size(), [&](std::size_t first) {
        Shard& sh = shards[first];
        auto visit = [&](const std::vector<std::size_t>& rest) {
            std::vector<PointSet> prod{sets[first]};
            for (std::size_t i : rest) prod.push_back(sets[first + i]);
            const std::uint64_t c = count_dependent(space, prod).count;
            ++sh.families;
            if (c < sw.bound) ++sh.violations;
            if (c < sh.min) {
                sh.min = c;
                sh.argmin = {first};
                for (std::size_t i : rest) sh.argmin.push_back(first + i);
            }
        };
        if (len == 1)
            visit({});
        else
            for_each_combination(fam.size() - first, len - 1, true, visit);
    });
    std::vector<std::size_t> argmin;
    for (const Shard& sh : shards) {
        sw.families += sh.families;
        sw.violations += sh.violations;
        if (sh.min < sw.min_count) {
            sw.min_count = sh.min;
            argmin = sh.argmin;
        }
    }
    for (std::size_t i : argmin) sw.argmin.push_back(describe(sets[i]));
    if (n == 1) {
        const Flat line = Flat::full(space);
        const Factor a(line, {Flat::point(space, 0)});
        const Factor b(line, {Flat::point(space, 1)});
        const PointSet pair[] = {a.points(), b.points()};
        sw.tight_pair = count_dependent(space, pair).count;
    }
    return sw;
}

LinesSample lines_sample(int q, int n, std::uint64_t samples, std::uint64_t seed) {
    const SpacePtr space = Space::make(q, n);
    const std::uint64_t bound = lines_bound(q, n);
    const Flat full = Flat::full(space);
    std::mt19937_64 rng(seed);
    auto coin = [&] { return std::uniform_int_distribution<int>(0, 1)(rng) == 1; };
    auto punctured = [&](const Flat& line) {
        return coin() ? line.points() : line.points() - Flat::point(space, pick_member(line.points(), rng)).points();
    };
    const std::vector<std::string> names{"random", "concurrent", "coincident", "coplanar"};
    std::vector<std::pair<std::size_t, std::vector<PointSet>>> families;
    for (std::uint64_t s = 0; s < samples; ++s) {
        const std::size_t stratum = s % names.size();
        std::vector<PointSet> fam;
        if (stratum == 0) {
            for (int i = 0; i <= n; ++i) fam.push_back(punctured(random_flat(full, 1, rng)));
        } else if (stratum == 1) {
            const Flat centre = random_flat(full, 0, rng);
            for (int i = 0; i <= n; ++i)
                fam.push_back(punctured(join(centre, Flat::point(space, pick_member(space->full_set() - centre.points(), rng)))));
        } else if (stratum == 2) {
            const Flat line = random_flat(full, 1, rng);
            for (int i = 0; i <= n; ++i) fam.push_back(punctured(line));
        } else {
            const Flat plane = random_flat(full, std::min(2, n), rng);
            for (int i = 0; i <= n; ++i) fam.push_back(punctured(random_flat(plane, 1, rng)));
        }
        families.emplace_back(stratum, std::move(fam));
    }
    std::vector<std::uint64_t> counts(samples);
    parallel_shards(samples, [&](std::size_t s) { counts[s] = count_dependent(space, families[s].second).count; });

    LinesSample out;
    out.q = q;
    out.n = n;
    out.samples = samples;
    out.seed = seed;
    out.bound = bound;
    out.min_count = UINT64_MAX;
    for (std::uint64_t s = 0; s < samples; ++s) {
        LinesStratum& st = out.strata[names[families[s].first]];
        st.min_count = st.samples == 0 ? counts[s] : std::min(st.min_count, counts[s]);
        ++st.samples;
        const bool bad = counts[s] < bound;
        st.violations += bad;
        out.violations += bad;
        out.min_count = std::min(out.min_count, counts[s]);
    }
    if (samples == 0) out.min_count = 0;
    return out;
}

// ------------------------------------------------------------ quotient claims

ClaimsReport quotient_claims(int q, int n) {
    const SpacePtr space = Space::make(q, n);
    const std::size_t N = space->num_points();
    ClaimsReport rep;
    rep.q = q;
    rep.n = n;
    auto note = [&](const std::string& s) {
        if (rep.counterexamples.size() < 5) rep.counterexamples.push_back(s);
    };
    auto tuple_str = [](const std::vector<std::size_t>& t) {
        std::string s = "(";
        for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
        return s + ")";
    };

    std::vector<Flat> flats;
    for (int d = -1; d <= n; ++d)
        for (Flat& f : enumerate_flats(space, d)) flats.push_back(std::move(f));
    std::unordered_map<Flat, Quotient, FlatHash> quotients;
    for (const Flat& f : flats)
        if (f.dim() < n) quotients.emplace(f, Quotient(f));

    // Invariance of dependence under the quotient by p_1.
    for (std::size_t len = 2; len <= static_cast<std::size_t>(n) + 1; ++len) {
        for_each_tuple(N, len, [&](const std::vector<std::size_t>& t) {
            if (std::find(t.begin() + 1, t.end(), t[0]) != t.end()) return;
            const Quotient& quo = quotients.at(Flat::point(space, t[0]));
            std::vector<std::size_t> img;
            for (std::size_t i = 1; i < t.size(); ++i) img.push_back(quo.class_of(t[i]));
            ++rep.invariance_checked;
            if (is_dependent(*space, t) != is_dependent(*quo.quotient_space(), img)) {
                ++rep.invariance_violations;
                note("invariance " + tuple_str(t));
            }
        });
    }

    // Uniform intersection sizes |C n F'| over the classes C of F/S meeting F'.
    for (const Flat& S : flats) {
        if (S.dim() == n) continue;
        const Quotient& quo = quotients.at(S);
        for (const Flat& F : flats) {
            for (const Flat& Fp : flats) {
                if (!F.contains(Fp)) continue;
                std::unordered_map<std::size_t, std::size_t> sizes;
                (Fp.points() - S.points()).for_each([&](std::size_t x) { ++sizes[quo.class_of(x)]; });
                if (sizes.empty()) continue;
                ++rep.intersection_checked;
                const std::size_t first = sizes.begin()->second;
                if (std::any_of(sizes.begin(), sizes.end(), [&](const auto& kv) { return kv.second != first; })) {
                    ++rep.intersection_violations;
                    note("intersection S dim " + std::to_string(S.dim()) + ", F' " + describe(Fp.points()));
                }
            }
        }
    }

    // Dependence depends only on the class of q_j modulo span(p_1..p_k).
    for (std::size_t len = 2; len <= static_cast<std::size_t>(n) + 1; ++len) {
        for_each_tuple(N, len, [&](const std::vector<std::size_t>& t) {
            const bool dep = is_dependent(*space, t);
            std::vector<std::size_t> alt = t;
            for (std::size_t k = 1; k < len; ++k) {
                const Flat S = span(space, std::span(t.data(), k));
                const Quotient& quo = quotients.at(S);
                for (std::size_t j = k; j < len; ++j) {
                    if (S.contains(t[j])) continue;
                    quo.class_members(quo.class_of(t[j])).for_each([&](std::size_t other) {
                        if (other == t[j]) return;
                        alt[j] = other;
                        ++rep.class_checked;
                        if (is_dependent(*space, alt) != dep) {
                            ++rep.class_violations;
                            note("class " + tuple_str(t) + " -> " + tuple_str(alt));
                        }
                    });
                    alt[j] = t[j];
                }
            }
        });
    }
    return rep;
}

// ------------------------------------------------------------ surgery

ProductPart random_minimal_part(const SpacePtr& space, int factors, std::mt19937_64& rng) {
    if (space->dim() != factors - 1 || factors < 2) fail(ErrorCode::DimOutOfRange, "expected n >= 2 factors in F_qP^{n-1}");
    const int k = std::uniform_int_distribution<int>(0, factors - 2)(rng);
    ProductPart part;
    std::uniform_int_distribution<std::size_t> pt(0, space->num_points() - 1);
    for (int i = 0; i < k; ++i) part.factors.emplace_back(Flat::point(space, pt(rng)));
    for (int i = k; i < factors; ++i) part.factors.push_back(random_almost_flat(space, k + 1, rng));
    return part;
}

SurgerySweep surgery_sweep(int q, int n, std::uint64_t samples, std::uint64_t seed) {
    const SpacePtr space = Space::make(q, n - 1);
    std::mt19937_64 rng(seed);
    std::vector<ProductPart> parts;
    for (std::uint64_t s = 0; s < samples; ++s) parts.push_back(random_minimal_part(space, n, rng));

    struct Outcome {
        bool increased = false, class_union = true, dependent_prefix = false;
        double drop = 0;
        std::vector<std::string> choices;
    };
    std::vector<Outcome> out(samples);
    parallel_shards(samples, [&](std::size_t s) {
        const ProductPart& part = parts[s];
        const SurgeryResult r = surgery_reduce(part);
        Outcome& o = out[s];
        o.dependent_prefix = r.dependent_prefix;
        o.choices = r.choices;
        o.increased = fraction_less(r.before.count, r.before.total, r.after.count, r.after.total);
        o.drop = r.before.fraction() - r.after.fraction();
        if (r.dependent_prefix || r.leading_points == 0) return;
        const Quotient quo(r.by);
        for (std::size_t i = static_cast<std::size_t>(r.leading_points); i < part.factors.size(); ++i) {
            const PointSet& P = r.reduced.factors[i].points();
            const PointSet F = part.factors[i].as_almost_flat()->base.points();
            if (P.intersects(r.by.points()) || P != (quo.preimage(quo.image(P)) & F)) o.class_union = false;
        }
    });
    SurgerySweep sw;
    sw.q = q;
    sw.n = n;
    sw.samples = samples;
    sw.seed = seed;
    for (const Outcome& o : out) {
        sw.increased += o.increased;
        sw.not_class_union += !o.class_union;
        sw.dependent_prefix += o.dependent_prefix;
        sw.max_drop = std::max(sw.max_drop, o.drop);
        for (const std::string& c : o.choices) ++sw.choices[c];
    }
    return sw;
}

// ------------------------------------------------------------ almost-flat lemma

AlmostFlatSweep almostflat_sweep(int q, int n, std::uint64_t samples, std::uint64_t seed) {
    if (n < 2) fail(ErrorCode::DimOutOfRange, "need n >= 2");
    const SpacePtr space = Space::make(q, n - 1);
    std::mt19937_64 rng(seed);
    std::vector<ProductPart> parts;
    std::uniform_int_distribution<int> dim(0, n - 1);
    while (parts.size() < samples) {
        std::vector<int> dims(n);
        for (int& d : dims) d = dim(rng);
        std::vector<int> sorted = dims;
        std::sort(sorted.begin(), sorted.end());
        if (DimensionPattern{sorted}.dominated()) continue;
        ProductPart part;
        for (int d : dims) part.factors.push_back(random_almost_flat(space, d, rng));
        parts.push_back(std::move(part));
    }
    std::vector<AlmostFlatCheck> checks(samples);
    parallel_shards(samples, [&](std::size_t s) { checks[s] = almostflat_fraction_check(parts[s]); });

    AlmostFlatSweep sw;
    sw.q = q;
    sw.n = n;
    sw.samples = samples;
    sw.seed = seed;
    std::tie(sw.bound_num, sw.bound_den) = almostflat_bound(q, n);
    for (const AlmostFlatCheck& c : checks) {
        sw.failures += !c.ok();
        sw.direct_failures += !c.direct_holds;
        sw.pipeline_failures += !c.pipeline_holds;
        sw.pipeline_tighter += fraction_less(c.pipeline_count, c.pipeline_total, c.direct.count, c.direct.total);
        if (fraction_less(c.direct.count, c.direct.total, sw.min_direct_count, sw.min_direct_total)) {
            sw.min_direct_count = c.direct.count;
            sw.min_direct_total = c.direct.total;
        }
        if (fraction_less(c.pipeline_count, c.pipeline_total, sw.min_pipeline_count, sw.min_pipeline_total)) {
            sw.min_pipeline_count = c.pipeline_count;
            sw.min_pipeline_total = c.pipeline_total;
        }
    }
    return sw;
}

}  // namespace projpart
