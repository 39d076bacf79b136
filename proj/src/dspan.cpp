#include "projpart/dspan.hpp"

#include "projpart/bounds.hpp"
#include "projpart/error.hpp"
#include "projpart/parallel.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

namespace projpart {

OracleAnswer oracle(const Instance& inst, const Flat& x) {
    const int n = inst.space->dim();
    if (x.space() != inst.space) fail(ErrorCode::AmbientMismatch, "query from another projective space");
    if (x.dim() != n - 1) fail(ErrorCode::BadQueryDim, "query must be an (n-1)-flat, got dimension " + std::to_string(x.dim()));
    if (static_cast<int>(inst.points.size()) != n) fail(ErrorCode::InvalidArgument, "an instance has exactly n points");
    for (std::size_t i = 0; i < inst.points.size(); ++i)
        if (!x.contains(inst.points[i])) return OracleAnswer::reject(static_cast<int>(i) + 1);
    return OracleAnswer::accept();
}

std::string DecisionTrace::key() const {
    std::string k;
    for (const QueryRecord& r : queries) k += r.answer.yes ? "Y;" : std::to_string(r.answer.index) + ";";
    return k;
}

int DecisionTrace::no_count(int index) const {
    return static_cast<int>(std::count_if(queries.begin(), queries.end(), [&](const QueryRecord& r) {
        return !r.answer.yes && r.answer.index == index;
    }));
}

std::uint64_t query_bound(int q, int n) {
    const auto nn = static_cast<std::uint64_t>(n);
    return nn * nn * static_cast<std::uint64_t>(q + 1) + 1;
}

DecisionTrace solve(const SpacePtr& space, const OracleFn& ask) {
    const int n = space->dim();
    const Field& field = space->field();
    const int q = space->q();
    DecisionTrace trace;
    trace.space = space;
    auto query = [&](const Flat& x) {
        const OracleAnswer a = ask(x);
        trace.queries.push_back({x, a});
        return a;
    };

    Flat S = Flat::empty(space);
    for (int i = 1; i <= n; ++i) {
        std::vector<int> free;
        for (int j = 0; j < space->width(); ++j)
            if (std::find(S.pivots().begin(), S.pivots().end(), j) == S.pivots().end()) free.push_back(j);
        const int w = static_cast<int>(free.size());

        // Hyperplane through S cut out by sum_j c_j u_j on the coordinates u
        // of a vector reduced modulo S.
        auto hyperplane = [&](const std::vector<Elem>& c) {
            std::vector<Elem> a(space->width(), 0);
            for (int j = 0; j < w; ++j) a[free[j]] = c[j];
            for (int r = 0; r < S.rank(); ++r) {
                Elem s = 0;
                const auto row = S.row(r);
                for (int j = 0; j < w; ++j) s = field.add(s, field.mul(c[j], row[free[j]]));
                a[S.pivots()[r]] = field.neg(s);
            }
            return Flat::hyperplane(space, a);
        };
        // v_1..v_{i-1} lie in S, so only v_i can be reported.
        auto contains_vi = [&](const std::vector<Elem>& c) {
            const OracleAnswer a = query(hyperplane(c));
            return a.yes || a.index != i;
        };

        std::vector<Elem> u(w, 0);
        int lead = -1;
        for (int j = 0; j < w && lead < 0; ++j) {
            std::vector<Elem> c(w, 0);
            c[j] = 1;
            if (!contains_vi(c)) lead = j;
        }
        if (lead < 0) continue;  // v_i already in S
        u[lead] = 1;
        for (int j = lead + 1; j < w; ++j) {
            u[j] = static_cast<Elem>(q - 1);
            for (int t = 0; t < q - 1; ++t) {
                std::vector<Elem> c(w, 0);
                c[j] = 1;
                c[lead] = field.neg(static_cast<Elem>(t));
                if (contains_vi(c)) {
                    u[j] = static_cast<Elem>(t);
                    break;
                }
            }
        }
        std::vector<Elem> v(space->width(), 0);
        for (int j = 0; j < w; ++j) v[free[j]] = u[j];
        S = join(S, Flat::from_rows(space, v, 1));
    }
    const Flat L = extend_to_dim(S, n - 1);
    if (query(L).yes) trace.output = L;
    return trace;
}

DecisionTrace solve(const Instance& inst) {
    return solve(inst.space, [&](const Flat& x) { return oracle(inst, x); });
}

namespace {

struct WorkFactor {
    Flat base;
    std::vector<Flat> holes;

    void normalize() {
        std::vector<Flat> kept;
        for (const Flat& h : holes) {
            if (h.rank() == 0) continue;
            const bool covered = std::any_of(holes.begin(), holes.end(), [&](const Flat& o) {
                return o.contains(h) && (o.rank() > h.rank() || (o == h && &o < &h));
            });
            if (!covered) kept.push_back(h);
        }
        std::sort(kept.begin(), kept.end());
        holes = std::move(kept);
    }
    void intersect(const Flat& x) {
        base = meet(base, x);
        for (Flat& h : holes) h = meet(h, x);
        normalize();
    }
    void subtract(const Flat& x) {
        holes.push_back(meet(base, x));
        normalize();
    }
};

}  // namespace

std::vector<Factor> induced_part(const DecisionTrace& trace) {
    const SpacePtr& space = trace.space;
    if (!space) fail(ErrorCode::InvalidArgument, "trace has no space");
    const int n = space->dim();
    std::vector<WorkFactor> work(n, WorkFactor{Flat::full(space), {}});
    for (std::size_t s = 0; s < trace.queries.size(); ++s) {
        const QueryRecord& r = trace.queries[s];
        if (r.query.space() != space) fail(ErrorCode::AmbientMismatch, "query from another projective space");
        if (r.query.dim() != n - 1) fail(ErrorCode::BadQueryDim, "query must be an (n-1)-flat");
        const int upto = r.answer.yes ? n : r.answer.index - 1;
        if (!r.answer.yes && (r.answer.index < 1 || r.answer.index > n))
            fail(ErrorCode::InconsistentTrace, "answer index out of range at query " + std::to_string(s + 1));
        for (int j = 0; j < upto; ++j) work[j].intersect(r.query);
        if (!r.answer.yes) work[r.answer.index - 1].subtract(r.query);
    }
    std::vector<Factor> out;
    for (int j = 0; j < n; ++j) {
        auto f = Factor::try_make(work[j].base, work[j].holes);
        if (!f) fail(ErrorCode::InconsistentTrace, "no point is consistent with the trace at position " + std::to_string(j + 1));
        out.push_back(std::move(*f));
    }
    return out;
}

namespace {

std::uint64_t instance_count(int q, int n) {
    std::uint64_t total = 1;
    const std::uint64_t N = point_count(q, n);
    for (int i = 0; i < n; ++i)
        if (__builtin_mul_overflow(total, N, &total)) fail(ErrorCode::Overflow, "instance count overflows");
    return total;
}

void decode(std::uint64_t code, std::size_t N, std::vector<std::size_t>& pts) {
    for (std::size_t i = pts.size(); i-- > 0;) {
        pts[i] = code % N;
        code /= N;
    }
}

bool contains_all(const DecisionTrace& t, const std::vector<std::size_t>& pts) {
    return t.output && std::all_of(pts.begin(), pts.end(), [&](std::size_t p) { return t.output->contains(p); });
}

}  // namespace

LeafPartition leaf_partition(int q, int n) {
    if (n < 1) fail(ErrorCode::DimOutOfRange, "need n >= 1");
    const SpacePtr space = Space::make(q, n);
    const std::uint64_t total = instance_count(q, n);
    if (total > max_leaf_instances) fail(ErrorCode::TooLarge, std::to_string(total) + " instances exceed the exhaustive sweep limit");
    const std::size_t N = space->num_points();

    struct Leaf {
        DecisionTrace trace;
        std::uint64_t count = 0;
    };
    struct Shard {
        std::vector<Leaf> leaves;
        std::unordered_map<std::string, std::size_t> index;
        std::uint64_t queries = 0;
        std::size_t max_queries = 0;
        bool correct = true;
    };
    // Shard by the first point; instances are visited in lexicographic order.
    const std::uint64_t per_shard = total / N;
    std::vector<Shard> shards(N);
    parallel_shards(N, [&](std::size_t s) {
        Shard& sh = shards[s];
        std::vector<std::size_t> pts(n);
        for (std::uint64_t c = s * per_shard; c < (s + 1) * per_shard; ++c) {
            decode(c, N, pts);
            DecisionTrace t = solve(Instance{space, pts});
            sh.queries += t.size();
            sh.max_queries = std::max(sh.max_queries, t.size());
            sh.correct = sh.correct && contains_all(t, pts);
            auto [it, fresh] = sh.index.try_emplace(t.key(), sh.leaves.size());
            if (fresh) sh.leaves.push_back({std::move(t), 0});
            ++sh.leaves[it->second].count;
        }
    });

    LeafPartition out;
    out.partition = Partition{space, n, {}};
    LeafStructure& st = out.structure;
    st.instances = total;
    std::unordered_map<std::string, std::size_t> merged;
    std::vector<std::uint64_t> counts;
    std::uint64_t queries = 0;
    for (Shard& sh : shards) {
        queries += sh.queries;
        st.max_queries = std::max(st.max_queries, sh.max_queries);
        st.solver_correct = st.solver_correct && sh.correct;
        for (Leaf& leaf : sh.leaves) {
            auto [it, fresh] = merged.try_emplace(leaf.trace.key(), out.traces.size());
            if (fresh) {
                out.traces.push_back(std::move(leaf.trace));
                counts.push_back(0);
            }
            counts[it->second] += leaf.count;
        }
    }
    st.distinct_traces = merged.size();
    st.mean_queries = static_cast<double>(queries) / static_cast<double>(total);

    for (std::size_t l = 0; l < out.traces.size(); ++l) {
        const DecisionTrace& t = out.traces[l];
        ProductPart part{induced_part(t), t.output};
        for (int j = 0; j < n; ++j) {
            const Factor& f = part.factors[j];
            st.max_holes = std::max(st.max_holes, f.holes().size());
            if (static_cast<int>(f.holes().size()) > t.no_count(j + 1) || f.holes().size() > t.size()) st.holes_within_trace = false;
            if (!t.output || !f.points().is_subset_of(t.output->points())) st.inside_output = false;
            if (!f.as_almost_flat()) {
                st.all_almost_flat = false;
                if (st.non_almost_flat.size() < 5)
                    st.non_almost_flat.push_back("leaf " + std::to_string(l) + " factor " + std::to_string(j + 1));
            }
        }
        const std::uint64_t size = part.size();
        if (size != counts[l]) st.solver_correct = false;
        ++st.leaf_sizes[size];
        out.partition.parts.push_back(std::move(part));
    }
    st.leaves = out.partition.parts.size();
    st.verify = verify(out.partition);
    if (st.all_almost_flat) {
        if (const auto b = general_lower_bound(q, n))
            st.general_bound_holds = static_cast<__int128>(st.leaves) * b->den >= b->num;
    }
    return out;
}

BenchRow bench(int q, int n, std::uint64_t samples, std::uint64_t seed) {
    const SpacePtr space = Space::make(q, n);
    const std::size_t N = space->num_points();
    std::uint64_t total = 0;
    bool exhaustive = false;
    try {
        total = instance_count(q, n);
        exhaustive = total <= samples;
    } catch (const Error&) {
    }
    BenchRow row{q, n, exhaustive ? total : samples, exhaustive, 0, 0, query_bound(q, n), 0, true};
    std::vector<std::vector<std::size_t>> insts(row.instances, std::vector<std::size_t>(n));
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, N - 1);
    for (std::uint64_t c = 0; c < row.instances; ++c) {
        if (exhaustive)
            decode(c, N, insts[c]);
        else
            for (auto& p : insts[c]) p = pick(rng);
    }
    std::vector<std::size_t> sizes(row.instances);
    std::vector<char> ok(row.instances);
    parallel_shards(row.instances, [&](std::size_t c) {
        const DecisionTrace t = solve(Instance{space, insts[c]});
        sizes[c] = t.size();
        ok[c] = contains_all(t, insts[c]);
    });
    std::uint64_t sum = 0;
    for (std::size_t c = 0; c < sizes.size(); ++c) {
        sum += sizes[c];
        row.max_queries = std::max(row.max_queries, sizes[c]);
        row.correct = row.correct && ok[c];
    }
    row.mean_queries = row.instances ? static_cast<double>(sum) / static_cast<double>(row.instances) : 0;
    row.ratio = row.mean_queries / (static_cast<double>(q) * n * n);
    return row;
}

}  // namespace projpart
