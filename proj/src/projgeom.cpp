#include "projpart/projgeom.hpp"

#include "projpart/error.hpp"

#include <algorithm>
#include <string>

namespace projpart {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow in counting formula");
    return r;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 0;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorCode::Overflow, "integer overflow in counting formula");
    return r;
}

}  // namespace

SpacePtr Space::make(FieldPtr field, int n) {
    if (n < 0) fail(ErrorCode::DimOutOfRange, "projective dimension must be >= 0, got " + std::to_string(n));
    const auto q = static_cast<std::uint64_t>(field->q());
    std::uint64_t vectors = 1;
    for (int i = 0; i <= n; ++i) {
        vectors *= q;
        if (vectors > max_vectors)
            fail(ErrorCode::TooLarge, "F_" + std::to_string(q) + "P^" + std::to_string(n) + " is too large to tabulate");
    }
    std::shared_ptr<Space> s(new Space());
    s->field_ = std::move(field);
    s->n_ = n;
    const int w = n + 1;
    s->index_of_code_.assign(vectors, 0);
    std::vector<Elem> v(w);
    for (std::uint64_t c = 1; c < vectors; ++c) {
        std::uint64_t rest = c;
        for (int j = w - 1; j >= 0; --j) {
            v[j] = static_cast<Elem>(rest % q);
            rest /= q;
        }
        const auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
        if (*lead != 1) continue;
        s->index_of_code_[c] = static_cast<std::uint32_t>(s->num_points_++);
        s->coords_.insert(s->coords_.end(), v.begin(), v.end());
    }
    return s;
}

SpacePtr Space::make(int q, int n) { return make(Field::make(q), n); }

std::size_t Space::index_of(std::span<const Elem> v) const {
    if (static_cast<int>(v.size()) != width())
        fail(ErrorCode::AmbientMismatch, "vector of length " + std::to_string(v.size()) + " in F_qP^" + std::to_string(n_));
    const auto lead = std::find_if(v.begin(), v.end(), [](Elem e) { return e != 0; });
    if (lead == v.end()) fail(ErrorCode::InvalidArgument, "the zero vector is not a projective point");
    for (Elem e : v)
        if (e >= field_->q()) fail(ErrorCode::InvalidArgument, "coordinate out of range for " + field_->describe());
    const Elem s = field_->inv(*lead);
    std::vector<Elem> w(v.begin(), v.end());
    for (Elem& e : w) e = field_->mul(e, s);
    return index_of_normalized(w);
}

int row_reduce(std::vector<Elem>& mat, int rows, int cols, const Field& field) {
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int piv = -1;
        for (int i = r; i < rows; ++i)
            if (mat[i * cols + c] != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < cols; ++j) std::swap(mat[piv * cols + j], mat[r * cols + j]);
        const Elem s = field.inv(mat[r * cols + c]);
        for (int j = 0; j < cols; ++j) mat[r * cols + j] = field.mul(mat[r * cols + j], s);
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            const Elem f = mat[i * cols + c];
            if (f == 0) continue;
            for (int j = 0; j < cols; ++j)
                mat[i * cols + j] = field.sub(mat[i * cols + j], field.mul(f, mat[r * cols + j]));
        }
        ++r;
    }
    mat.resize(static_cast<std::size_t>(r) * cols);
    return r;
}

Flat Flat::from_reduced(SpacePtr space, std::vector<Elem> basis, int rank) {
    auto impl = std::make_shared<Impl>();
    const int w = space->width();
    const Field& f = space->field();
    const int q = f.q();
    impl->rank = rank;
    impl->points = space->empty_set();
    for (int r = 0; r < rank; ++r) {
        int c = 0;
        while (basis[r * w + c] == 0) ++c;
        impl->pivots.push_back(c);
    }
    // Normalized coefficient vectors give normalized combinations because the
    // basis is in RREF.
    std::vector<Elem> coef(rank), v(w);
    for (int lead = 0; lead < rank; ++lead) {
        const int tail = rank - lead - 1;
        std::uint64_t combos = 1;
        for (int i = 0; i < tail; ++i) combos *= static_cast<std::uint64_t>(q);
        for (std::uint64_t t = 0; t < combos; ++t) {
            std::fill(coef.begin(), coef.end(), Elem{0});
            coef[lead] = 1;
            std::uint64_t rest = t;
            for (int i = rank - 1; i > lead; --i) {
                coef[i] = static_cast<Elem>(rest % static_cast<std::uint64_t>(q));
                rest /= static_cast<std::uint64_t>(q);
            }
            std::fill(v.begin(), v.end(), Elem{0});
            for (int i = lead; i < rank; ++i) {
                if (coef[i] == 0) continue;
                for (int j = 0; j < w; ++j) v[j] = f.add(v[j], f.mul(coef[i], basis[i * w + j]));
            }
            impl->points.insert(space->index_of_normalized(v));
        }
    }
    impl->basis = std::move(basis);
    impl->space = std::move(space);
    return Flat(std::move(impl));
}

Flat Flat::empty(SpacePtr space) { return from_reduced(std::move(space), {}, 0); }

Flat Flat::full(SpacePtr space) {
    const int w = space->width();
    std::vector<Elem> id(static_cast<std::size_t>(w) * w, 0);
    for (int i = 0; i < w; ++i) id[i * w + i] = 1;
    return from_reduced(std::move(space), std::move(id), w);
}

Flat Flat::point(SpacePtr space, std::size_t index) {
    if (index >= space->num_points()) fail(ErrorCode::InvalidArgument, "point index " + std::to_string(index) + " out of range");
    auto c = space->coords(index);
    return from_reduced(space, std::vector<Elem>(c.begin(), c.end()), 1);
}

Flat Flat::from_rows(SpacePtr space, std::span<const Elem> rows, int row_count) {
    const int w = space->width();
    if (rows.size() != static_cast<std::size_t>(row_count) * w)
        fail(ErrorCode::AmbientMismatch, "row data does not match F_qP^" + std::to_string(space->dim()));
    std::vector<Elem> m(rows.begin(), rows.end());
    for (Elem e : m)
        if (e >= space->q()) fail(ErrorCode::InvalidArgument, "coordinate out of range");
    const int rank = row_reduce(m, row_count, w, space->field());
    return from_reduced(std::move(space), std::move(m), rank);
}

Flat Flat::hyperplane(SpacePtr space, std::span<const Elem> functional) {
    const int w = space->width();
    if (static_cast<int>(functional.size()) != w) fail(ErrorCode::AmbientMismatch, "functional length mismatch");
    const Field& f = space->field();
    int c = -1;
    for (int j = 0; j < w; ++j)
        if (functional[j] != 0) {
            c = j;
            break;
        }
    if (c < 0) fail(ErrorCode::InvalidArgument, "the zero functional defines no hyperplane");
    const Elem s = f.inv(functional[c]);
    std::vector<Elem> rows;
    int count = 0;
    for (int j = 0; j < w; ++j) {
        if (j == c) continue;
        std::vector<Elem> v(w, 0);
        v[j] = 1;
        v[c] = f.neg(f.mul(functional[j], s));
        rows.insert(rows.end(), v.begin(), v.end());
        ++count;
    }
    return from_rows(std::move(space), rows, count);
}

std::strong_ordering operator<=>(const Flat& a, const Flat& b) {
    if (auto c = a.rank() <=> b.rank(); c != 0) return c;
    const auto x = a.basis();
    const auto y = b.basis();
    return std::lexicographical_compare_three_way(x.begin(), x.end(), y.begin(), y.end());
}

Flat span(const SpacePtr& space, std::span<const std::size_t> points) {
    std::vector<Elem> rows;
    rows.reserve(points.size() * static_cast<std::size_t>(space->width()));
    for (std::size_t p : points) {
        if (p >= space->num_points()) fail(ErrorCode::InvalidArgument, "point index out of range");
        auto c = space->coords(p);
        rows.insert(rows.end(), c.begin(), c.end());
    }
    return Flat::from_rows(space, rows, static_cast<int>(points.size()));
}

Flat span(const SpacePtr& space, const PointSet& points) {
    if (points.universe() != space->num_points()) fail(ErrorCode::AmbientMismatch, "point set from another space");
    // Greedy: only points outside the running span extend it.
    std::vector<Elem> rows;
    int count = 0;
    PointSet covered = space->empty_set();
    points.for_each([&](std::size_t p) {
        if (covered.contains(p)) return;
        auto c = space->coords(p);
        rows.insert(rows.end(), c.begin(), c.end());
        ++count;
        covered = Flat::from_rows(space, rows, count).points();
    });
    return Flat::from_rows(space, rows, count);
}

Flat span(std::span<const Flat> flats) {
    if (flats.empty()) fail(ErrorCode::InvalidArgument, "span of an empty flat list needs an explicit space");
    const SpacePtr& space = flats.front().space();
    std::vector<Elem> rows;
    int count = 0;
    for (const Flat& f : flats) {
        if (f.space() != space && (f.space()->dim() != space->dim() || f.space()->q() != space->q()))
            fail(ErrorCode::AmbientMismatch, "flats from different projective spaces");
        rows.insert(rows.end(), f.basis().begin(), f.basis().end());
        count += f.rank();
    }
    return Flat::from_rows(space, rows, count);
}

Flat join(const Flat& a, const Flat& b) {
    const Flat both[] = {a, b};
    return span(both);
}

Flat meet(const Flat& a, const Flat& b) {
    if (a.space() != b.space()) fail(ErrorCode::AmbientMismatch, "flats from different projective spaces");
    return span(a.space(), a.points() & b.points());
}

Flat greedy_extend(const Flat& start, const PointSet& within, int count) {
    Flat cur = start;
    const SpacePtr& space = start.space();
    for (int added = 0; added < count; ++added) {
        const std::size_t p = (within - cur.points()).first();
        if (p >= space->num_points()) break;
        cur = join(cur, Flat::point(space, p));
    }
    return cur;
}

Flat extend_to_dim(const Flat& flat, int dim) {
    if (dim < flat.dim() || dim > flat.space()->dim())
        fail(ErrorCode::DimOutOfRange, "cannot extend a " + std::to_string(flat.dim()) + "-flat to dimension " + std::to_string(dim));
    return greedy_extend(flat, flat.space()->full_set(), dim - flat.dim());
}

int rank_of(const Space& space, std::span<const std::size_t> points) {
    const int w = space.width();
    std::vector<Elem> m;
    m.reserve(points.size() * static_cast<std::size_t>(w));
    for (std::size_t p : points) {
        auto c = space.coords(p);
        m.insert(m.end(), c.begin(), c.end());
    }
    return row_reduce(m, static_cast<int>(points.size()), w, space.field());
}

bool is_dependent(const Space& space, std::span<const std::size_t> tuple) {
    return rank_of(space, tuple) < static_cast<int>(tuple.size());
}

std::uint64_t point_count(int q, int n) {
    std::uint64_t total = 0;
    std::uint64_t power = 1;
    for (int i = 0; i <= n; ++i) {
        total = checked_add(total, power);
        if (i < n) power = checked_mul(power, static_cast<std::uint64_t>(q));
    }
    return total;
}

std::uint64_t count_flats(int n, int k, int q) {
    if (n < 0 || k < -1 || k > n)
        fail(ErrorCode::DimOutOfRange, "flat dimension " + std::to_string(k) + " outside [-1, " + std::to_string(n) + "]");
    // [N, K]_q = [N-1, K-1]_q + q^K [N-1, K]_q
    const int N = n + 1;
    const int K = k + 1;
    std::vector<std::vector<std::uint64_t>> g(N + 1, std::vector<std::uint64_t>(N + 1, 0));
    for (int a = 0; a <= N; ++a) {
        g[a][0] = 1;
        std::uint64_t qk = 1;
        for (int b = 1; b <= a; ++b) {
            qk = checked_mul(qk, static_cast<std::uint64_t>(q));
            g[a][b] = checked_add(g[a - 1][b - 1], b <= a - 1 ? checked_mul(qk, g[a - 1][b]) : 0);
        }
    }
    return g[N][K];
}

std::vector<Flat> enumerate_flats(const SpacePtr& space, int k) {
    const int w = space->width();
    if (k < -1 || k > space->dim())
        fail(ErrorCode::DimOutOfRange, "flat dimension " + std::to_string(k) + " outside [-1, " + std::to_string(space->dim()) + "]");
    const int r = k + 1;
    const int q = space->q();
    std::vector<Flat> out;
    if (r == 0) {
        out.push_back(Flat::empty(space));
        return out;
    }
    std::vector<int> piv(r);
    for (int i = 0; i < r; ++i) piv[i] = i;
    while (true) {
        // Free slots: entries right of each pivot in non-pivot columns.
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < r; ++i)
            for (int j = piv[i] + 1; j < w; ++j)
                if (std::find(piv.begin(), piv.end(), j) == piv.end()) slots.emplace_back(i, j);
        std::vector<int> val(slots.size(), 0);
        bool more = true;
        while (more) {
            std::vector<Elem> basis(static_cast<std::size_t>(r) * w, 0);
            for (int i = 0; i < r; ++i) basis[i * w + piv[i]] = 1;
            for (std::size_t s = 0; s < slots.size(); ++s)
                basis[slots[s].first * w + slots[s].second] = static_cast<Elem>(val[s]);
            out.push_back(Flat::from_rows(space, basis, r));
            more = false;
            for (std::size_t s = slots.size(); s-- > 0;) {
                if (++val[s] < q) {
                    more = true;
                    break;
                }
                val[s] = 0;
            }
        }
        int i = r - 1;
        while (i >= 0 && piv[i] == w - r + i) --i;
        if (i < 0) break;
        ++piv[i];
        for (int j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
    }
    return out;
}

Quotient::Quotient(Flat by) : by_(std::move(by)) {
    const SpacePtr& space = by_.space();
    const int w = space->width();
    for (int j = 0; j < w; ++j)
        if (std::find(by_.pivots().begin(), by_.pivots().end(), j) == by_.pivots().end()) free_cols_.push_back(j);
    if (quotient_dim() >= 0) {
        target_ = Space::make(space->field_ptr(), quotient_dim());
        members_.assign(target_->num_points(), space->empty_set());
        rep_.assign(target_->num_points(), space->num_points());
    }
    class_of_.assign(space->num_points(), -1);
    for (std::size_t p = 0; p < space->num_points(); ++p) {
        if (by_.contains(p)) continue;
        const auto img = reduce(space->coords(p));
        const std::size_t cls = target_->index_of(img);
        class_of_[p] = static_cast<std::int64_t>(cls);
        members_[cls].insert(p);
        rep_[cls] = std::min(rep_[cls], p);
    }
}

std::vector<Elem> Quotient::reduce(std::span<const Elem> v) const {
    const Field& f = by_.space()->field();
    std::vector<Elem> x(v.begin(), v.end());
    for (int r = 0; r < by_.rank(); ++r) {
        const Elem c = x[by_.pivots()[r]];
        if (c == 0) continue;
        const auto row = by_.row(r);
        for (std::size_t j = 0; j < x.size(); ++j) x[j] = f.sub(x[j], f.mul(c, row[j]));
    }
    std::vector<Elem> out;
    out.reserve(free_cols_.size());
    for (int j : free_cols_) out.push_back(x[j]);
    return out;
}

std::size_t Quotient::class_of(std::size_t point) const {
    if (point >= class_of_.size()) fail(ErrorCode::InvalidArgument, "point index out of range");
    if (class_of_[point] < 0) fail(ErrorCode::PointInFlat, "point " + std::to_string(point) + " lies in the quotient flat");
    return static_cast<std::size_t>(class_of_[point]);
}

std::size_t Quotient::class_rep(std::size_t point) const { return rep_[class_of(point)]; }

PointSet Quotient::image(const PointSet& set) const {
    if (!target_) fail(ErrorCode::DimOutOfRange, "quotient by the whole space has no points");
    PointSet out = target_->empty_set();
    set.for_each([&](std::size_t p) {
        if (class_of_[p] >= 0) out.insert(static_cast<std::size_t>(class_of_[p]));
    });
    return out;
}

PointSet Quotient::preimage(const PointSet& classes) const {
    PointSet out = by_.space()->empty_set();
    classes.for_each([&](std::size_t c) { out |= members_[c]; });
    return out;
}

Flat Quotient::image(const Flat& flat) const {
    if (!target_) fail(ErrorCode::DimOutOfRange, "quotient by the whole space has no points");
    std::vector<Elem> rows;
    for (int r = 0; r < flat.rank(); ++r) {
        const auto img = reduce(flat.row(r));
        rows.insert(rows.end(), img.begin(), img.end());
    }
    return Flat::from_rows(target_, rows, flat.rank());
}

PointSet restrict_to_classes(const Flat& sub, const Flat& within, const Quotient& quotient) {
    const PointSet outside = quotient.by().space()->full_set() - quotient.by().points();
    const PointSet classes = quotient.image(sub.points() & outside);
    return (within.points() & outside) & quotient.preimage(classes);
}

}  // namespace projpart
