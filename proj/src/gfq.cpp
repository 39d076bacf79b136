#include "projpart/gfq.hpp"

#include "projpart/error.hpp"

#include <sstream>

namespace projpart {

bool is_prime(int x) {
    if (x < 2) return false;
    for (int d = 2; d * d <= x; ++d)
        if (x % d == 0) return false;
    return true;
}

namespace {

using Poly = std::vector<int>;  // coefficients, low degree first

Poly trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

// Remainder of a modulo monic b over GF(p).
Poly poly_mod(Poly a, const Poly& b, int p) {
    a = trim(std::move(a));
    const int db = static_cast<int>(b.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= db) {
        const int shift = static_cast<int>(a.size()) - 1 - db;
        const int lead = a.back();
        for (int i = 0; i <= db; ++i)
            a[i + shift] = ((a[i + shift] - lead * b[i]) % p + p) % p;
        a = trim(std::move(a));
    }
    return a;
}

Poly monic_from_code(int code, int degree, int p) {
    Poly f(degree + 1, 0);
    for (int i = 0; i < degree; ++i) {
        f[i] = code % p;
        code /= p;
    }
    f[degree] = 1;
    return f;
}

int ipow(int b, int e) {
    int r = 1;
    while (e-- > 0) r *= b;
    return r;
}

bool is_irreducible(const Poly& f, int p) {
    const int deg = static_cast<int>(f.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
        const int count = ipow(p, d);
        for (int code = 0; code < count; ++code) {
            if (poly_mod(f, monic_from_code(code, d, p), p).empty()) return false;
        }
    }
    return true;
}

}  // namespace

std::shared_ptr<const Field> Field::make(int q) {
    if (q > max_order) fail(ErrorCode::Unsupported, "field order " + std::to_string(q) + " exceeds 64");
    if (q < 2) fail(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");
    int p = 2;
    while (q % p != 0) ++p;
    int m = 0;
    int rest = q;
    while (rest % p == 0) {
        rest /= p;
        ++m;
    }
    if (rest != 1) fail(ErrorCode::NotPrimePower, std::to_string(q) + " is not a prime power");

    std::shared_ptr<Field> f(new Field());
    f->p_ = p;
    f->m_ = m;
    f->q_ = q;

    Poly modulus;
    if (m > 1) {
        for (int code = 0; code < ipow(p, m); ++code) {
            Poly cand = monic_from_code(code, m, p);
            if (is_irreducible(cand, p)) {
                modulus = std::move(cand);
                break;
            }
        }
        f->poly_ = modulus;
    }

    auto decode = [&](int e) {
        Poly c(m, 0);
        for (int i = 0; i < m; ++i) {
            c[i] = e % p;
            e /= p;
        }
        return c;
    };
    auto encode = [&](const Poly& c) {
        int e = 0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) e = e * p + c[i];
        return e;
    };

    f->add_.resize(q * q);
    f->mul_.resize(q * q);
    f->neg_.resize(q);
    f->inv_.assign(q, 0);
    for (int a = 0; a < q; ++a) {
        const Poly ca = decode(a);
        Poly na(m);
        for (int i = 0; i < m; ++i) na[i] = (p - ca[i]) % p;
        f->neg_[a] = static_cast<Elem>(encode(na));
        for (int b = 0; b < q; ++b) {
            const Poly cb = decode(b);
            Poly sum(m);
            for (int i = 0; i < m; ++i) sum[i] = (ca[i] + cb[i]) % p;
            f->add_[a * q + b] = static_cast<Elem>(encode(sum));

            Poly prod(2 * m, 0);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            Poly red = m > 1 ? poly_mod(prod, modulus, p) : trim(prod);
            red.resize(m, 0);
            f->mul_[a * q + b] = static_cast<Elem>(encode(red));
        }
    }
    for (int a = 1; a < q; ++a)
        for (int b = 1; b < q; ++b)
            if (f->mul_[a * q + b] == 1) f->inv_[a] = static_cast<Elem>(b);
    return f;
}

Elem Field::div(Elem a, Elem b) const {
    if (b == 0) fail(ErrorCode::DivisionByZero, "division by zero in " + describe());
    return mul(a, inv_[b]);
}

int Field::order(Elem a) const {
    if (a == 0) fail(ErrorCode::DivisionByZero, "zero has no multiplicative order");
    int k = 1;
    Elem x = a;
    while (x != 1) {
        x = mul(x, a);
        ++k;
    }
    return k;
}

std::string Field::describe() const {
    std::ostringstream os;
    os << "GF(" << q_ << ")";
    return os.str();
}

FieldElement::FieldElement(FieldPtr field, int repr) : field_(std::move(field)), repr_(0) {
    if (repr < 0 || repr >= field_->q())
        fail(ErrorCode::InvalidArgument, "element repr " + std::to_string(repr) + " out of range for " + field_->describe());
    repr_ = static_cast<Elem>(repr);
}

FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op) {
    if (a.field() != b.field() && (a.field()->q() != b.field()->q() || a.field()->reduction_poly() != b.field()->reduction_poly()))
        fail(ErrorCode::SpecMismatch, "operands from " + a.field()->describe() + " and " + b.field()->describe());
    const Field& f = *a.field();
    switch (op) {
        case FieldOp::add: return FieldElement(a.field(), f.add(a.repr(), b.repr()));
        case FieldOp::sub: return FieldElement(a.field(), f.sub(a.repr(), b.repr()));
        case FieldOp::mul: return FieldElement(a.field(), f.mul(a.repr(), b.repr()));
        case FieldOp::div: return FieldElement(a.field(), f.div(a.repr(), b.repr()));
    }
    fail(ErrorCode::InvalidArgument, "unknown field operation");
}

FieldElement operator+(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, FieldOp::add); }
FieldElement operator-(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, FieldOp::sub); }
FieldElement operator*(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, FieldOp::mul); }
FieldElement operator/(const FieldElement& a, const FieldElement& b) { return field_arith(a, b, FieldOp::div); }

}  // namespace projpart
