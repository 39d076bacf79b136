#include "projpart/bounds.hpp"

#include "projpart/error.hpp"
#include "projpart/gfq.hpp"
#include "projpart/partition.hpp"
#include "projpart/projgeom.hpp"

#include <algorithm>

namespace projpart {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        const i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Powers that stay below 2^100 so that one further product fits.
std::optional<i128> ipow(i128 b, int e) {
    const i128 limit = i128{1} << 100;
    i128 r = 1;
    for (int i = 0; i < e; ++i) {
        r *= b;
        if (r > limit || r < -limit) return std::nullopt;
    }
    return r;
}

std::optional<std::uint64_t> mul_u64(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) return std::nullopt;
    return r;
}

std::optional<std::uint64_t> pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        const auto next = mul_u64(r, b);
        if (!next) return std::nullopt;
        r = *next;
    }
    return r;
}

}  // namespace

Rational Rational::make(i128 num, i128 den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const i128 g = gcd128(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return Rational{num, den};
}

std::string int128_str(i128 v) {
    if (v == 0) return "0";
    const bool neg = v < 0;
    std::string s;
    while (v != 0) {
        const int digit = static_cast<int>(v % 10);
        s.push_back(static_cast<char>('0' + (digit < 0 ? -digit : digit)));
        v /= 10;
    }
    if (neg) s.push_back('-');
    std::reverse(s.begin(), s.end());
    return s;
}

std::string Rational::str() const { return den == 1 ? int128_str(num) : int128_str(num) + "/" + int128_str(den); }

std::optional<Rational> general_lower_bound(int q, int n) {
    if (q < 3 || n < 1) return std::nullopt;
    // q^{T-1} (q (q-2)^n - (q+1)^n) / (q-2)^n with T = n(n+1)/2.
    const auto head = ipow(q, n * (n + 1) / 2 - 1);
    const auto a = ipow(q - 2, n);
    const auto b = ipow(q + 1, n);
    if (!head || !a || !b) return std::nullopt;
    const i128 inner = i128{q} * *a - *b;
    const Rational r = Rational::make(inner, *a);
    const i128 g = gcd128(*head, r.den);
    const i128 h = *head / g;
    const i128 limit = i128{1} << 120;
    if (h != 0 && (r.num > limit / h || r.num < -limit / h)) return std::nullopt;
    return Rational::make(h * r.num, r.den / g);
}

std::optional<Rational> upper_estimate(int q, int n) {
    if (n < 1 || q < 2 * n) return std::nullopt;
    // q^{T-1} (q + 2n)
    const auto head = ipow(q, n * (n + 1) / 2 - 1);
    if (!head) return std::nullopt;
    return Rational::make(*head * (q + 2 * n), 1);
}

BoundsTable bounds_table(int q, int n, int k) {
    Field::make(q);
    if (n < 1) fail(ErrorCode::DimOutOfRange, "need n >= 1");
    if (k < 1 || k > n + 1) fail(ErrorCode::DimOutOfRange, "need 1 <= k <= n + 1");
    BoundsTable t;
    t.q = q;
    t.n = n;
    t.k = k;
    t.points = point_count(q, n);
    t.total = pow_u64(t.points, k);
    t.flats = count_flats(n, k - 1, q);
    const auto part_max = pow_u64(point_count(q, k - 1), k);
    if (t.total && part_max) t.volume_lower = (*t.total + *part_max - 1) / *part_max;
    if (k <= n) {
        try {
            t.construction = power_partition_size(q, n, k);
        } catch (const Error&) {
        }
    }
    if (k == n) {
        t.upper_estimate = upper_estimate(q, n);
        t.general_lower = general_lower_bound(q, n);
    }
    const auto qn1 = ipow(q, n - 1);
    const auto qn3 = ipow(q, n + 1);
    t.dependent_lower = Rational::make(*qn1 - 1, *qn3 - 1);
    t.dependent_upper = Rational::make(1, i128{q} * (q - 1));
    return t;
}

}  // namespace projpart
