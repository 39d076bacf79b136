#pragma once

#include <cstdint>
#include <optional>
#include <string>

namespace projpart {

/// An exact rational num/den with den > 0, in lowest terms.
struct Rational {
    __int128 num = 0;
    __int128 den = 1;

    static Rational make(__int128 num, __int128 den);
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

std::string int128_str(__int128 v);

/// q^{n(n+1)/2} (1 - (1/q)((q+1)/(q-2))^n), the lower bound on partitions
/// with almost-flat factors (k = n). Nothing for q < 3 or on overflow.
std::optional<Rational> general_lower_bound(int q, int n);

/// q^{n(n+1)/2} (1 + 2n/q), the upper estimate for the power construction
/// when q >= 2n. Nothing otherwise.
std::optional<Rational> upper_estimate(int q, int n);

/// Size bounds and reference values for (F_qP^n)^k.
struct BoundsTable {
    int q = 0;
    int n = 0;
    int k = 0;
    std::uint64_t points = 0;            // |F_qP^n|
    std::optional<std::uint64_t> total;  // |F_qP^n|^k, the singleton partition
    std::uint64_t flats = 0;             // (k-1)-flats, the covering size
    std::optional<std::uint64_t> volume_lower;  // ceil(total / |(k-1)-flat|^k)
    std::optional<std::uint64_t> construction;  // power partition size
    std::optional<Rational> upper_estimate;
    std::optional<Rational> general_lower;
    Rational dependent_lower;  // (q^{n-1} - 1) / (q^{n+1} - 1)
    Rational dependent_upper;  // 1 / (q (q - 1))
};

/// Throws DimOutOfRange unless 1 <= k <= n + 1.
BoundsTable bounds_table(int q, int n, int k);

}  // namespace projpart
