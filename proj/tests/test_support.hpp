#pragma once

#include "projpart/projgeom.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace testing {

inline std::uint64_t ipow(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    while (e-- > 0) r *= b;
    return r;
}

/// Dependence by searching all nonzero coefficient vectors; no elimination.
inline bool naive_dependent(const projpart::Space& space, std::span<const std::size_t> tuple) {
    const projpart::Field& f = space.field();
    const int q = f.q();
    const auto k = tuple.size();
    std::vector<int> c(k, 0);
    const std::uint64_t combos = ipow(q, static_cast<int>(k));
    for (std::uint64_t code = 1; code < combos; ++code) {
        std::uint64_t x = code;
        for (std::size_t i = 0; i < k; ++i) {
            c[i] = static_cast<int>(x % q);
            x /= q;
        }
        bool zero = true;
        for (int col = 0; col < space.width() && zero; ++col) {
            projpart::Elem acc = 0;
            for (std::size_t i = 0; i < k; ++i)
                acc = f.add(acc, f.mul(static_cast<projpart::Elem>(c[i]), space.coords(tuple[i])[col]));
            zero = acc == 0;
        }
        if (zero) return true;
    }
    return false;
}

/// Visit every tuple of the product of the given member lists.
template <class Fn>
void for_each_tuple(const std::vector<std::vector<std::size_t>>& members, Fn&& fn) {
    std::vector<std::size_t> pos(members.size(), 0), tuple(members.size());
    for (const auto& m : members)
        if (m.empty()) return;
    while (true) {
        for (std::size_t i = 0; i < members.size(); ++i) tuple[i] = members[i][pos[i]];
        fn(tuple);
        std::size_t i = members.size();
        while (i > 0) {
            --i;
            if (++pos[i] < members[i].size()) break;
            pos[i] = 0;
            if (i == 0) return;
        }
        if (members.empty()) return;
    }
}

}  // namespace testing
