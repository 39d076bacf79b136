#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace projpart {

/// Dense set of point indices of one projective space.
///
/// Sets from different spaces must not be mixed; the universe size is the
/// point count of the space and all binary operations assume equal sizes.
class PointSet {
public:
    using Word = std::uint64_t;
    static constexpr int word_bits = 64;

    PointSet() = default;
    explicit PointSet(std::size_t universe)
        : universe_(universe), words_((universe + word_bits - 1) / word_bits, 0) {}

    static PointSet full(std::size_t universe) {
        PointSet s(universe);
        for (std::size_t i = 0; i < universe; ++i) s.insert(i);
        return s;
    }

    std::size_t universe() const noexcept { return universe_; }

    void insert(std::size_t i) { words_[i / word_bits] |= Word{1} << (i % word_bits); }
    void erase(std::size_t i) { words_[i / word_bits] &= ~(Word{1} << (i % word_bits)); }
    bool contains(std::size_t i) const { return (words_[i / word_bits] >> (i % word_bits)) & 1U; }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (Word w : words_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool empty() const noexcept {
        for (Word w : words_)
            if (w != 0) return false;
        return true;
    }

    /// Smallest member, or universe() when empty.
    std::size_t first() const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] != 0) return k * word_bits + static_cast<std::size_t>(std::countr_zero(words_[k]));
        return universe_;
    }

    bool intersects(const PointSet& o) const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & o.words_[k]) return true;
        return false;
    }
    bool is_subset_of(const PointSet& o) const noexcept {
        for (std::size_t k = 0; k < words_.size(); ++k)
            if (words_[k] & ~o.words_[k]) return false;
        return true;
    }
    std::size_t intersection_count(const PointSet& o) const noexcept {
        std::size_t c = 0;
        for (std::size_t k = 0; k < words_.size(); ++k) c += static_cast<std::size_t>(std::popcount(words_[k] & o.words_[k]));
        return c;
    }

    PointSet& operator&=(const PointSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= o.words_[k];
        return *this;
    }
    PointSet& operator|=(const PointSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] |= o.words_[k];
        return *this;
    }
    PointSet& operator-=(const PointSet& o) {
        for (std::size_t k = 0; k < words_.size(); ++k) words_[k] &= ~o.words_[k];
        return *this;
    }
    friend PointSet operator&(PointSet a, const PointSet& b) { return a &= b; }
    friend PointSet operator|(PointSet a, const PointSet& b) { return a |= b; }
    friend PointSet operator-(PointSet a, const PointSet& b) { return a -= b; }

    friend bool operator==(const PointSet&, const PointSet&) = default;
    friend auto operator<=>(const PointSet& a, const PointSet& b) { return a.words_ <=> b.words_; }

    template <typename Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t k = 0; k < words_.size(); ++k) {
            Word w = words_[k];
            while (w != 0) {
                fn(k * word_bits + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }

    std::vector<std::size_t> members() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const noexcept {
        std::size_t h = universe_;
        for (Word w : words_) h = h * 0x9E3779B97F4A7C15ULL + std::hash<Word>{}(w);
        return h;
    }

private:
    std::size_t universe_ = 0;
    std::vector<Word> words_;
};

}  // namespace projpart
