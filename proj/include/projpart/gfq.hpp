#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace projpart {

/// Raw field element: the canonical integer encoding of a polynomial
/// c_0 + c_1 x + ... + c_{m-1} x^{m-1} over GF(p) as sum c_i p^i.
using Elem = std::uint8_t;

/// GF(q) for a prime power q <= 64, with full operation tables.
///
/// Tables are small (q*q bytes each) so every operation is a lookup. The
/// reduction polynomial for m > 1 is the monic irreducible of degree m whose
/// coefficient encoding (same base-p scheme as the elements, leading term
/// excluded) is smallest.
class Field {
public:
    static constexpr int max_order = 64;

    /// Throws NotPrimePower or Unsupported.
    static std::shared_ptr<const Field> make(int q);

    int p() const noexcept { return p_; }
    int m() const noexcept { return m_; }
    int q() const noexcept { return q_; }

    /// Coefficients c_0..c_m of the reduction polynomial (monic, so c_m = 1).
    /// Empty for prime fields.
    const std::vector<int>& reduction_poly() const noexcept { return poly_; }

    Elem add(Elem a, Elem b) const noexcept { return add_[a * q_ + b]; }
    Elem sub(Elem a, Elem b) const noexcept { return add_[a * q_ + neg_[b]]; }
    Elem mul(Elem a, Elem b) const noexcept { return mul_[a * q_ + b]; }
    Elem neg(Elem a) const noexcept { return neg_[a]; }
    /// Inverse of a nonzero element; inv(0) is 0 and callers must not rely on it.
    Elem inv(Elem a) const noexcept { return inv_[a]; }
    /// Throws DivisionByZero.
    Elem div(Elem a, Elem b) const;

    /// Multiplicative order of a nonzero element.
    int order(Elem a) const;

    std::string describe() const;

private:
    Field() = default;

    int p_ = 0;
    int m_ = 0;
    int q_ = 0;
    std::vector<int> poly_;
    std::vector<Elem> add_;
    std::vector<Elem> mul_;
    std::vector<Elem> neg_;
    std::vector<Elem> inv_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// Checked element type for API use. Hot loops work on raw Elem values
/// against a Field directly.
class FieldElement {
public:
    FieldElement(FieldPtr field, int repr);

    const FieldPtr& field() const noexcept { return field_; }
    Elem repr() const noexcept { return repr_; }
    bool is_zero() const noexcept { return repr_ == 0; }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b);
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b);
    /// Throws DivisionByZero.
    friend FieldElement operator/(const FieldElement& a, const FieldElement& b);

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.field_ == b.field_ && a.repr_ == b.repr_;
    }

private:
    FieldPtr field_;
    Elem repr_;
};

enum class FieldOp { add, sub, mul, div };

/// Throws SpecMismatch when the operands belong to different fields.
FieldElement field_arith(const FieldElement& a, const FieldElement& b, FieldOp op);

bool is_prime(int x);

}  // namespace projpart
