#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmf/numeric.hpp"

namespace qmf {

/* Truncated Laurent-shifted power series in q over exact rationals.
 *
 * A series stores dense coefficients for exponents shift .. order and a
 * trust bound `order`: coefficients at exponents <= order are exact,
 * anything above is unknown. Reading an unknown coefficient is a hard
 * error (insufficient_order), never a silent zero. The identically-zero
 * series (up to its order) is represented with shift = order + 1 and an
 * empty coefficient list, which keeps the product/quotient order rules
 * uniform. Values are immutable after construction. */
class TruncatedSeries {
public:
    // Identically zero, trusted through `order`.
    static TruncatedSeries zero(int order);
    static TruncatedSeries constant(const BigRational& c, int order);
    static TruncatedSeries monomial(const BigRational& c, int exponent, int order);
    // coeffs[i] is the coefficient of q^{shift+i}; trailing exponents up to
    // `order` are zero-filled, leading zeros are normalized away.
    static TruncatedSeries from_coeffs(int shift, std::vector<BigRational> coeffs, int order);

    int shift() const { return shift_; }
    int order() const { return order_; }
    bool is_zero() const { return coeffs_.empty(); }

    // Coefficient of q^exponent: exact for exponent <= order (zero below the
    // shift), insufficient_order beyond.
    const BigRational& coeff(int exponent) const;

    // Same series trusted only through new_order (<= order).
    TruncatedSeries truncated(int new_order) const;

    std::string to_text() const;                    // "c0 + c1*q + c2*q^2 + ..."
    std::string to_json() const;                    // [[exponent, "num/den"], ...]

private:
    TruncatedSeries(int shift, std::vector<BigRational> coeffs, int order)
        : shift_(shift), coeffs_(std::move(coeffs)), order_(order) {}

    int shift_;
    std::vector<BigRational> coeffs_;
    int order_;
};

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries negate(const TruncatedSeries& a);
TruncatedSeries scalar_multiple(const BigRational& c, const TruncatedSeries& a);

// Exact product; order = min(a.order + b.shift, b.order + a.shift).
TruncatedSeries series_product(const TruncatedSeries& a, const TruncatedSeries& b);

// Long division normalized by b's leading coefficient; shift a.shift - b.shift,
// order min(a.order - b.shift, b.order + a.shift - 2 b.shift). Throws
// division_by_zero_series when b is identically zero up to its order.
TruncatedSeries series_quotient(const TruncatedSeries& a, const TruncatedSeries& b);

// a^k for integer k (negative k inverts; requires a nonzero).
TruncatedSeries series_power(const TruncatedSeries& a, int k);

// theta = q d/dq: coefficient at exponent n becomes n*a_n; order preserved.
TruncatedSeries q_derivative(const TruncatedSeries& a);

// First exponent <= min(order) where a and b disagree, and that shared bound.
struct SeriesComparison {
    int compared_through;                 // min of the two orders
    std::optional<int> first_mismatch;    // empty when equal throughout
};
SeriesComparison compare_series(const TruncatedSeries& a, const TruncatedSeries& b);

} // namespace qmf
