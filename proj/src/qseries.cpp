#include "qmf/qseries.hpp"

#include <algorithm>
#include <sstream>

namespace qmf {

namespace {

const BigRational& zero_rational() {
    static const BigRational zero = rational(0);
    return zero;
}

} // namespace

TruncatedSeries TruncatedSeries::zero(int order) {
    return TruncatedSeries(order + 1, {}, order);
}

TruncatedSeries TruncatedSeries::constant(const BigRational& c, int order) {
    return monomial(c, 0, order);
}

TruncatedSeries TruncatedSeries::monomial(const BigRational& c, int exponent, int order) {
    if (c == 0 || exponent > order) return zero(order);
    std::vector<BigRational> coeffs(static_cast<size_t>(order - exponent) + 1, zero_rational());
    coeffs[0] = c;
    return TruncatedSeries(exponent, std::move(coeffs), order);
}

TruncatedSeries TruncatedSeries::from_coeffs(int shift, std::vector<BigRational> coeffs, int order) {
    // Drop anything past the trust bound, then normalize the leading zeros.
    if (shift + static_cast<int>(coeffs.size()) - 1 > order)
        coeffs.resize(static_cast<size_t>(order - shift) + 1);
    size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == 0) ++lead;
    if (lead == coeffs.size()) return zero(order);
    coeffs.erase(coeffs.begin(), coeffs.begin() + static_cast<long>(lead));
    shift += static_cast<int>(lead);
    coeffs.resize(static_cast<size_t>(order - shift) + 1, zero_rational());
    return TruncatedSeries(shift, std::move(coeffs), order);
}

const BigRational& TruncatedSeries::coeff(int exponent) const {
    if (exponent > order_)
        raise(errc::insufficient_order,
              "coefficient of q^" + std::to_string(exponent) + " beyond trusted order " +
                  std::to_string(order_));
    if (exponent < shift_) return zero_rational();
    return coeffs_[static_cast<size_t>(exponent - shift_)];
}

TruncatedSeries TruncatedSeries::truncated(int new_order) const {
    if (new_order > order_)
        raise(errc::insufficient_order, "cannot extend order " + std::to_string(order_) +
                                            " to " + std::to_string(new_order));
    if (new_order < shift_) return zero(new_order);
    std::vector<BigRational> coeffs(coeffs_.begin(),
                                    coeffs_.begin() + (new_order - shift_ + 1));
    return from_coeffs(shift_, std::move(coeffs), new_order);
}

std::string TruncatedSeries::to_text() const {
    if (is_zero()) return "0 (order " + std::to_string(order_) + ")";
    std::ostringstream out;
    bool first = true;
    for (int e = shift_; e <= order_; ++e) {
        const BigRational& c = coeff(e);
        if (c == 0) continue;
        if (!first) out << (c > 0 ? " + " : " - ");
        else if (c < 0) out << "-";
        first = false;
        BigRational magnitude = abs(c);
        if (e == 0) {
            out << to_string(magnitude);
        } else {
            if (magnitude != 1) out << to_string(magnitude) << "*";
            out << "q";
            if (e != 1) out << "^" << e;
        }
    }
    if (first) out << "0";
    out << " + O(q^" << order_ + 1 << ")";
    return out.str();
}

std::string TruncatedSeries::to_json() const {
    std::ostringstream out;
    out << "[";
    bool first = true;
    for (int e = shift_; e <= order_; ++e) {
        const BigRational& c = coeff(e);
        if (c == 0) continue;
        if (!first) out << ",";
        first = false;
        out << "[" << e << ",\"" << to_string(c) << "\"]";
    }
    out << "]";
    return out.str();
}

TruncatedSeries add(const TruncatedSeries& a, const TruncatedSeries& b) {
    int order = std::min(a.order(), b.order());
    int shift = std::min(a.shift(), b.shift());
    if (shift > order) return TruncatedSeries::zero(order);
    std::vector<BigRational> coeffs(static_cast<size_t>(order - shift) + 1, rational(0));
    for (int e = shift; e <= order; ++e) {
        BigRational value = rational(0);
        if (e >= a.shift() && e <= a.order()) value += a.coeff(e);
        if (e >= b.shift() && e <= b.order()) value += b.coeff(e);
        coeffs[static_cast<size_t>(e - shift)] = value;
    }
    return TruncatedSeries::from_coeffs(shift, std::move(coeffs), order);
}

TruncatedSeries negate(const TruncatedSeries& a) {
    return scalar_multiple(rational(-1), a);
}

TruncatedSeries sub(const TruncatedSeries& a, const TruncatedSeries& b) {
    return add(a, negate(b));
}

TruncatedSeries scalar_multiple(const BigRational& c, const TruncatedSeries& a) {
    if (c == 0 || a.is_zero()) return TruncatedSeries::zero(a.order());
    std::vector<BigRational> coeffs;
    coeffs.reserve(static_cast<size_t>(a.order() - a.shift()) + 1);
    for (int e = a.shift(); e <= a.order(); ++e) coeffs.push_back(c * a.coeff(e));
    return TruncatedSeries::from_coeffs(a.shift(), std::move(coeffs), a.order());
}

TruncatedSeries series_product(const TruncatedSeries& a, const TruncatedSeries& b) {
    int order = std::min(a.order() + b.shift(), b.order() + a.shift());
    if (a.is_zero() || b.is_zero()) return TruncatedSeries::zero(order);
    int shift = a.shift() + b.shift();
    if (shift > order) return TruncatedSeries::zero(order);
    std::vector<BigRational> coeffs(static_cast<size_t>(order - shift) + 1, rational(0));
    // Schoolbook with a zero-skip on the left factor; eta/theta inputs are
    // sparse enough that the skip matters.
    for (int i = a.shift(); i <= std::min(a.order(), order - b.shift()); ++i) {
        const BigRational& ai = a.coeff(i);
        if (ai == 0) continue;
        int jmax = std::min(b.order(), order - i);
        for (int j = b.shift(); j <= jmax; ++j) {
            const BigRational& bj = b.coeff(j);
            if (bj == 0) continue;
            coeffs[static_cast<size_t>(i + j - shift)] += ai * bj;
        }
    }
    return TruncatedSeries::from_coeffs(shift, std::move(coeffs), order);
}

TruncatedSeries series_quotient(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (b.is_zero())
        raise(errc::division_by_zero_series,
              "divisor identically zero up to order " + std::to_string(b.order()));
    int shift = a.shift() - b.shift();
    int order = std::min(a.order() - b.shift(), b.order() + a.shift() - 2 * b.shift());
    if (a.is_zero() || shift > order) return TruncatedSeries::zero(order);
    const BigRational& lead = b.coeff(b.shift());
    std::vector<BigRational> coeffs(static_cast<size_t>(order - shift) + 1, rational(0));
    // c_n = (a_{n+sb} - sum_{k<n} c_k b_{n+sb-k}) / b_{sb}
    for (int n = shift; n <= order; ++n) {
        BigRational value = a.coeff(n + b.shift());
        for (int k = shift; k < n; ++k) {
            const BigRational& ck = coeffs[static_cast<size_t>(k - shift)];
            if (ck == 0) continue;
            value -= ck * b.coeff(n + b.shift() - k);
        }
        coeffs[static_cast<size_t>(n - shift)] = value / lead;
    }
    return TruncatedSeries::from_coeffs(shift, std::move(coeffs), order);
}

TruncatedSeries series_power(const TruncatedSeries& a, int k) {
    if (k == 0) return TruncatedSeries::constant(rational(1), a.order());
    bool invert = k < 0;
    if (invert) k = -k;
    TruncatedSeries result = a;
    for (int i = 1; i < k; ++i) result = series_product(result, a);
    if (invert) {
        TruncatedSeries one = TruncatedSeries::constant(rational(1), result.order());
        result = series_quotient(one, result);
    }
    return result;
}

TruncatedSeries q_derivative(const TruncatedSeries& a) {
    if (a.is_zero()) return a;
    std::vector<BigRational> coeffs;
    coeffs.reserve(static_cast<size_t>(a.order() - a.shift()) + 1);
    for (int e = a.shift(); e <= a.order(); ++e) coeffs.push_back(rational(e) * a.coeff(e));
    return TruncatedSeries::from_coeffs(a.shift(), std::move(coeffs), a.order());
}

SeriesComparison compare_series(const TruncatedSeries& a, const TruncatedSeries& b) {
    SeriesComparison result;
    result.compared_through = std::min(a.order(), b.order());
    int low = std::min(a.shift(), b.shift());
    for (int e = low; e <= result.compared_through; ++e) {
        if (a.coeff(e) != b.coeff(e)) {
            result.first_mismatch = e;
            break;
        }
    }
    return result;
}

} // namespace qmf
