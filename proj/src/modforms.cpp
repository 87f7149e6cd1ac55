#include "qmf/modforms.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <sstream>

namespace qmf {

namespace {

// Divisor-sum sieves cap the usable order; d^{k-1} sums stay inside int64
// through this bound for k <= 4.
constexpr int max_sieve_order = 150000;

/* prod_{n>=1} (1 - q^{s n}) expanded by the pentagonal number theorem:
 * sum_{k in Z} (-1)^k q^{s k(3k-1)/2}. Unit constant term, very sparse. */
TruncatedSeries pentagonal_unit(int scale, int order) {
    std::vector<BigRational> coeffs(static_cast<size_t>(order) + 1, rational(0));
    coeffs[0] = rational(1);
    for (long k = 1;; ++k) {
        long e1 = scale * (k * (3 * k - 1) / 2);
        long e2 = scale * (k * (3 * k + 1) / 2);
        if (e1 > order && e2 > order) break;
        long sign = (k % 2 == 0) ? 1 : -1;
        if (e1 <= order) coeffs[static_cast<size_t>(e1)] += rational(sign);
        if (e2 <= order) coeffs[static_cast<size_t>(e2)] += rational(sign);
    }
    return TruncatedSeries::from_coeffs(0, std::move(coeffs), order);
}

} // namespace

int EtaQuotientSpec::weight24() const {
    int sum = 0;
    for (const Factor& f : factors) sum += f.scale * f.exponent;
    return sum;
}

EtaQuotientSpec EtaQuotientSpec::parse(const std::string& text) {
    EtaQuotientSpec spec;
    size_t pos = 0;
    auto skip_ws = [&] { while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos; };
    auto read_int = [&](const char* what) {
        skip_ws();
        size_t start = pos;
        if (pos < text.size() && text[pos] == '-') ++pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start || (text[start] == '-' && pos == start + 1))
            raise(errc::parse_error, std::string("eta quotient: expected ") + what + " in '" + text + "'");
        return std::stoi(text.substr(start, pos - start));
    };
    skip_ws();
    if (pos < text.size() && text[pos] == '-') {
        spec.sign = -1;
        ++pos;
    }
    while (true) {
        skip_ws();
        if (pos >= text.size()) break;
        int scale = read_int("scale");
        if (scale <= 0) raise(errc::parse_error, "eta quotient: scale must be positive in '" + text + "'");
        skip_ws();
        int exponent = 1;
        if (pos < text.size() && text[pos] == '^') {
            ++pos;
            exponent = read_int("exponent");
        }
        spec.factors.push_back({scale, exponent});
    }
    if (spec.factors.empty())
        raise(errc::parse_error, "eta quotient: empty spec");
    return spec;
}

std::string EtaQuotientSpec::to_text() const {
    std::ostringstream out;
    if (sign < 0) out << "-";
    bool first = true;
    for (const Factor& f : factors) {
        if (!first) out << " ";
        first = false;
        out << f.scale << "^" << f.exponent;
    }
    return out.str();
}

TruncatedSeries eta_quotient_series(const EtaQuotientSpec& spec, int order) {
    int weight = spec.weight24();
    if (weight % 24 != 0)
        raise(errc::non_integral_shift, "eta quotient " + spec.to_text() + " has weight sum " +
                                            std::to_string(weight) + ", not divisible by 24");
    int shift = weight / 24;
    int unit_order = order - shift;
    if (unit_order < 0) return TruncatedSeries::zero(order);

    TruncatedSeries numerator = TruncatedSeries::constant(rational(1), unit_order);
    TruncatedSeries denominator = numerator;
    for (const EtaQuotientSpec::Factor& f : spec.factors) {
        if (f.exponent == 0) continue;
        TruncatedSeries base = pentagonal_unit(f.scale, unit_order);
        TruncatedSeries power = series_power(base, std::abs(f.exponent));
        if (f.exponent > 0)
            numerator = series_product(numerator, power);
        else
            denominator = series_product(denominator, power);
    }
    TruncatedSeries unit = series_quotient(numerator, denominator);
    return series_product(TruncatedSeries::monomial(rational(spec.sign), shift, order),
                          unit.truncated(unit_order));
}

TruncatedSeries theta_series(const ThetaSpec& spec, int order) {
    long a = spec.a, b = spec.b, c = spec.c;
    if (a <= 0 || 4 * a * c - b * b <= 0)
        raise(errc::not_positive_definite,
              "form (" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) +
                  ") is not positive definite");
    // Q(m,n) >= lambda (m^2 + n^2) with lambda the least eigenvalue, so
    // |m|, |n| <= sqrt(order / lambda) covers every representation.
    double lambda =
        (static_cast<double>(a + c) - std::sqrt(static_cast<double>((a - c) * (a - c) + b * b))) / 2.0;
    long bound = static_cast<long>(std::ceil(std::sqrt(std::max(0, order) / lambda))) + 1;
    std::vector<long long> counts(static_cast<size_t>(order) + 1, 0);
    for (long m = -bound; m <= bound; ++m) {
        for (long n = -bound; n <= bound; ++n) {
            long long value = a * m * m + b * m * n + c * n * n;
            if (value > order) continue;
            if (std::labs(m) == bound || std::labs(n) == bound)
                raise(errc::range_exceeded, "theta enumeration bound too small (internal)");
            counts[static_cast<size_t>(value)] += 1;
        }
    }
    std::vector<BigRational> coeffs;
    coeffs.reserve(counts.size());
    for (long long count : counts) coeffs.push_back(rational(count));
    return TruncatedSeries::from_coeffs(0, std::move(coeffs), order);
}

TruncatedSeries eisenstein_series(const EisensteinSpec& spec, int order) {
    if (spec.k < 3)
        raise(errc::parse_error, "Eisenstein weight must be >= 3");
    if (spec.chi.parity() * spec.psi.parity() != ((spec.k % 2 == 0) ? +1 : -1))
        raise(errc::parity_violation,
              "chi(-1) psi(-1) != (-1)^k for E_{" + std::to_string(spec.k) + "," +
                  spec.chi.token() + "," + spec.psi.token() + "}");
    int inner = order / spec.scale;
    if (inner > max_sieve_order)
        raise(errc::range_exceeded, "Eisenstein order beyond sieve bound");
    std::vector<long long> sums(static_cast<size_t>(std::max(inner, 0)) + 1, 0);
    for (long long d = 1; d <= inner; ++d) {
        long long dk = 1;
        for (int i = 1; i < spec.k; ++i) dk *= d;
        long long psi_d = spec.psi(d);
        if (psi_d == 0) continue;
        for (long long n = d; n <= inner; n += d)
            sums[static_cast<size_t>(n)] += psi_d * spec.chi(n / d) * dk;
    }
    std::vector<BigRational> coeffs(static_cast<size_t>(order) + 1, rational(0));
    if (spec.chi.modulus() == 1)
        coeffs[0] = -generalized_bernoulli(static_cast<unsigned long>(spec.k), spec.psi) /
                    rational(2 * spec.k);
    for (long long n = 1; n <= inner; ++n)
        coeffs[static_cast<size_t>(n * spec.scale)] = rational(sums[static_cast<size_t>(n)]);
    return TruncatedSeries::from_coeffs(0, std::move(coeffs), order);
}

TruncatedSeries e4_series(const E4Spec& spec, int order) {
    int inner = order / spec.scale;
    if (inner > max_sieve_order)
        raise(errc::range_exceeded, "E4 order beyond sieve bound");
    std::vector<long long> sigma3(static_cast<size_t>(std::max(inner, 0)) + 1, 0);
    for (long long d = 1; d <= inner; ++d)
        for (long long n = d; n <= inner; n += d)
            sigma3[static_cast<size_t>(n)] += d * d * d;
    std::vector<BigRational> coeffs(static_cast<size_t>(order) + 1, rational(0));
    coeffs[0] = rational(1);
    for (long long n = 1; n <= inner; ++n)
        coeffs[static_cast<size_t>(n * spec.scale)] = rational(240) * rational(sigma3[static_cast<size_t>(n)]);
    return TruncatedSeries::from_coeffs(0, std::move(coeffs), order);
}

namespace {

TruncatedSeries generator_series(const Generator& generator, int order) {
    struct Visitor {
        int order;
        TruncatedSeries operator()(const EtaQuotientSpec& spec) const { return eta_quotient_series(spec, order); }
        TruncatedSeries operator()(const ThetaSpec& spec) const { return theta_series(spec, order); }
        TruncatedSeries operator()(const EisensteinSpec& spec) const { return eisenstein_series(spec, order); }
        TruncatedSeries operator()(const E4Spec& spec) const { return e4_series(spec, order); }
        TruncatedSeries operator()(const QMonomialSpec&) const {
            return TruncatedSeries::monomial(rational(1), 1, order);
        }
    };
    return std::visit(Visitor{order}, generator);
}

/* Recursive-descent parser for the FormExpr grammar. Generator arguments
 * (eta specs, character tokens) are collected raw up to the matching ','
 * or ')' so tokens like "chi-4" and "1^-3 9^3" need no escaping. */
class ExprParser {
public:
    explicit ExprParser(const std::string& text) : text_(text) {}

    FormExpr parse() {
        FormExpr expr;
        expr.source = text_;
        skip_ws();
        int sign = consume_sign();
        expr.terms.push_back(parse_term(sign));
        skip_ws();
        while (!done()) {
            char op = peek();
            if (op != '+' && op != '-')
                raise(errc::parse_error, err("expected '+' or '-'"));
            ++pos_;
            expr.terms.push_back(parse_term(op == '-' ? -1 : +1));
            skip_ws();
        }
        return expr;
    }

private:
    FormExpr::Term parse_term(int sign) {
        FormExpr::Term term;
        term.coefficient = rational(sign);
        bool divide = false;
        bool atom_expected = true;
        while (true) {
            skip_ws();
            if (done()) break;
            char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                BigRational value = parse_rational_literal();
                if (divide)
                    term.coefficient /= value;
                else
                    term.coefficient *= value;
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                FormExpr::Factor factor = parse_generator();
                skip_ws();
                if (!done() && peek() == '^') {
                    ++pos_;
                    factor.exponent *= parse_int_literal();
                }
                if (divide) factor.exponent = -factor.exponent;
                term.factors.push_back(factor);
            } else {
                raise(errc::parse_error, err("expected a rational or generator"));
            }
            atom_expected = false;
            skip_ws();
            if (done() || peek() == '+' || peek() == '-') break;
            char op = peek();
            if (op == '*') {
                divide = false;
                ++pos_;
            } else if (op == '/') {
                divide = true;
                ++pos_;
            } else {
                raise(errc::parse_error, err("expected an operator"));
            }
            atom_expected = true;
        }
        if (atom_expected) raise(errc::parse_error, err("dangling operator"));
        return term;
    }

    FormExpr::Factor parse_generator() {
        std::string name;
        while (!done() && (std::isalnum(static_cast<unsigned char>(peek())))) name += text_[pos_++];
        FormExpr::Factor factor;
        if (name == "q") {
            factor.generator = QMonomialSpec{};
            return factor;
        }
        if (name == "E4") {
            E4Spec spec;
            if (!done() && peek() == '(') {
                auto args = parse_args();
                if (args.size() != 1) raise(errc::parse_error, err("E4 takes one argument"));
                spec.scale = arg_int(args[0]);
            }
            if (spec.scale <= 0) raise(errc::parse_error, err("E4 scale must be positive"));
            factor.generator = spec;
            return factor;
        }
        if (name == "eta") {
            auto args = parse_args(/*split=*/false);
            factor.generator = EtaQuotientSpec::parse(args[0]);
            return factor;
        }
        if (name == "theta") {
            auto args = parse_args();
            if (args.size() != 3) raise(errc::parse_error, err("theta takes three arguments"));
            factor.generator = ThetaSpec{arg_int(args[0]), arg_int(args[1]), arg_int(args[2])};
            return factor;
        }
        if (name == "E") {
            auto args = parse_args();
            if (args.size() != 3 && args.size() != 4)
                raise(errc::parse_error, err("E takes E(k, chi, psi[, scale])"));
            EisensteinSpec spec{arg_int(args[0]), DirichletCharacter::by_token(args[1]),
                                DirichletCharacter::by_token(args[2]),
                                args.size() == 4 ? arg_int(args[3]) : 1};
            if (spec.scale <= 0) raise(errc::parse_error, err("E scale must be positive"));
            factor.generator = spec;
            return factor;
        }
        raise(errc::parse_error, err("unknown generator '" + name + "'"));
    }

    int arg_int(const std::string& text) {
        try {
            size_t used = 0;
            int value = std::stoi(text, &used);
            if (used != text.size())
                raise(errc::parse_error, err("expected an integer argument, got '" + text + "'"));
            return value;
        } catch (const std::logic_error&) {
            raise(errc::parse_error, err("expected an integer argument, got '" + text + "'"));
        }
    }

    std::vector<std::string> parse_args(bool split = true) {
        skip_ws();
        if (done() || peek() != '(') raise(errc::parse_error, err("expected '('"));
        ++pos_;
        std::vector<std::string> args(1);
        while (true) {
            if (done()) raise(errc::parse_error, err("unterminated argument list"));
            char c = text_[pos_++];
            if (c == ')') break;
            if (c == ',' && split) {
                args.emplace_back();
                continue;
            }
            args.back() += c;
        }
        for (std::string& arg : args) {
            size_t begin = arg.find_first_not_of(" \t");
            size_t end = arg.find_last_not_of(" \t");
            arg = (begin == std::string::npos) ? "" : arg.substr(begin, end - begin + 1);
            if (arg.empty()) raise(errc::parse_error, err("empty argument"));
        }
        return args;
    }

    BigRational parse_rational_literal() {
        std::string digits = parse_digits();
        // Consume '/' only when a digit follows: "23/24" is one literal,
        // "2/eta(...)" is a division.
        if (!done() && peek() == '/' && pos_ + 1 < text_.size() &&
            std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
            ++pos_;
            std::string den = parse_digits();
            return parse_rational(digits + "/" + den);
        }
        return parse_rational(digits);
    }

    int parse_int_literal() {
        skip_ws();
        bool negative = false;
        if (!done() && peek() == '-') {
            negative = true;
            ++pos_;
        }
        std::string digits = parse_digits();
        int value = std::stoi(digits);
        return negative ? -value : value;
    }

    std::string parse_digits() {
        std::string digits;
        while (!done() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[pos_++];
        if (digits.empty()) raise(errc::parse_error, err("expected digits"));
        return digits;
    }

    int consume_sign() {
        if (!done() && peek() == '-') {
            ++pos_;
            return -1;
        }
        if (!done() && peek() == '+') ++pos_;
        return +1;
    }

    void skip_ws() {
        while (!done() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
    }
    bool done() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }
    std::string err(const std::string& what) const {
        return what + " at position " + std::to_string(pos_) + " in '" + text_ + "'";
    }

    const std::string& text_;
    size_t pos_ = 0;
};

TruncatedSeries eval_term(const FormExpr::Term& term, int order) {
    TruncatedSeries result = TruncatedSeries::constant(term.coefficient, order);
    for (const FormExpr::Factor& factor : term.factors) {
        if (factor.exponent == 0) continue;
        TruncatedSeries base = generator_series(factor.generator, order);
        result = series_product(result, series_power(base, factor.exponent));
    }
    return result;
}

} // namespace

FormExpr parse_form_expr(const std::string& text) {
    return ExprParser(text).parse();
}

TruncatedSeries eval_form_expr(const FormExpr& expr, int order) {
    if (expr.terms.empty()) raise(errc::parse_error, "empty expression");
    /* Negative exponents and shifts eat trusted order; evaluate with
     * growing padding until the requested order survives the bookkeeping. */
    for (int pad = 8; pad <= std::max(1024, 4 * order); pad *= 2) {
        TruncatedSeries sum = eval_term(expr.terms[0], order + pad);
        for (size_t i = 1; i < expr.terms.size(); ++i)
            sum = add(sum, eval_term(expr.terms[i], order + pad));
        if (sum.order() >= order) return sum.truncated(order);
    }
    raise(errc::insufficient_order, "expression '" + expr.source + "' cannot reach order " +
                                        std::to_string(order));
}

} // namespace qmf
