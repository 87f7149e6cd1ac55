#pragma once

#include <string>
#include <variant>
#include <vector>

#include "qmf/characters.hpp"
#include "qmf/qseries.hpp"

namespace qmf {

/* Eta quotient written the way the tables write it: "1^5 3^1 4^5 6^2 12^1"
 * with an optional leading "-" and negative exponents for denominator
 * factors. Each (scale, exponent) pair stands for eta(scale*z)^exponent. */
struct EtaQuotientSpec {
    struct Factor {
        int scale;
        int exponent;
    };
    std::vector<Factor> factors;
    int sign = +1;

    static EtaQuotientSpec parse(const std::string& text);
    std::string to_text() const;
    // sum scale_i * exponent_i; the q-shift is this over 24.
    int weight24() const;
};

// Positive definite binary quadratic form Q(m,n) = a m^2 + b mn + c n^2.
struct ThetaSpec {
    int a;
    int b;
    int c;
};

// E_{k,chi,psi}(q^scale): c0 + sum_{n>=1} (sum_{d|n} psi(d) chi(n/d) d^{k-1}) q^{scale n},
// c0 = -B_{k,psi}/(2k) when chi has conductor 1, else 0.
struct EisensteinSpec {
    int k;
    DirichletCharacter chi;
    DirichletCharacter psi;
    int scale = 1;
};

// E4(q^scale) normalized as 1 + 240 sum sigma_3(n) q^{scale n}.
struct E4Spec {
    int scale = 1;
};

// Bare q^1; only used by override files and negative-control tests.
struct QMonomialSpec {};

using Generator = std::variant<EtaQuotientSpec, ThetaSpec, EisensteinSpec, E4Spec, QMonomialSpec>;

/* A rational linear combination of products of generator powers. This is
 * the shape of every t, f and M column in the tables. The source text is
 * kept verbatim for reporting and for rebuilding perturbed variants. */
struct FormExpr {
    struct Factor {
        Generator generator;
        int exponent = 1;
    };
    struct Term {
        BigRational coefficient;
        std::vector<Factor> factors;
    };
    std::vector<Term> terms;
    std::string source;
};

/* Grammar (whitespace-insensitive outside generator arguments):
 *   expr   := ['-'] term (('+'|'-') term)*
 *   term   := atom (('*'|'/') atom)*
 *   atom   := rational | generator ['^' ['-'] int]
 *   generator := 'eta(' etaspec ')' | 'theta(' int ',' int ',' int ')'
 *              | 'E(' int ',' char ',' char [',' int] ')'
 *              | 'E4' ['(' int ')'] | 'q'
 * Character tokens are the table names: 1, chi3, chi5, chi7, chi11,
 * chi23, chi-4. A '/' before an atom flips its exponent (or divides the
 * term coefficient for rational atoms). */
FormExpr parse_form_expr(const std::string& text);

TruncatedSeries eta_quotient_series(const EtaQuotientSpec& spec, int order);
TruncatedSeries theta_series(const ThetaSpec& spec, int order);
TruncatedSeries eisenstein_series(const EisensteinSpec& spec, int order);
TruncatedSeries e4_series(const E4Spec& spec, int order);

// Exact evaluation of the expression tree, trusted through `order`.
TruncatedSeries eval_form_expr(const FormExpr& expr, int order);

} // namespace qmf
