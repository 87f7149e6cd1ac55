#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <vector>

#include "qmf/registry.hpp"

using namespace qmf;

namespace {

// oracle: the pentagonal expansion of prod (1 - q^{s n}) as a plain
// coefficient vector, built term by term
std::vector<long> oracle_pentagonal(int scale, int order) {
    std::vector<long> series(static_cast<size_t>(order) + 1, 0);
    series[0] = 1;
    for (long k = 1;; ++k) {
        long e1 = scale * (k * (3 * k - 1) / 2);
        long e2 = scale * (k * (3 * k + 1) / 2);
        if (e1 > order && e2 > order) break;
        long sign = (k % 2 == 0) ? 1 : -1;
        if (e1 <= order) series[static_cast<size_t>(e1)] += sign;
        if (e2 <= order) series[static_cast<size_t>(e2)] += sign;
    }
    return series;
}

std::vector<long> oracle_multiply(const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> out(a.size(), 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; i + j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

// oracle: representation counts by brute-force lattice enumeration over a
// generous box
std::vector<long> oracle_theta(int a, int b, int c, int order) {
    std::vector<long> counts(static_cast<size_t>(order) + 1, 0);
    long box = 4 * order + 4;
    for (long m = -box; m <= box; ++m)
        for (long n = -box; n <= box; ++n) {
            long value = a * m * m + b * m * n + c * n * n;
            if (value >= 0 && value <= order) counts[static_cast<size_t>(value)] += 1;
        }
    return counts;
}

} // namespace

TEST_CASE("eta quotient parsing round-trips") {
    EtaQuotientSpec spec = EtaQuotientSpec::parse("1^5 3^1 4^5 6^2 12^1");
    CHECK(spec.factors.size() == 5);
    CHECK(spec.sign == 1);
    CHECK(spec.to_text() == "1^5 3^1 4^5 6^2 12^1");
    EtaQuotientSpec negative = EtaQuotientSpec::parse("-1^-3 9^3");
    CHECK(negative.sign == -1);
    CHECK(negative.factors[0].exponent == -3);
    CHECK(negative.weight24() == 24);
    CHECK_THROWS_AS(EtaQuotientSpec::parse(""), Error);
}

TEST_CASE("eta quotient series basics") {
    // 1^1 23^1 expands as q * (pentagonal at 1) * (pentagonal at 23)
    TruncatedSeries series = eta_quotient_series(EtaQuotientSpec::parse("1^1 23^1"), 6);
    CHECK(series.shift() == 1);
    auto oracle = oracle_multiply(oracle_pentagonal(1, 5), oracle_pentagonal(23, 5));
    for (int e = 1; e <= 6; ++e) CHECK(series.coeff(e) == rational(oracle[static_cast<size_t>(e - 1)]));

    CHECK(eta_quotient_series(EtaQuotientSpec::parse("1^24"), 3).shift() == 1);
    CHECK_THROWS_AS(eta_quotient_series(EtaQuotientSpec::parse("1^1"), 3), Error);

    TruncatedSeries negated = eta_quotient_series(EtaQuotientSpec::parse("-1^-3 9^3"), 5);
    CHECK(negated.shift() == 1);
    CHECK(negated.coeff(1) == rational(-1));
}

TEST_CASE("eta quotient matches the term-by-term oracle to order 500") {
    TruncatedSeries series = eta_quotient_series(EtaQuotientSpec::parse("1^1 23^1"), 500);
    auto oracle = oracle_multiply(oracle_pentagonal(1, 499), oracle_pentagonal(23, 499));
    for (int e = 1; e <= 500; ++e)
        CHECK(series.coeff(e) == rational(oracle[static_cast<size_t>(e - 1)]));
}

TEST_CASE("theta series against brute force") {
    TruncatedSeries f = theta_series({1, 1, 6}, 1);
    CHECK(f.coeff(0) == rational(1));
    CHECK(f.coeff(1) == rational(2));

    TruncatedSeries F = theta_series({2, 1, 3}, 4);
    CHECK(F.coeff(1) == rational(0));

    TruncatedSeries f2 = theta_series({1, 0, 1}, 2);
    CHECK(f2.coeff(0) == rational(1));
    CHECK(f2.coeff(1) == rational(4));
    CHECK(f2.coeff(2) == rational(4));

    for (const ThetaSpec& spec : {ThetaSpec{1, 1, 6}, ThetaSpec{2, 1, 3}, ThetaSpec{1, 1, 2}}) {
        TruncatedSeries series = theta_series(spec, 60);
        auto oracle = oracle_theta(spec.a, spec.b, spec.c, 60);
        for (int e = 0; e <= 60; ++e)
            CHECK(series.coeff(e) == rational(oracle[static_cast<size_t>(e)]));
    }

    CHECK_THROWS_AS(theta_series({0, 0, 1}, 5), Error);
    CHECK_THROWS_AS(theta_series({1, 3, 1}, 5), Error);
}

TEST_CASE("eisenstein series coefficients") {
    auto chi23 = DirichletCharacter::quadratic(23);
    auto trivial = DirichletCharacter::trivial();

    TruncatedSeries a_series = eisenstein_series({3, chi23, trivial, 1}, 40);
    CHECK(a_series.coeff(0) == rational(0));    // L = 23 > 1
    CHECK(a_series.coeff(1) == rational(1));

    TruncatedSeries e_series = eisenstein_series({3, trivial, chi23, 1}, 40);
    // oracle: direct divisor sums at n = 5
    CHECK(e_series.coeff(5) == rational(1 + chi23(5) * 25));
    CHECK(e_series.coeff(5) == rational(-24));
    CHECK(a_series.coeff(5) == rational(chi23(5) + 25));
    CHECK(a_series.coeff(5) == rational(24));
    CHECK(e_series.coeff(0) == rational(-24));    // -B_{3,chi23}/6 = -144/6

    // parity condition: chi5 is even, so E_{3,1,chi5} is illegal
    CHECK_THROWS_AS(eisenstein_series({3, trivial, DirichletCharacter::quadratic(5), 1}, 5), Error);

    // argument scaling moves coefficient n to exponent scale * n
    TruncatedSeries scaled = eisenstein_series({3, chi23, trivial, 3}, 15);
    CHECK(scaled.coeff(1) == rational(0));
    CHECK(scaled.coeff(3) == a_series.coeff(1));
    CHECK(scaled.coeff(15) == a_series.coeff(5));
}

TEST_CASE("eisenstein scaling and sign laws for the 23 pair") {
    auto chi23 = DirichletCharacter::quadratic(23);
    auto trivial = DirichletCharacter::trivial();
    TruncatedSeries a_series = eisenstein_series({3, chi23, trivial, 1}, 23 * 40);
    TruncatedSeries e_series = eisenstein_series({3, trivial, chi23, 1}, 23 * 40);
    for (int n = 1; n <= 40; ++n) {
        CHECK(a_series.coeff(23 * n) == rational(529) * a_series.coeff(n));
        CHECK(e_series.coeff(23 * n) == e_series.coeff(n));
    }
    for (int n = 1; n <= 100; ++n) {
        if (n % 23 == 0) continue;
        CHECK(e_series.coeff(n) == rational(chi23(n)) * a_series.coeff(n));
    }
}

TEST_CASE("E4 normalization") {
    TruncatedSeries e4 = e4_series({1}, 6);
    CHECK(e4.coeff(0) == rational(1));
    CHECK(e4.coeff(1) == rational(240));
    CHECK(e4.coeff(2) == rational(240 * 9));
    CHECK(e4.coeff(3) == rational(240 * 28));
    TruncatedSeries e4_scaled = e4_series({2}, 6);
    CHECK(e4_scaled.coeff(1) == rational(0));
    CHECK(e4_scaled.coeff(2) == rational(240));
}

TEST_CASE("form expression evaluation") {
    FormExpr t1 = parse_form_expr("eta(1^1 23^1) / theta(1,1,6)");
    TruncatedSeries t = eval_form_expr(t1, 8);
    CHECK(t.shift() == 1);
    CHECK(t.coeff(1) == rational(1));
    // hand division: (q - q^2 - q^3 + ...) * (1 - 2q + 4q^2 - ...)
    CHECK(t.coeff(2) == rational(-3));
    // multiply-back oracle
    TruncatedSeries back = series_product(t, theta_series({1, 1, 6}, 8));
    CHECK(!compare_series(back, eta_quotient_series(EtaQuotientSpec::parse("1^1 23^1"), 8))
               .first_mismatch);

    // L1 constant term: (-7 + 4 - 9 + 252)/240 = 1
    FormExpr l1 = parse_form_expr("-7/240*E4(1) + 1/60*E4(2) - 3/80*E4(3) + 21/20*E4(6)");
    CHECK(eval_form_expr(l1, 2).coeff(0) == rational(1));

    FormExpr m23 = parse_form_expr("-1/24 * E(3,1,chi23) - 23/24 * E(3,chi23,1)");
    CHECK(eval_form_expr(m23, 2).coeff(0) == rational(1));

    FormExpr monomial = parse_form_expr("q^3 - 2*q");
    TruncatedSeries m = eval_form_expr(monomial, 5);
    CHECK(m.coeff(3) == rational(1));
    CHECK(m.coeff(1) == rational(-2));

    CHECK_THROWS_AS(parse_form_expr("spam(1)"), Error);
    CHECK_THROWS_AS(parse_form_expr("eta(1^1 23^1) +"), Error);
    CHECK_THROWS_AS(parse_form_expr("E(3,chi9,1)"), Error);
    CHECK_THROWS_AS(parse_form_expr("theta(a,b,c)"), Error);
    CHECK_THROWS_AS(parse_form_expr("theta(1,1)"), Error);
    CHECK_THROWS_AS(parse_form_expr("2 * * q"), Error);
}

TEST_CASE("registry entries") {
    const RegistryEntry& f23 = registry_entry("f23");
    CHECK(f23.filter == FilterKind::character_one);
    CHECK(f23.filter_character.modulus() == 23);
    CHECK(f23.super_exponent == 1);
    CHECK(!f23.closed_form_id.has_value());

    const RegistryEntry& vi = registry_entry("vi");
    CHECK(vi.closed_form_id == std::string("vi"));
    CHECK(vi.super_exponent == 3);
    CHECK(vi.filter == FilterKind::eta_coprime);
    CHECK(vi.eta_scales() == std::vector<int>{1, 2, 3, 6});

    const RegistryEntry& xi = registry_entry("xi");
    CHECK(xi.m_expr.terms.size() == 4);    // the four E4 pieces of L1
    CHECK(xi.closed_form_id == std::string("xi"));

    CHECK_THROWS_AS((void)registry_entry("nope"), Error);

    // every t leads with +-q, every f and M with constant 1
    for (const std::string& id : registry_ids) {
        const RegistryEntry& entry = registry_entry(id);
        TruncatedSeries t = eval_form_expr(entry.t_expr, 3);
        CHECK(t.shift() == 1);
        CHECK((t.coeff(1) == 1 || t.coeff(1) == -1));
        CHECK(eval_form_expr(entry.f_expr, 2).coeff(0) == rational(1));
        CHECK(eval_form_expr(entry.m_expr, 2).coeff(0) == rational(1));
    }
}

TEST_CASE("registry overrides") {
    std::string path = "qmf_test_override.txt";
    {
        std::ofstream out(path);
        out << "# comment line\n";
        out << "[entry f23]\n";
        out << "s = 2\n";
        out << "filter = all\n";
    }
    Registry registry = Registry::with_overrides(path);
    CHECK(registry.entry("f23").super_exponent == 2);
    CHECK(registry.entry("f23").filter == FilterKind::all_primes);
    CHECK(registry.entry("F23").super_exponent == 1);    // untouched
    std::remove(path.c_str());

    CHECK_THROWS_AS(Registry::with_overrides("does_not_exist.txt"), Error);

    auto write_and_load = [&](const std::string& body) {
        std::ofstream out(path);
        out << body;
        out.close();
        Registry loaded = Registry::with_overrides(path);
        std::remove(path.c_str());
        return loaded;
    };
    CHECK_THROWS_AS(write_and_load("[entry nope]\ns = 2\n"), Error);
    CHECK_THROWS_AS(write_and_load("[entry f23]\ncolour = red\n"), Error);
    CHECK_THROWS_AS(write_and_load("s = 2\n"), Error);              // key before any section
    CHECK_THROWS_AS(write_and_load("[entry f23]\ns = 7\n"), Error);
    CHECK_THROWS_AS(write_and_load("[entry f23]\ns = abc\n"), Error);

    // eta weight is an evaluation-time check, so a bad override loads but
    // cannot be evaluated
    Registry bad_weight = write_and_load("[entry f23]\nt = eta(1^1)\n");
    CHECK_THROWS_AS(eval_form_expr(bad_weight.entry("f23").t_expr, 4), Error);

    // a full-column override evaluates like the built-in one
    Registry swapped = write_and_load("[entry vi]\nM = eta(1^1 2^4 3^5 6^-4)\n");
    CHECK(eval_form_expr(swapped.entry("vi").m_expr, 2).coeff(0) == rational(1));
}
