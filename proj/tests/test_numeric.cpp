#include <doctest.h>

#include <random>

#include "qmf/numeric.hpp"

using namespace qmf;

namespace {

// Independent Bernoulli-number oracle: solve sum_{j<=m} C(m+1,j) B_j = 0
// with naive rational arithmetic over a test-local Pascal triangle.
std::vector<BigRational> oracle_bernoulli(unsigned long up_to) {
    std::vector<std::vector<BigInt>> pascal(up_to + 2);
    for (size_t n = 0; n < pascal.size(); ++n) {
        pascal[n].resize(n + 1, BigInt(1));
        for (size_t k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    }
    std::vector<BigRational> b{rational(1)};
    for (unsigned long m = 1; m <= up_to; ++m) {
        BigRational sum = rational(0);
        for (unsigned long j = 0; j < m; ++j) sum += BigRational(pascal[m + 1][j]) * b[j];
        b.push_back(-sum / rational(static_cast<long>(m) + 1));
    }
    return b;
}

} // namespace

TEST_CASE("rational helpers canonicalize") {
    CHECK(rational(2, 4) == rational(1, 2));
    CHECK(rational(-2, -4) == rational(1, 2));
    CHECK(rational(3, -6) == rational(-1, 2));
    CHECK(rational(2, 4).get_den() == 1 * 2);
    CHECK(to_string(rational(-22, 4)) == "-11/2");
    CHECK(is_integer(rational(8, 4)));
    CHECK(to_integer(rational(8, 4)) == 2);
    CHECK_THROWS_AS((void)to_integer(rational(1, 3)), Error);
    CHECK(parse_rational("-23/24") == rational(-23, 24));
}

TEST_CASE("binomial examples and Pascal identity") {
    CHECK(binomial(5, 2) == 10);
    CHECK(binomial(7, -1) == 0);
    CHECK(binomial(7, 9) == 0);
    CHECK(binomial(0, 0) == 1);

    // derived example against a from-scratch Pascal recurrence
    std::vector<std::vector<BigInt>> pascal(61);
    for (size_t n = 0; n < pascal.size(); ++n) {
        pascal[n].resize(n + 1, BigInt(1));
        for (size_t k = 1; k < n; ++k) pascal[n][k] = pascal[n - 1][k - 1] + pascal[n - 1][k];
    }
    CHECK(binomial(30, 15) == pascal[30][15]);
    CHECK(binomial(30, 15) == BigInt("155117520"));
    for (unsigned long n = 1; n <= 60; ++n)
        for (long k = 1; k < static_cast<long>(n); ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("pochhammer examples and functional equation") {
    CHECK(pochhammer(rational(1, 4), 0) == rational(1));
    CHECK(pochhammer(rational(1, 4), 2) == rational(5, 16));
    CHECK(pochhammer(rational(1, 6), 3) == rational(1, 6) * rational(7, 6) * rational(13, 6));
    CHECK(pochhammer(rational(1, 6), 3) == rational(91, 216));

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-6, 6);
    std::uniform_int_distribution<long> den(1, 5);
    std::uniform_int_distribution<unsigned long> len(0, 8);
    for (int i = 0; i < 50; ++i) {
        BigRational a = rational(num(rng), den(rng));
        unsigned long m = len(rng), n = len(rng);
        BigRational lhs = pochhammer(a, m + n);
        BigRational rhs = pochhammer(a, m) * pochhammer(a + rational(static_cast<long>(m)), n);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("bernoulli polynomial examples") {
    CHECK(bernoulli_polynomial(0, rational(17, 3)) == rational(1));
    CHECK(bernoulli_polynomial(1, rational(0)) == rational(-1, 2));

    // oracle: B_3(x) = x^3 - (3/2)x^2 + (1/2)x from the recurrence table
    auto b = oracle_bernoulli(3);
    BigRational x = rational(1, 2);
    BigRational direct = x * x * x + rational(3) * b[1] * x * x + rational(3) * b[2] * x + b[3];
    CHECK(direct == rational(0));
    CHECK(bernoulli_polynomial(3, rational(1, 2)) == rational(0));
}

TEST_CASE("bernoulli recurrence holds through k = 30") {
    auto oracle = oracle_bernoulli(30);
    for (unsigned long k = 0; k <= 30; ++k) CHECK(bernoulli_number(k) == oracle[k]);
    // sum_{j=0}^{k} C(k+1, j) B_j = 0 for k >= 1
    for (unsigned long k = 1; k <= 30; ++k) {
        BigRational sum = rational(0);
        for (unsigned long j = 0; j <= k; ++j)
            sum += BigRational(binomial(k + 1, static_cast<long>(j))) *
                   bernoulli_polynomial(j, rational(0));
        CHECK(sum == rational(0));
    }
}
