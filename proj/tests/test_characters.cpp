#include <doctest.h>

#include <set>

#include "qmf/characters.hpp"

using namespace qmf;

namespace {

// oracle: the nonzero squares modulo an odd prime
std::set<std::int64_t> squares_mod(std::int64_t p) {
    std::set<std::int64_t> squares;
    for (std::int64_t x = 1; x < p; ++x) squares.insert(x * x % p);
    return squares;
}

} // namespace

TEST_CASE("quadratic symbol against the square-set oracle") {
    auto chi23 = DirichletCharacter::quadratic(23);
    auto squares = squares_mod(23);
    CHECK(squares == std::set<std::int64_t>{1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18});
    for (std::int64_t n = 1; n < 23; ++n)
        CHECK(chi23(n) == (squares.count(n) ? +1 : -1));
    CHECK(chi23(23) == 0);
    CHECK(chi23(46) == 0);
    CHECK(chi23(2) == +1);
    CHECK(chi23(5) == -1);
    CHECK(chi23(13) == +1);

    for (std::int64_t p : {3, 5, 7, 11}) {
        auto chi = DirichletCharacter::quadratic(p);
        auto sq = squares_mod(p);
        for (std::int64_t n = 0; n < 3 * p; ++n) {
            int expected = (n % p == 0) ? 0 : (sq.count(n % p) ? +1 : -1);
            CHECK(chi(n) == expected);
        }
    }
}

TEST_CASE("chi_minus4 values") {
    auto chi = DirichletCharacter::chi_minus4();
    CHECK(chi(1) == +1);
    CHECK(chi(2) == 0);
    CHECK(chi(3) == -1);
    CHECK(chi(4) == 0);
    CHECK(chi(5) == +1);
    CHECK(chi.modulus() == 4);
    CHECK(chi.parity() == -1);
}

TEST_CASE("multiplicativity, periodicity, parity, negative arguments") {
    const DirichletCharacter chars[] = {
        DirichletCharacter::trivial(),     DirichletCharacter::quadratic(3),
        DirichletCharacter::quadratic(5),  DirichletCharacter::quadratic(7),
        DirichletCharacter::quadratic(11), DirichletCharacter::quadratic(23),
        DirichletCharacter::chi_minus4(),
    };
    for (const auto& chi : chars) {
        for (std::int64_t m = -40; m <= 40; ++m) {
            for (std::int64_t n = -40; n <= 40; ++n) CHECK(chi(m * n) == chi(m) * chi(n));
            CHECK(chi(m + chi.modulus()) == chi(m));
            CHECK(chi(-m) == chi.parity() * chi(m));
        }
        CHECK(chi(-1) == chi.parity());
        CHECK(chi(1) == 1);
    }
    CHECK(DirichletCharacter::trivial()(0) == 1);    // gcd(0, 1) = 1
}

TEST_CASE("character tokens") {
    CHECK(DirichletCharacter::by_token("1").kind() == DirichletCharacter::Kind::trivial);
    CHECK(DirichletCharacter::by_token("chi23").modulus() == 23);
    CHECK(DirichletCharacter::by_token("chi-4").modulus() == 4);
    CHECK_THROWS_AS(DirichletCharacter::by_token("chi13"), Error);
}

TEST_CASE("generalized Bernoulli numbers") {
    CHECK(generalized_bernoulli(3, DirichletCharacter::trivial()) == rational(0));
    CHECK(generalized_bernoulli(3, DirichletCharacter::chi_minus4()) == rational(3, 2));
    CHECK(generalized_bernoulli(3, DirichletCharacter::quadratic(23)) == rational(144));
    CHECK(generalized_bernoulli(3, DirichletCharacter::quadratic(3)) == rational(2, 3));
    CHECK(generalized_bernoulli(3, DirichletCharacter::quadratic(7)) == rational(48, 7));
    CHECK(generalized_bernoulli(3, DirichletCharacter::quadratic(11)) == rational(18));
    CHECK(generalized_bernoulli(4, DirichletCharacter::quadratic(5)) == rational(-8));
}

TEST_CASE("parity-vanishing of generalized Bernoulli numbers") {
    // B_{k,psi} = 0 whenever psi(-1) != (-1)^k, for k <= 6
    const DirichletCharacter chars[] = {
        DirichletCharacter::trivial(),     DirichletCharacter::quadratic(3),
        DirichletCharacter::quadratic(5),  DirichletCharacter::quadratic(7),
        DirichletCharacter::quadratic(11), DirichletCharacter::quadratic(23),
        DirichletCharacter::chi_minus4(),
    };
    for (const auto& psi : chars) {
        for (unsigned long k = 1; k <= 6; ++k) {
            int kparity = (k % 2 == 0) ? +1 : -1;
            if (psi.parity() != kparity) {
                // B_{1,1} = 1/2 is the classical exception to odd-vanishing
                if (k == 1 && psi.kind() == DirichletCharacter::Kind::trivial) continue;
                CHECK(generalized_bernoulli(k, psi) == rational(0));
            }
        }
    }
}
