#include "qmf/characters.hpp"

#include <cstdlib>

namespace qmf {

int jacobi_symbol(std::int64_t a, std::int64_t m) {
    if (m <= 0 || m % 2 == 0)
        raise(errc::unknown_character, "Jacobi symbol needs odd positive modulus");
    a %= m;
    if (a < 0) a += m;
    int result = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            std::int64_t m8 = m % 8;
            if (m8 == 3 || m8 == 5) result = -result;
        }
        std::swap(a, m);
        if (a % 4 == 3 && m % 4 == 3) result = -result;
        a %= m;
    }
    return m == 1 ? result : 0;
}

DirichletCharacter DirichletCharacter::trivial() {
    return DirichletCharacter(Kind::trivial, 1, +1, "1");
}

DirichletCharacter DirichletCharacter::quadratic(std::int64_t odd_prime) {
    // Parity is (-1/s): +1 iff s = 1 mod 4.
    int parity = (odd_prime % 4 == 1) ? +1 : -1;
    return DirichletCharacter(Kind::quadratic, odd_prime, parity,
                              "chi" + std::to_string(odd_prime));
}

DirichletCharacter DirichletCharacter::chi_minus4() {
    return DirichletCharacter(Kind::chi_minus4, 4, -1, "chi-4");
}

DirichletCharacter DirichletCharacter::by_token(const std::string& token) {
    if (token == "1") return trivial();
    if (token == "chi-4") return chi_minus4();
    if (token == "chi3") return quadratic(3);
    if (token == "chi5") return quadratic(5);
    if (token == "chi7") return quadratic(7);
    if (token == "chi11") return quadratic(11);
    if (token == "chi23") return quadratic(23);
    raise(errc::unknown_character, "no character named '" + token + "'");
}

int DirichletCharacter::operator()(std::int64_t n) const {
    if (n < 0) return parity_ * (*this)(-n);
    switch (kind_) {
        case Kind::trivial:
            return 1;
        case Kind::quadratic:
            return jacobi_symbol(n, modulus_);
        case Kind::chi_minus4: {
            std::int64_t n4 = n % 4;
            if (n4 % 2 == 0) return 0;
            return n4 == 1 ? +1 : -1;
        }
    }
    return 0;
}

BigRational generalized_bernoulli(unsigned long k, const DirichletCharacter& psi) {
    if (k == 0) raise(errc::range_exceeded, "generalized Bernoulli needs k >= 1");
    std::int64_t f = psi.modulus();
    BigRational sum = rational(0);
    for (std::int64_t a = 1; a <= f; ++a) {
        int value = psi(a);
        if (value == 0) continue;
        sum += rational(value) * bernoulli_polynomial(k, rational(a, f));
    }
    BigInt scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), static_cast<unsigned long>(f), k - 1);
    return BigRational(scale) * sum;
}

} // namespace qmf
