#pragma once

#include <cstdint>
#include <string>

#include "qmf/numeric.hpp"

namespace qmf {

// Jacobi symbol (a/m) for odd positive m, by binary reduction (no factoring).
int jacobi_symbol(std::int64_t a, std::int64_t m);

/* The closed set of Dirichlet characters the tables use: the trivial
 * character, the quadratic symbols (./s) for s = 3, 5, 7, 11, 23, and
 * (-4/.). Values are completely multiplicative, vanish exactly on inputs
 * sharing a factor with the modulus, and are fixed by parity at -1. */
class DirichletCharacter {
public:
    enum class Kind { trivial, quadratic, chi_minus4 };

    static DirichletCharacter trivial();
    static DirichletCharacter quadratic(std::int64_t odd_prime);
    static DirichletCharacter chi_minus4();

    // Accepts the table tokens: "1", "chi3", "chi5", "chi7", "chi11",
    // "chi23", "chi-4". Throws unknown_character otherwise.
    static DirichletCharacter by_token(const std::string& token);

    Kind kind() const { return kind_; }
    std::int64_t modulus() const { return modulus_; }
    int parity() const { return parity_; }    // value at -1
    const std::string& token() const { return token_; }

    int operator()(std::int64_t n) const;

    bool operator==(const DirichletCharacter& other) const {
        return kind_ == other.kind_ && modulus_ == other.modulus_;
    }

private:
    DirichletCharacter(Kind kind, std::int64_t modulus, int parity, std::string token)
        : kind_(kind), modulus_(modulus), parity_(parity), token_(std::move(token)) {}

    Kind kind_;
    std::int64_t modulus_;
    int parity_;
    std::string token_;
};

inline int char_eval(const DirichletCharacter& chi, std::int64_t n) { return chi(n); }

// B_{k,psi} = f^{k-1} sum_{a=1}^{f} psi(a) B_k(a/f), f the modulus of psi.
BigRational generalized_bernoulli(unsigned long k, const DirichletCharacter& psi);

} // namespace qmf
