#pragma once

#include <gmpxx.h>

#include <string>

#include "qmf/errors.hpp"

namespace qmf {

// Arbitrary-precision integers and rationals. BigRational is kept in lowest
// terms with positive denominator at all times; every constructor below
// canonicalizes, and GMP's arithmetic preserves canonical form.
using BigInt = mpz_class;
using BigRational = mpq_class;

BigRational rational(long numerator, long denominator = 1);
BigRational rational(const BigInt& numerator, const BigInt& denominator = 1);
BigRational parse_rational(const std::string& text);

bool is_integer(const BigRational& value);

// Numerator of an integral rational; throws non_integral_coefficient otherwise.
BigInt to_integer(const BigRational& value);

std::string to_string(const BigInt& value);
// "num" when the denominator is 1, "num/den" otherwise.
std::string to_string(const BigRational& value);

// n! with a grown-on-demand cache (thread-safe).
BigInt factorial(unsigned long n);

// C(n, k); zero for k < 0 or k > n.
BigInt binomial(unsigned long n, long k);

// Rising factorial a(a+1)...(a+n-1); 1 for n = 0.
BigRational pochhammer(const BigRational& a, unsigned long n);

// k-th Bernoulli number B_k = B_k(0), B_1 = -1/2 convention.
BigRational bernoulli_number(unsigned long k);

// Bernoulli polynomial B_k(x), evaluated exactly.
BigRational bernoulli_polynomial(unsigned long k, const BigRational& x);

} // namespace qmf
