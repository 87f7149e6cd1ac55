#include "qmf/numeric.hpp"

#include <mutex>
#include <vector>

namespace qmf {

BigRational rational(long numerator, long denominator) {
    if (denominator == 0) raise(errc::division_by_zero_series, "rational with zero denominator");
    BigRational r(numerator, denominator);
    r.canonicalize();
    return r;
}

BigRational rational(const BigInt& numerator, const BigInt& denominator) {
    if (denominator == 0) raise(errc::division_by_zero_series, "rational with zero denominator");
    BigRational r(numerator, denominator);
    r.canonicalize();
    return r;
}

BigRational parse_rational(const std::string& text) {
    BigRational r;
    if (r.set_str(text, 10) != 0)
        raise(errc::parse_error, "bad rational literal '" + text + "'");
    if (r.get_den() == 0)
        raise(errc::parse_error, "zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

bool is_integer(const BigRational& value) {
    return value.get_den() == 1;
}

BigInt to_integer(const BigRational& value) {
    if (!is_integer(value))
        raise(errc::non_integral_coefficient, "expected integer, got " + to_string(value));
    return value.get_num();
}

std::string to_string(const BigInt& value) { return value.get_str(); }
std::string to_string(const BigRational& value) { return value.get_str(); }

namespace {

// Caches grow under a lock and are never shrunk; entries already published
// are immutable, so concurrent readers that hold the lock briefly are safe.
std::mutex factorial_mutex;
std::vector<BigInt>& factorial_cache() {
    static std::vector<BigInt> cache{BigInt(1)};
    return cache;
}

std::mutex bernoulli_mutex;
std::vector<BigRational>& bernoulli_cache() {
    static std::vector<BigRational> cache{rational(1)};
    cache.reserve(64);
    return cache;
}

} // namespace

BigInt factorial(unsigned long n) {
    std::lock_guard<std::mutex> lock(factorial_mutex);
    auto& cache = factorial_cache();
    while (cache.size() <= n) {
        cache.push_back(cache.back() * BigInt(static_cast<unsigned long>(cache.size())));
    }
    return cache[n];
}

BigInt binomial(unsigned long n, long k) {
    if (k < 0 || static_cast<unsigned long>(k) > n) return BigInt(0);
    BigInt result = factorial(n) / factorial(static_cast<unsigned long>(k));
    result /= factorial(n - static_cast<unsigned long>(k));
    return result;
}

BigRational pochhammer(const BigRational& a, unsigned long n) {
    BigRational product = rational(1);
    BigRational term = a;
    for (unsigned long i = 0; i < n; ++i) {
        product *= term;
        term += 1;
    }
    return product;
}

BigRational bernoulli_number(unsigned long k) {
    std::lock_guard<std::mutex> lock(bernoulli_mutex);
    auto& cache = bernoulli_cache();
    // sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1 determines B_m.
    while (cache.size() <= k) {
        unsigned long m = cache.size();
        BigRational sum = rational(0);
        for (unsigned long j = 0; j < m; ++j) {
            BigInt c;
            mpz_bin_uiui(c.get_mpz_t(), m + 1, j);
            sum += BigRational(c) * cache[j];
        }
        cache.push_back(-sum / rational(static_cast<long>(m) + 1));
    }
    return cache[k];
}

BigRational bernoulli_polynomial(unsigned long k, const BigRational& x) {
    // B_k(x) = sum_j C(k, j) B_j x^{k-j}
    BigRational result = rational(0);
    BigRational x_power = rational(1);
    for (long j = static_cast<long>(k); j >= 0; --j) {
        BigInt c;
        mpz_bin_uiui(c.get_mpz_t(), k, static_cast<unsigned long>(j));
        result += BigRational(c) * bernoulli_number(static_cast<unsigned long>(j)) * x_power;
        x_power *= x;
    }
    return result;
}

} // namespace qmf
