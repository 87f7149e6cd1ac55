#include "qmf/sequences.hpp"

#include <algorithm>

#include "qmf/errors.hpp"

namespace qmf {

const std::vector<std::string> closed_form_ids = {
    "f2", "f3", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii",
};

bool is_closed_form_id(const std::string& id) {
    return std::find(closed_form_ids.begin(), closed_form_ids.end(), id) != closed_form_ids.end();
}

namespace {

BigInt power_int(long base, unsigned long exponent) {
    BigInt b(base), result(1);
    mpz_pow_ui(result.get_mpz_t(), b.get_mpz_t(), exponent);
    return result;
}

BigInt assert_integral(const std::string& id, const BigRational& value) {
    if (!is_integer(value))
        raise(errc::non_integral_closed_form, id + " produced " + to_string(value));
    return value.get_num();
}

// (8^n (1/4)_n / n!)^2
BigInt f2_closed(unsigned long n) {
    BigRational inner = BigRational(power_int(8, n)) * pochhammer(rational(1, 4), n) /
                        BigRational(factorial(n));
    return assert_integral("f2", inner * inner);
}

// 108^n (1/6)_n (1/3)_n / (n!)^2
BigInt f3_closed(unsigned long n) {
    BigInt nfact = factorial(n);
    BigRational value = BigRational(power_int(108, n)) * pochhammer(rational(1, 6), n) *
                        pochhammer(rational(1, 3), n) / BigRational(nfact * nfact);
    return assert_integral("f3", value);
}

// sum_k C(n,k)^3
BigInt franel(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; k <= n; ++k) {
        BigInt b = binomial(n, static_cast<long>(k));
        sum += b * b * b;
    }
    return sum;
}

// sum_{k <= n/3} (-1)^k 3^{n-3k} C(n,3k) C(3k,k) C(2k,k)
BigInt closed_vii(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; 3 * k <= n; ++k) {
        BigInt term = power_int(3, n - 3 * k) * binomial(n, static_cast<long>(3 * k)) *
                      binomial(3 * k, static_cast<long>(k)) * binomial(2 * k, static_cast<long>(k));
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

// sum_k C(n,k)^2 C(2k,k)
BigInt closed_viii(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; k <= n; ++k) {
        BigInt b = binomial(n, static_cast<long>(k));
        sum += b * b * binomial(2 * k, static_cast<long>(k));
    }
    return sum;
}

// sum_{k <= n/2} 4^{n-2k} C(n,2k) C(2k,k)^2
BigInt closed_ix(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; 2 * k <= n; ++k) {
        BigInt central = binomial(2 * k, static_cast<long>(k));
        sum += power_int(4, n - 2 * k) * binomial(n, static_cast<long>(2 * k)) * central * central;
    }
    return sum;
}

// sum_k sum_l (-1)^k 8^{n-k} C(n,k) C(k,l)^3
BigInt closed_x(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; k <= n; ++k) {
        BigInt inner(0);
        for (unsigned long l = 0; l <= k; ++l) {
            BigInt b = binomial(k, static_cast<long>(l));
            inner += b * b * b;
        }
        BigInt term = power_int(8, n - k) * binomial(n, static_cast<long>(k)) * inner;
        sum += (k % 2 == 0) ? term : -term;
    }
    return sum;
}

// sum_k C(n+k,k)^2 C(n,k)^2  (the Apery numbers)
BigInt apery(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; k <= n; ++k) {
        BigInt b1 = binomial(n + k, static_cast<long>(k));
        BigInt b2 = binomial(n, static_cast<long>(k));
        sum += b1 * b1 * b2 * b2;
    }
    return sum;
}

// (-1)^n sum_k C(n,k)^2 C(2k,k) C(2(n-k), n-k)
BigInt closed_xii(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; k <= n; ++k) {
        BigInt b = binomial(n, static_cast<long>(k));
        sum += b * b * binomial(2 * k, static_cast<long>(k)) *
               binomial(2 * (n - k), static_cast<long>(n - k));
    }
    return (n % 2 == 0) ? sum : -sum;
}

// (-1)^n sum_{k <= n/3} (-1)^k 3^{n-3k} (3k)!/(k!)^3 C(n,3k) C(n+k,k)
BigInt closed_xiii(unsigned long n) {
    BigInt sum(0);
    for (unsigned long k = 0; 3 * k <= n; ++k) {
        BigInt kf = factorial(k);
        BigInt term = power_int(3, n - 3 * k) * factorial(3 * k) / (kf * kf * kf);
        term *= binomial(n, static_cast<long>(3 * k)) * binomial(n + k, static_cast<long>(k));
        sum += (k % 2 == 0) ? term : -term;
    }
    return (n % 2 == 0) ? sum : -sum;
}

} // namespace

BigInt closed_form(const std::string& id, unsigned long n) {
    if (id == "f2") return f2_closed(n);
    if (id == "f3") return f3_closed(n);
    if (id == "vi") return franel(n);
    if (id == "vii") return closed_vii(n);
    if (id == "viii") return closed_viii(n);
    if (id == "ix") return closed_ix(n);
    if (id == "x") return closed_x(n);
    if (id == "xi") return apery(n);
    if (id == "xii") return closed_xii(n);
    if (id == "xiii") return closed_xiii(n);
    raise(errc::unknown_entry, "no closed form '" + id + "'");
}

std::vector<BigInt> closed_form_range(const std::string& id, unsigned long from, unsigned long to) {
    if (from > to) raise(errc::range_exceeded, "empty range");
    std::vector<BigInt> values;
    values.reserve(to - from + 1);
    for (unsigned long n = from; n <= to; ++n) values.push_back(closed_form(id, n));
    return values;
}

} // namespace qmf
