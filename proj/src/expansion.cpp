#include "qmf/expansion.hpp"

#include <algorithm>
#include <sstream>

namespace qmf {

namespace {

BigInt int_pow(std::int64_t base, int exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exponent));
    return result;
}

bool congruent(const BigInt& lhs, const BigInt& rhs, const BigInt& modulus) {
    BigInt difference = lhs - rhs;
    return mpz_divisible_p(difference.get_mpz_t(), modulus.get_mpz_t()) != 0;
}

} // namespace

std::string TExpansion::to_json() const {
    std::ostringstream out;
    out << "{\"entry\":\"" << entry << "\",\"maxN\":" << max_n << ",\"qOrderUsed\":" << q_order_used
        << ",\"coefficients\":[";
    for (size_t i = 0; i < coefficients.size(); ++i) {
        if (i) out << ",";
        out << "\"" << to_string(coefficients[i]) << "\"";
    }
    out << "]}";
    return out.str();
}

TExpansion t_expand(const TruncatedSeries& f, const TruncatedSeries& t, int max_n) {
    if (t.shift() != 1)
        raise(errc::shift_mismatch, "t must have shift 1, got " + std::to_string(t.shift()));
    const BigRational& lead = t.coeff(1);
    if (lead != 1 && lead != -1)
        raise(errc::shift_mismatch, "t must have leading coefficient +-1, got " + to_string(lead));
    if (f.shift() < 0)
        raise(errc::shift_mismatch, "f must have shift >= 0, got " + std::to_string(f.shift()));
    int target = max_n + t_expand_guard;
    if (f.order() < target || t.order() < target)
        raise(errc::insufficient_order,
              "t_expand to " + std::to_string(max_n) + " needs q-order >= " + std::to_string(target) +
                  " (f: " + std::to_string(f.order()) + ", t: " + std::to_string(t.order()) + ")");

    TExpansion expansion;
    expansion.max_n = max_n;
    expansion.q_order_used = target;
    expansion.coefficients.reserve(static_cast<size_t>(max_n) + 1);

    TruncatedSeries residual = f.truncated(target);
    TruncatedSeries t_power = TruncatedSeries::constant(rational(1), target);    // t^n
    TruncatedSeries t_trimmed = t.truncated(target);
    for (int n = 0; n <= target; ++n) {
        if (!residual.is_zero() && residual.shift() < n)
            raise(errc::non_integral_coefficient,
                  "residual did not vanish below index " + std::to_string(n) + " (internal)");
        BigRational a_n = residual.coeff(n) / t_power.coeff(n);
        residual = sub(residual, scalar_multiple(a_n, t_power));
        if (n <= max_n) expansion.coefficients.push_back(to_integer(a_n));
        if (n < target) t_power = series_product(t_power, t_trimmed).truncated(target);
    }
    // The guard band: everything through max_n + guard must have cancelled.
    if (!residual.is_zero())
        raise(errc::non_integral_coefficient,
              "residual nonzero at q^" + std::to_string(residual.shift()) + " (internal)");
    return expansion;
}

TExpansion expand_entry(const RegistryEntry& entry, int max_n) {
    int order = max_n + t_expand_guard;
    TruncatedSeries t = eval_form_expr(entry.t_expr, order);
    TruncatedSeries f = eval_form_expr(entry.f_expr, order);
    TExpansion expansion = t_expand(f, t, max_n);
    expansion.entry = entry.id;
    return expansion;
}

IdentityVerdict verify_differential_identity(const RegistryEntry& entry, int order) {
    // The quotient by t (shift 1) costs one trusted exponent.
    int padded = order + 2;
    TruncatedSeries t = eval_form_expr(entry.t_expr, padded);
    TruncatedSeries f = eval_form_expr(entry.f_expr, padded);
    TruncatedSeries m = eval_form_expr(entry.m_expr, padded);
    TruncatedSeries lhs = series_quotient(series_product(f, q_derivative(t)), t);
    SeriesComparison comparison = compare_series(lhs.truncated(order), m.truncated(order));
    IdentityVerdict verdict;
    verdict.pass = !comparison.first_mismatch.has_value();
    verdict.first_failing_exponent = comparison.first_mismatch;
    return verdict;
}

std::vector<BigInt> m_coefficients(const RegistryEntry& entry, int count) {
    TruncatedSeries m = eval_form_expr(entry.m_expr, count);
    if (m.coeff(0) != 1)
        raise(errc::non_integral_coefficient,
              "M for " + entry.id + " has constant term " + to_string(m.coeff(0)) + ", expected 1");
    std::vector<BigInt> coefficients;
    coefficients.reserve(static_cast<size_t>(count));
    for (int n = 1; n <= count; ++n) coefficients.push_back(to_integer(m.coeff(n)));
    return coefficients;
}

TransferReport jv_transfer_check(const std::vector<BigInt>& b, const std::vector<BigInt>& c,
                                 std::int64_t p, int rmax, int nmax) {
    TransferReport report;
    report.p = p;
    report.rmax = rmax;
    report.nmax = nmax;
    BigInt top = BigInt(nmax) * int_pow(p, rmax);
    if (top >= BigInt(static_cast<unsigned long>(b.size())) ||
        top >= BigInt(static_cast<unsigned long>(c.size())))
        raise(errc::range_exceeded, "transfer grid needs indices through " + to_string(top) +
                                        " (b: " + std::to_string(b.size()) + ", c: " +
                                        std::to_string(c.size()) + " entries)");
    for (int r = 1; r <= rmax; ++r) {
        BigInt modulus = int_pow(p, r);
        std::int64_t pr = 1;
        for (int i = 0; i < r; ++i) pr *= p;
        for (int n = 0; n <= nmax; ++n) {
            TransferCell cell;
            cell.n = n;
            cell.r = r;
            size_t hi = static_cast<size_t>(n) * static_cast<size_t>(pr);
            size_t lo = hi / static_cast<size_t>(p);
            cell.b_holds = congruent(b[hi], b[lo], modulus);
            cell.c_holds = congruent(c[hi], c[lo], modulus);
            if (cell.b_holds != cell.c_holds) {
                report.equivalent = false;
                report.one_sided.push_back(cell);
            }
            if (!cell.b_holds || !cell.c_holds) report.all_hold = false;
            report.cells.push_back(cell);
        }
    }
    return report;
}

EisensteinRelationsReport eisenstein_relations_check(const EisensteinRelationsParams& params) {
    DirichletCharacter chi = DirichletCharacter::quadratic(23);
    if (chi(params.p) != 1)
        raise(errc::filter_violation,
              "coefficient identities need chi23(p) = 1, p = " + std::to_string(params.p));

    EisensteinRelationsReport report;
    report.params = params;

    std::int64_t p_pow_rmax = 1;
    for (int i = 0; i < params.rmax; ++i) p_pow_rmax *= params.p;
    long need = std::max<long>({params.nmax * p_pow_rmax, 23L * params.scaling_nmax,
                                params.sign_nmax, 4L * params.check_nmax});
    DirichletCharacter trivial = DirichletCharacter::trivial();
    TruncatedSeries e_series = eisenstein_series({3, trivial, chi, 1}, static_cast<int>(need));
    TruncatedSeries a_series = eisenstein_series({3, chi, trivial, 1}, static_cast<int>(need));
    auto a_at = [&](long idx) { return to_integer(a_series.coeff(static_cast<int>(idx))); };
    auto e_at = [&](long idx) { return to_integer(e_series.coeff(static_cast<int>(idx))); };

    auto note = [&](bool& flag, const std::string& what) {
        flag = false;
        report.failures.push_back(what);
    };

    /* The displayed identities, with n reduced to its p-free part n0 and
     * the p-power absorbed into the modulus side (for p coprime to n they
     * are literally the displayed sums). */
    for (int r = 1; r <= params.rmax; ++r) {
        for (long n = 1; n <= params.nmax; ++n) {
            long n0 = n;
            int v = 0;
            while (n0 % params.p == 0) {
                n0 /= params.p;
                ++v;
            }
            BigInt p_power = int_pow(params.p, r + v);
            int chi_p_pow = 1;    // chi23(p^{r+v}) by multiplicativity
            for (int i = 0; i < r + v; ++i) chi_p_pow *= chi(params.p);
            BigInt rhs_a(0), rhs_e(0);
            for (long d = 1; d <= n0; ++d) {
                if (n0 % d != 0) continue;
                BigInt term = BigInt(d) * p_power;
                term *= term;
                rhs_a += chi(n0 / d) * term;
                rhs_e += chi(d) * chi_p_pow * term;
            }
            std::int64_t pr = 1;
            for (int i = 0; i < r; ++i) pr *= params.p;
            BigInt lhs_a = a_at(n * pr) - chi(params.p) * a_at(n * pr / params.p);
            BigInt lhs_e = e_at(n * pr) - e_at(n * pr / params.p);
            if (lhs_a != rhs_a)
                note(report.identities_hold,
                     "a-identity fails at p=" + std::to_string(params.p) + " r=" + std::to_string(r) +
                         " n=" + std::to_string(n));
            if (lhs_e != rhs_e)
                note(report.identities_hold,
                     "e-identity fails at p=" + std::to_string(params.p) + " r=" + std::to_string(r) +
                         " n=" + std::to_string(n));
        }
    }

    for (long n = 1; n <= params.sign_nmax; ++n) {
        if (n % 23 == 0) continue;
        if (e_at(n) != chi(n) * a_at(n))
            note(report.sign_relation_holds, "e_n = chi23(n) a_n fails at n=" + std::to_string(n));
    }

    for (long n = 1; n <= params.scaling_nmax; ++n) {
        if (a_at(23 * n) != 529 * a_at(n))
            note(report.scaling_holds, "a_{23n} = 529 a_n fails at n=" + std::to_string(n));
        if (e_at(23 * n) != e_at(n))
            note(report.scaling_holds, "e_{23n} = e_n fails at n=" + std::to_string(n));
    }

    // c_n = -(1/24) e_n - (23/24) a_n; the p = 2, r in {1, 2} congruences.
    auto c_at = [&](long idx) {
        if (idx == 0) return BigInt(1);
        BigRational value = rational(-1, 24) * BigRational(e_at(idx)) +
                            rational(-23, 24) * BigRational(a_at(idx));
        return to_integer(value);
    };
    for (int r = 1; r <= 2; ++r) {
        BigInt modulus = int_pow(2, r);
        long two_r = 1L << r;
        for (long n = 1; n <= params.check_nmax; ++n) {
            if (!congruent(c_at(n * two_r), c_at(n * two_r / 2), modulus))
                note(report.p2_check_holds, "c-congruence fails at p=2 r=" + std::to_string(r) +
                                                " n=" + std::to_string(n));
        }
    }

    return report;
}

} // namespace qmf
