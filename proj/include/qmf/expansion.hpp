#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmf/registry.hpp"

namespace qmf {

/* f rewritten as sum A(n) t^n. Coefficients are exact integers; the
 * q-truncation actually consumed is recorded so congruence reports can
 * state their verified range. */
struct TExpansion {
    std::string entry;
    int max_n = 0;
    std::vector<BigInt> coefficients;    // A(0..max_n)
    int q_order_used = 0;

    std::string to_json() const;
};

// Guard band past max_n: the triangular solve runs this much further and
// asserts the residual vanishes there, so order bookkeeping bugs surface
// as hard errors instead of wrong table rows.
constexpr int t_expand_guard = 8;

/* Triangular elimination: A(n) = [q^n]R / [q^n]t^n against the running
 * residual R. Requires t with shift exactly 1 and leading coefficient +-1,
 * f with shift >= 0, and both orders >= max_n + t_expand_guard. */
TExpansion t_expand(const TruncatedSeries& f, const TruncatedSeries& t, int max_n);

// Evaluates the entry's f and t at order max_n + guard and expands.
TExpansion expand_entry(const RegistryEntry& entry, int max_n);

struct IdentityVerdict {
    bool pass = false;
    std::optional<int> first_failing_exponent;
};

// Exact check of f (q dt/dq)/t = M coefficientwise for exponents 0..order.
IdentityVerdict verify_differential_identity(const RegistryEntry& entry, int order);

// c_n = [q^n] M for n = 1..count, integrality enforced; also checks the
// constant term of M equals 1.
std::vector<BigInt> m_coefficients(const RegistryEntry& entry, int count);

/* Both directions of the congruence transfer between the two coefficient
 * families of one differential identity, on the full (n <= nmax, r <= rmax)
 * grid: b_{np^r} = b_{np^{r-1}} (mod p^r) <=> same for c. Sequences are
 * 0-indexed (b[n] is b_n) and must reach nmax * p^rmax. */
struct TransferCell {
    int n = 0;
    int r = 0;
    bool b_holds = false;
    bool c_holds = false;
};
struct TransferReport {
    std::int64_t p = 0;
    int rmax = 0;
    int nmax = 0;
    std::vector<TransferCell> cells;
    bool equivalent = true;     // no one-sided failures
    bool all_hold = true;       // every cell holds on both sides
    std::vector<TransferCell> one_sided;
};
TransferReport jv_transfer_check(const std::vector<BigInt>& b, const std::vector<BigInt>& c,
                                 std::int64_t p, int rmax, int nmax);

/* Exact coefficient identities for the weight-3 pair on level 23,
 * E_{3,1,chi23} = sum e_n q^n and E_{3,chi23,1} = sum a_n q^n:
 *   a_{np^r} - chi23(p) a_{np^{r-1}} = sum_{d | n0} chi23(n0/d) (d p^{r+v})^2
 *   e_{np^r} - e_{np^{r-1}}          = sum_{d | n0} chi23(d p^{r+v}) (d p^{r+v})^2
 * where n0 is the p-free part of n and v = v_p(n) (for p coprime to n this
 * is the textbook identity verbatim). Also checks e_n = chi23(n) a_n away
 * from 23, the 23-scaling laws, and the p = 2 cases of the c-congruence. */
struct EisensteinRelationsParams {
    std::int64_t p = 2;
    int rmax = 2;
    int nmax = 50;
    int sign_nmax = 100;       // e_n = chi(n) a_n for n <= sign_nmax, 23 coprime
    int scaling_nmax = 20;     // a_{23n} = 529 a_n, e_{23n} = e_n for n <= scaling_nmax
    int check_nmax = 30;       // c_{2^r n} = c_{2^{r-1} n} (mod 2^r), r in {1,2}
};
struct EisensteinRelationsReport {
    EisensteinRelationsParams params;
    bool identities_hold = true;
    bool sign_relation_holds = true;
    bool scaling_holds = true;
    bool p2_check_holds = true;
    std::vector<std::string> failures;
    bool all_hold() const {
        return identities_hold && sign_relation_holds && scaling_holds && p2_check_holds;
    }
};
EisensteinRelationsReport eisenstein_relations_check(const EisensteinRelationsParams& params);

} // namespace qmf
