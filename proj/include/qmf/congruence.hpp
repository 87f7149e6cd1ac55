#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qmf/expansion.hpp"
#include "qmf/registry.hpp"

namespace qmf {

enum class FilterMode {
    paper_default,    // entry's registered condition plus the s >= 2 floors
    all_primes,       // exploratory: evaluate everything
    custom,           // chi(p) = 1 for a caller-supplied character
};

struct PrimeVerdict {
    bool allowed = true;
    std::string reason;    // names the violated condition when filtered
};

// Is p admitted for this entry's congruence family? s >= 2 additionally
// applies the entry's supercongruence prime floor under paper_default.
PrimeVerdict prime_allowed(const RegistryEntry& entry, std::int64_t p, int s = 1,
                           FilterMode mode = FilterMode::paper_default,
                           const DirichletCharacter& custom =
                               DirichletCharacter::trivial());

enum class Verdict { pass, fail, filtered };

const char* verdict_name(Verdict v);

// pass iff A(n p^r) = A(n p^{r-1}) (mod p^{s r}); throws index_unavailable
// when the source is too short.
Verdict check_one(const std::vector<BigInt>& coefficients, std::int64_t p, int r, int n, int s);

struct CongruenceTask {
    std::string source_id;          // registry entry id or closed-form id
    bool use_closed_form = false;
    std::vector<std::int64_t> primes;
    int rmax = 1;
    int nmax = 1;
    int s = 1;
    FilterMode filter_mode = FilterMode::paper_default;
    std::string custom_character;    // token, only for FilterMode::custom
    int coefficient_budget = 240;    // largest index the source may be asked for
};

struct CongruenceCell {
    std::int64_t p = 0;
    int r = 0;
    int n = 0;
    Verdict verdict = Verdict::pass;
    BigInt residue_a;    // A(n p^r) mod p^{s r}, least nonnegative
    BigInt residue_b;    // A(n p^{r-1}) mod p^{s r}
    std::string filter_reason;
};

struct PrimeCoverage {
    std::int64_t p = 0;
    int rmax_effective = 0;    // 0 when the budget admits nothing for p
    int nmax_at_rmax = 0;
};

struct CongruenceReport {
    CongruenceTask task;
    std::vector<CongruenceCell> cells;    // ordered p asc, r asc, n asc
    std::vector<PrimeCoverage> coverage;
    long pass_count = 0;
    long fail_count = 0;
    long filtered_count = 0;
    bool grid_clamped = false;    // some requested cells exceeded the budget
    double wall_seconds = 0.0;

    std::string to_json() const;
    std::string to_csv() const;
};

/* Runs the full verdict grid against a materialized coefficient source
 * (A(0), A(1), ... in order). Every requested cell must be inside the
 * source; the CLI driver is responsible for clamping to budgets first. */
CongruenceReport scan(const CongruenceTask& task, const std::vector<BigInt>& coefficients,
                      const Registry& registry = Registry::builtin());

// Largest index the task's grid touches (nmax * max_p^rmax), before clamping.
std::int64_t grid_top_index(const CongruenceTask& task);

/* Materializes coefficients for the task (closed form or t-expansion),
 * clamps the grid per prime to the coefficient budget, records coverage,
 * and scans. Throws index_unavailable when a requested prime admits no
 * cell at all inside the budget. */
CongruenceReport run_task(const CongruenceTask& task, const Registry& registry = Registry::builtin());

} // namespace qmf
