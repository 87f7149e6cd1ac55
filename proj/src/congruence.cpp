#include "qmf/congruence.hpp"

#include <algorithm>
#include <cassert>
#include <chrono>
#include <limits>
#include <sstream>

#include "qmf/sequences.hpp"

namespace qmf {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::filtered: return "filtered";
    }
    return "?";
}

PrimeVerdict prime_allowed(const RegistryEntry& entry, std::int64_t p, int s, FilterMode mode,
                           const DirichletCharacter& custom) {
    if (mode == FilterMode::all_primes) return {true, ""};
    if (mode == FilterMode::custom) {
        if (custom(p) != 1)
            return {false, custom.token() + "(" + std::to_string(p) + ") = " +
                               std::to_string(custom(p))};
        return {true, ""};
    }
    switch (entry.filter) {
        case FilterKind::all_primes:
            break;
        case FilterKind::character_one:
            if (entry.filter_character(p) != 1)
                return {false, entry.filter_character.token() + "(" + std::to_string(p) +
                                   ") = " + std::to_string(entry.filter_character(p))};
            break;
        case FilterKind::eta_coprime:
            for (int scale : entry.eta_scales())
                if (scale % p == 0)
                    return {false, std::to_string(p) + " divides eta scale " +
                                       std::to_string(scale)};
            break;
    }
    if (s >= 2 && p < entry.super_prime_floor)
        return {false, "supercongruence scan needs p >= " +
                           std::to_string(entry.super_prime_floor)};
    return {true, ""};
}

namespace {

BigInt int_pow(std::int64_t base, int exponent) {
    BigInt result;
    mpz_ui_pow_ui(result.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(exponent));
    return result;
}

BigInt mod_nonneg(const BigInt& value, const BigInt& modulus) {
    BigInt r;
    mpz_mod(r.get_mpz_t(), value.get_mpz_t(), modulus.get_mpz_t());
    return r;
}

} // namespace

Verdict check_one(const std::vector<BigInt>& coefficients, std::int64_t p, int r, int n, int s) {
    if (n == 0) return Verdict::pass;    // both indices are 0
    std::int64_t limit = static_cast<std::int64_t>(coefficients.size());
    std::int64_t pr = 1;
    for (int i = 0; i < r; ++i) {
        if (pr > limit / p)
            raise(errc::index_unavailable, "A(" + std::to_string(n) + " * " + std::to_string(p) +
                                               "^" + std::to_string(r) + ") not materialized");
        pr *= p;
    }
    std::int64_t hi = static_cast<std::int64_t>(n) * pr;
    if (n != 0 && (hi / n != pr || hi >= limit))
        raise(errc::index_unavailable,
              "A(" + std::to_string(hi) + ") not materialized (have " +
                  std::to_string(coefficients.size()) + ")");
    BigInt modulus = int_pow(p, s * r);
    const BigInt& a = coefficients[static_cast<size_t>(hi)];
    const BigInt& b = coefficients[static_cast<size_t>(hi / p)];
    return mod_nonneg(a - b, modulus) == 0 ? Verdict::pass : Verdict::fail;
}

std::int64_t grid_top_index(const CongruenceTask& task) {
    // Saturates instead of overflowing; callers clamp against budgets anyway.
    constexpr std::int64_t cap = std::numeric_limits<std::int64_t>::max() / 2;
    std::int64_t top = 0;
    for (std::int64_t p : task.primes) {
        std::int64_t pr = 1;
        for (int i = 0; i < task.rmax && pr <= cap / p; ++i) pr *= p;
        std::int64_t wanted = (pr > cap / std::max<std::int64_t>(task.nmax, 1))
                                  ? cap
                                  : static_cast<std::int64_t>(task.nmax) * pr;
        top = std::max(top, wanted);
    }
    return top;
}

CongruenceReport scan(const CongruenceTask& task, const std::vector<BigInt>& coefficients,
                      const Registry& registry) {
    auto start = std::chrono::steady_clock::now();
    CongruenceReport report;
    report.task = task;

    // Closed-form ids that are not registry entries carry no prime filter of
    // their own; scan them through the matching registry row when one exists.
    const RegistryEntry* entry = nullptr;
    if (registry.has_entry(task.source_id)) {
        entry = &registry.entry(task.source_id);
    } else if (task.source_id == "f2") {
        entry = &registry.entry("i");
    } else if (task.source_id == "f3") {
        entry = &registry.entry("ii");
    } else {
        raise(errc::unknown_entry, "no entry or closed form '" + task.source_id + "'");
    }

    DirichletCharacter custom = task.custom_character.empty()
                                    ? DirichletCharacter::trivial()
                                    : DirichletCharacter::by_token(task.custom_character);

    std::vector<std::int64_t> primes = task.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    for (std::int64_t p : primes) {
        PrimeVerdict admitted = prime_allowed(*entry, p, task.s, task.filter_mode, custom);
        for (int r = 1; r <= task.rmax; ++r) {
            for (int n = 1; n <= task.nmax; ++n) {
                CongruenceCell cell;
                cell.p = p;
                cell.r = r;
                cell.n = n;
                if (!admitted.allowed) {
                    cell.verdict = Verdict::filtered;
                    cell.filter_reason = admitted.reason;
                    ++report.filtered_count;
                    report.cells.push_back(std::move(cell));
                    continue;
                }
                cell.verdict = check_one(coefficients, p, r, n, task.s);
                std::int64_t pr = 1;
                for (int i = 0; i < r; ++i) pr *= p;
                BigInt modulus = int_pow(p, task.s * r);
                cell.residue_a =
                    mod_nonneg(coefficients[static_cast<size_t>(n) * static_cast<size_t>(pr)], modulus);
                cell.residue_b = mod_nonneg(
                    coefficients[static_cast<size_t>(n) * static_cast<size_t>(pr / p)], modulus);
                if (cell.verdict == Verdict::pass) {
                    ++report.pass_count;
                    // Monotone information: a pass at p^{sr} must imply the
                    // s = 1 verdict; anything else is a scanner bug.
                    if (task.s > 1)
                        assert(check_one(coefficients, p, r, n, 1) == Verdict::pass);
                } else {
                    ++report.fail_count;
                }
                report.cells.push_back(std::move(cell));
            }
        }
    }
    report.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

CongruenceReport run_task(const CongruenceTask& task, const Registry& registry) {
    std::int64_t wanted = grid_top_index(task);
    std::int64_t budget = task.coefficient_budget;
    std::int64_t top = std::min(wanted, budget);

    std::vector<std::int64_t> primes = task.primes;
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());

    // Clamp the grid per prime to the coefficient budget and record the
    // effective coverage so reports state their verified range. Reject
    // hopeless budgets before any series work.
    auto effective_rmax = [&](std::int64_t p) {
        int rmax_eff = 0;
        std::int64_t pr = 1;
        for (int r = 1; r <= task.rmax; ++r) {
            if (pr > top / p) break;    // p^r alone exceeds the budget
            pr *= p;
            if (pr > top) break;
            rmax_eff = r;
        }
        return rmax_eff;
    };
    for (std::int64_t p : primes)
        if (effective_rmax(p) == 0)
            raise(errc::index_unavailable, "budget " + std::to_string(budget) +
                                               " admits no cell for p = " + std::to_string(p));

    std::vector<BigInt> coefficients;
    if (task.use_closed_form) {
        if (!is_closed_form_id(task.source_id))
            raise(errc::unknown_entry, "no closed form '" + task.source_id + "'");
        coefficients = closed_form_range(task.source_id, 0, static_cast<unsigned long>(top));
    } else {
        const RegistryEntry& entry = registry.entry(task.source_id);
        coefficients = expand_entry(entry, static_cast<int>(top)).coefficients;
    }

    CongruenceReport merged;
    merged.task = task;
    auto start = std::chrono::steady_clock::now();
    for (std::int64_t p : primes) {
        PrimeCoverage coverage;
        coverage.p = p;
        int rmax_eff = effective_rmax(p);
        coverage.rmax_effective = rmax_eff;
        for (int r = 1; r <= rmax_eff; ++r) {
            std::int64_t prr = 1;
            for (int i = 0; i < r; ++i) prr *= p;
            int nmax_eff = static_cast<int>(std::min<std::int64_t>(task.nmax, top / prr));
            if (r == rmax_eff) coverage.nmax_at_rmax = nmax_eff;
            if (nmax_eff < task.nmax) merged.grid_clamped = true;
            CongruenceTask sub = task;
            sub.primes = {p};
            sub.rmax = r;
            sub.nmax = nmax_eff;
            CongruenceReport piece = scan(sub, coefficients, registry);
            // keep only the rows at exactly this r (scan covers 1..rmax)
            for (CongruenceCell& cell : piece.cells) {
                if (cell.r != r) continue;
                switch (cell.verdict) {
                    case Verdict::pass: ++merged.pass_count; break;
                    case Verdict::fail: ++merged.fail_count; break;
                    case Verdict::filtered: ++merged.filtered_count; break;
                }
                merged.cells.push_back(std::move(cell));
            }
        }
        if (rmax_eff < task.rmax) merged.grid_clamped = true;
        merged.coverage.push_back(coverage);
    }
    merged.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return merged;
}

std::string CongruenceReport::to_csv() const {
    std::ostringstream out;
    out << "entry,p,r,n,s,verdict,residue_a,residue_b\n";
    for (const CongruenceCell& cell : cells) {
        out << task.source_id << "," << cell.p << "," << cell.r << "," << cell.n << "," << task.s
            << "," << verdict_name(cell.verdict) << ",";
        if (cell.verdict == Verdict::filtered)
            out << ",";
        else
            out << to_string(cell.residue_a) << "," << to_string(cell.residue_b);
        out << "\n";
    }
    return out.str();
}

namespace {

const char* filter_mode_name(FilterMode mode) {
    switch (mode) {
        case FilterMode::paper_default: return "paper_default";
        case FilterMode::all_primes: return "all_primes";
        case FilterMode::custom: return "custom";
    }
    return "?";
}

} // namespace

std::string CongruenceReport::to_json() const {
    std::ostringstream out;
    out << "{\"task\":{\"source\":\"" << task.source_id << "\",\"closedForm\":"
        << (task.use_closed_form ? "true" : "false") << ",\"primes\":[";
    for (size_t i = 0; i < task.primes.size(); ++i) {
        if (i) out << ",";
        out << task.primes[i];
    }
    out << "],\"rmax\":" << task.rmax << ",\"nmax\":" << task.nmax << ",\"s\":" << task.s
        << ",\"filterMode\":\"" << filter_mode_name(task.filter_mode) << "\",\"budget\":"
        << task.coefficient_budget << "},\"coverage\":[";
    for (size_t i = 0; i < coverage.size(); ++i) {
        if (i) out << ",";
        out << "{\"p\":" << coverage[i].p << ",\"rmax\":" << coverage[i].rmax_effective
            << ",\"nmaxAtRmax\":" << coverage[i].nmax_at_rmax << "}";
    }
    out << "],\"gridClamped\":" << (grid_clamped ? "true" : "false") << ",\"cells\":[";
    for (size_t i = 0; i < cells.size(); ++i) {
        const CongruenceCell& cell = cells[i];
        if (i) out << ",";
        out << "{\"p\":" << cell.p << ",\"r\":" << cell.r << ",\"n\":" << cell.n
            << ",\"verdict\":\"" << verdict_name(cell.verdict) << "\"";
        if (cell.verdict == Verdict::filtered) {
            out << ",\"reason\":\"" << cell.filter_reason << "\"";
        } else {
            out << ",\"residueA\":\"" << to_string(cell.residue_a) << "\",\"residueB\":\""
                << to_string(cell.residue_b) << "\"";
        }
        out << "}";
    }
    out << "],\"summary\":{\"pass\":" << pass_count << ",\"fail\":" << fail_count
        << ",\"filtered\":" << filtered_count << "},\"wallSeconds\":" << wall_seconds << "}";
    return out.str();
}

} // namespace qmf
