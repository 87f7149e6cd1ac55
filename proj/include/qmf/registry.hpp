#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qmf/modforms.hpp"

namespace qmf {

enum class FilterKind {
    all_primes,     // no prime-side condition
    character_one,  // chi(p) = 1 required
    eta_coprime,    // p must not divide any eta scale of the entry
};

/* One table row: the modular function t (leading term +-q), the expanded
 * form f (constant term 1), the derivative side M = f (q dt/dq)/t, the
 * prime condition under which the congruence family is claimed, and the
 * strongest observed supercongruence exponent s (modulus p^{s r}). */
struct RegistryEntry {
    std::string id;
    FormExpr t_expr;
    FormExpr f_expr;
    FormExpr m_expr;
    FilterKind filter = FilterKind::all_primes;
    DirichletCharacter filter_character = DirichletCharacter::trivial();
    int super_exponent = 1;
    // Extra floor applied only to s >= 2 scans (3 encodes "p odd", 5 the
    // stricter table condition); 2 means no extra condition.
    int super_prime_floor = 2;
    std::optional<std::string> closed_form_id;

    // Scales of every eta factor in t, f, M (for the eta_coprime filter).
    std::vector<int> eta_scales() const;
};

extern const std::vector<std::string> registry_ids;

class Registry {
public:
    // The 15 built-in rows.
    static const Registry& builtin();

    // Built-in rows with overrides from a structured-text file applied.
    // Sections look like:
    //   [entry xi]
    //   t = eta(1^12 2^-12 3^-12 6^12)
    //   f = eta(1^-5 2^7 3^7 6^-5)
    //   M = -7/240*E4(1) + 1/60*E4(2) - 3/80*E4(3) + 21/20*E4(6)
    //   filter = eta_coprime
    //   s = 3
    // Unknown ids, keys, or values are parse errors.
    static Registry with_overrides(const std::string& path);

    const RegistryEntry& entry(const std::string& id) const;
    bool has_entry(const std::string& id) const { return entries_.count(id) != 0; }

private:
    std::map<std::string, RegistryEntry> entries_;
};

// Convenience accessor against the built-in table.
inline const RegistryEntry& registry_entry(const std::string& id) {
    return Registry::builtin().entry(id);
}

} // namespace qmf
