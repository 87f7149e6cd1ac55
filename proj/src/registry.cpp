#include "qmf/registry.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace qmf {

const std::vector<std::string> registry_ids = {
    "f23", "F23", "i", "ii", "iii", "iv", "v", "vi", "vii", "viii", "ix", "x", "xi", "xii", "xiii",
};

std::vector<int> RegistryEntry::eta_scales() const {
    std::set<int> scales;
    for (const FormExpr* expr : {&t_expr, &f_expr, &m_expr})
        for (const FormExpr::Term& term : expr->terms)
            for (const FormExpr::Factor& factor : term.factors)
                if (const auto* eta = std::get_if<EtaQuotientSpec>(&factor.generator))
                    for (const EtaQuotientSpec::Factor& f : eta->factors) scales.insert(f.scale);
    return {scales.begin(), scales.end()};
}

namespace {

struct EntryRow {
    const char* id;
    const char* t;
    const char* f;
    const char* m;
    const char* filter;    // "all", "eta_coprime", or a character token
    int super_exponent;
    int super_prime_floor;
    const char* closed_form;    // nullptr when the row has none
};

constexpr const char* kM23 = "-1/24 * E(3,1,chi23) - 23/24 * E(3,chi23,1)";

const EntryRow entry_rows[] = {
    {"f23", "eta(1^1 23^1) / theta(1,1,6)", "theta(1,1,6)", kM23, "chi23", 1, 2, nullptr},
    {"F23", "eta(1^1 23^1) / theta(2,1,3)", "theta(2,1,3)", kM23, "chi23", 1, 2, nullptr},
    {"i", "eta(2^12) / theta(1,0,1)^6", "theta(1,0,1)",
     "-4*E(3,1,chi-4) - 16*E(3,chi-4,1)", "chi-4", 2, 3, "f2"},
    {"ii", "eta(1^6 3^6) / theta(1,1,1)^6", "theta(1,1,1)",
     "-9*E(3,1,chi3) - 27*E(3,chi3,1)", "chi3", 2, 3, "f3"},
    {"iii", "eta(1^-6 5^6)", "eta(1^5 5^-1)", "E(4,1,chi5)", "all", 3, 2, nullptr},
    {"iv", "eta(1^3 7^3) / theta(1,1,2)^3", "theta(1,1,2)",
     "-7/8*E(3,1,chi7) - 49/8*E(3,chi7,1)", "chi7", 2, 3, nullptr},
    {"v", "eta(1^2 11^2) / theta(1,1,3)^2", "theta(1,1,3)",
     "-1/3*E(3,1,chi11) - 11/3*E(3,chi11,1)", "chi11", 2, 3, nullptr},
    {"vi", "eta(1^3 2^-3 3^-9 6^9)", "eta(1^-2 2^1 3^6 6^-3)", "eta(1^1 2^4 3^5 6^-4)",
     "eta_coprime", 3, 2, "vi"},
    {"vii", "eta(-1^-3 9^3)", "eta(1^3 3^-1)", "eta(3^9 9^-3)", "eta_coprime", 2, 3, "vii"},
    {"viii", "eta(1^4 2^-8 3^-4 6^8)", "eta(1^-3 2^6 3^1 6^-2)", "eta(1^1 2^4 3^5 6^-4)",
     "eta_coprime", 2, 3, "viii"},
    {"ix", "eta(1^4 2^-10 4^2 8^4)", "eta(1^-4 2^10 4^-4)", "eta(2^4 4^6 8^-4)",
     "eta_coprime", 2, 3, "ix"},
    {"x", "eta(1^5 2^-14 3^1 4^5 6^2 12^1)", "eta(1^-6 2^15 3^2 4^-6 6^-5 12^2)",
     "eta(1^-1 2^7 3^-5 4^-1 6^11 12^-5)", "eta_coprime", 2, 3, "x"},
    {"xi", "eta(1^12 2^-12 3^-12 6^12)", "eta(1^-5 2^7 3^7 6^-5)",
     "-7/240*E4(1) + 1/60*E4(2) - 3/80*E4(3) + 21/20*E4(6)", "eta_coprime", 3, 2, "xi"},
    {"xii", "eta(1^-6 2^6 3^-6 6^6)", "eta(1^4 2^-2 3^4 6^-2)",
     "1/120*E4(1) - 2/15*E4(2) - 3/40*E4(3) + 6/5*E4(6)", "eta_coprime", 3, 5, "xii"},
    {"xiii", "eta(1^-4 2^-4 3^4 6^4)", "eta(1^3 2^3 3^-1 6^-1)",
     "1/240*E4(1) - 1/60*E4(2) - 27/80*E4(3) + 27/20*E4(6)", "eta_coprime", 3, 2, "xiii"},
};

void apply_filter_token(RegistryEntry& entry, const std::string& token) {
    if (token == "all") {
        entry.filter = FilterKind::all_primes;
    } else if (token == "eta_coprime") {
        entry.filter = FilterKind::eta_coprime;
    } else {
        entry.filter = FilterKind::character_one;
        entry.filter_character = DirichletCharacter::by_token(token);
    }
}

RegistryEntry build_entry(const EntryRow& row) {
    RegistryEntry entry;
    entry.id = row.id;
    entry.t_expr = parse_form_expr(row.t);
    entry.f_expr = parse_form_expr(row.f);
    entry.m_expr = parse_form_expr(row.m);
    apply_filter_token(entry, row.filter);
    entry.super_exponent = row.super_exponent;
    entry.super_prime_floor = row.super_prime_floor;
    if (row.closed_form) entry.closed_form_id = row.closed_form;
    return entry;
}

} // namespace

const Registry& Registry::builtin() {
    static const Registry instance = [] {
        Registry registry;
        for (const EntryRow& row : entry_rows)
            registry.entries_.emplace(row.id, build_entry(row));
        return registry;
    }();
    return instance;
}

Registry Registry::with_overrides(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::parse_error, "cannot open registry override '" + path + "'");
    Registry registry = builtin();
    RegistryEntry* current = nullptr;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        auto fail = [&](const std::string& what) {
            raise(errc::parse_error,
                  path + ":" + std::to_string(line_number) + ": " + what);
        };
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        size_t begin = line.find_first_not_of(" \t\r");
        if (begin == std::string::npos) continue;
        size_t end = line.find_last_not_of(" \t\r");
        line = line.substr(begin, end - begin + 1);
        if (line.front() == '[') {
            if (line.back() != ']') fail("unterminated section header");
            std::istringstream header(line.substr(1, line.size() - 2));
            std::string keyword, id;
            header >> keyword >> id;
            if (keyword != "entry" || id.empty()) fail("expected [entry <id>]");
            auto it = registry.entries_.find(id);
            if (it == registry.entries_.end()) fail("unknown entry '" + id + "'");
            current = &it->second;
            continue;
        }
        if (!current) fail("key outside of an [entry ...] section");
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail("expected key = value");
        std::string key = line.substr(0, eq);
        std::string value = line.substr(eq + 1);
        auto trim = [](std::string& s) {
            size_t b = s.find_first_not_of(" \t");
            size_t e = s.find_last_not_of(" \t");
            s = (b == std::string::npos) ? "" : s.substr(b, e - b + 1);
        };
        trim(key);
        trim(value);
        if (value.empty()) fail("empty value for '" + key + "'");
        auto parse_int = [&](const std::string& text) {
            try {
                size_t used = 0;
                int parsed = std::stoi(text, &used);
                if (used != text.size()) fail("expected an integer, got '" + text + "'");
                return parsed;
            } catch (const std::logic_error&) {
                fail("expected an integer, got '" + text + "'");
            }
            return 0;
        };
        if (key == "t") {
            current->t_expr = parse_form_expr(value);
        } else if (key == "f") {
            current->f_expr = parse_form_expr(value);
        } else if (key == "M") {
            current->m_expr = parse_form_expr(value);
        } else if (key == "filter") {
            apply_filter_token(*current, value);
        } else if (key == "s") {
            int s = parse_int(value);
            if (s < 1 || s > 3) fail("s must be 1, 2, or 3");
            current->super_exponent = s;
        } else if (key == "super_prime_floor") {
            current->super_prime_floor = parse_int(value);
        } else {
            fail("unknown key '" + key + "'");
        }
    }
    return registry;
}

const RegistryEntry& Registry::entry(const std::string& id) const {
    auto it = entries_.find(id);
    if (it == entries_.end()) raise(errc::unknown_entry, "no registry entry '" + id + "'");
    return it->second;
}

} // namespace qmf
