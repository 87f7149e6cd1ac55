#include "qmf/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qmf/congruence.hpp"
#include "qmf/expansion.hpp"
#include "qmf/selftest.hpp"
#include "qmf/sequences.hpp"

namespace qmf::cli {

namespace {

constexpr int exit_pass = 0;
constexpr int exit_math_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

int exit_code_for(const Error& error) {
    switch (error.code()) {
        case errc::unknown_entry:
        case errc::unknown_character:
        case errc::parse_error:
            return exit_usage;
        default:
            return exit_budget;
    }
}

// --out paths resolve against QMF_OUT_DIR when relative; empty means stdout.
std::string resolve_output_path(const std::string& path) {
    if (path.empty()) return path;
    std::filesystem::path p(path);
    const char* base = std::getenv("QMF_OUT_DIR");
    if (base && *base && p.is_relative()) p = std::filesystem::path(base) / p;
    return p.string();
}

void write_artifact(const std::string& out_path, const std::string& content) {
    std::string resolved = resolve_output_path(out_path);
    if (resolved.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(resolved);
    if (!out) raise(errc::range_exceeded, "cannot write '" + resolved + "'");
    out << content;
}

Registry load_registry(const std::string& override_path) {
    if (override_path.empty()) return Registry::builtin();
    return Registry::with_overrides(override_path);
}

std::vector<std::int64_t> parse_prime_list(const std::string& text) {
    std::vector<std::int64_t> primes;
    std::stringstream stream(text);
    std::string piece;
    while (std::getline(stream, piece, ',')) {
        if (piece.empty()) continue;
        try {
            size_t used = 0;
            primes.push_back(std::stoll(piece, &used));
            if (used != piece.size()) raise(errc::parse_error, "bad prime '" + piece + "'");
        } catch (const std::logic_error&) {
            raise(errc::parse_error, "bad prime '" + piece + "'");
        }
    }
    return primes;
}

bool is_prime(std::int64_t n) {
    if (n < 2) return false;
    for (std::int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

struct ExpandConfig {
    std::string entry;
    int max_n = 240;
    int q_order = 300;
    std::string format = "text";
    std::string out_path;
    std::string registry_path;
};

int cmd_expand(const ExpandConfig& config) {
    Registry registry = load_registry(config.registry_path);
    if (config.max_n + t_expand_guard > config.q_order) {
        std::cerr << "expand: maxN " << config.max_n << " needs q-order >= "
                  << config.max_n + t_expand_guard << " (budget " << config.q_order << ")\n";
        return exit_budget;
    }
    TExpansion expansion = expand_entry(registry.entry(config.entry), config.max_n);
    std::ostringstream out;
    if (config.format == "json") {
        out << expansion.to_json() << "\n";
    } else if (config.format == "csv") {
        out << "n,coefficient\n";
        for (size_t n = 0; n < expansion.coefficients.size(); ++n)
            out << n << "," << to_string(expansion.coefficients[n]) << "\n";
    } else {
        for (size_t n = 0; n < expansion.coefficients.size(); ++n) {
            if (n) out << " ";
            out << to_string(expansion.coefficients[n]);
        }
        out << "\n";
    }
    write_artifact(config.out_path, out.str());
    return exit_pass;
}

struct VerifyConfig {
    std::vector<std::string> entries;
    bool all = false;
    int order = 300;
    std::string registry_path;
};

int cmd_verify(const VerifyConfig& config) {
    Registry registry = load_registry(config.registry_path);
    std::vector<std::string> ids = config.entries;
    if (config.all) ids = registry_ids;
    if (ids.empty()) {
        std::cerr << "verify: no entries selected (use --entry or --all)\n";
        return exit_usage;
    }
    int failures = 0;
    for (const std::string& id : ids) {
        IdentityVerdict verdict = verify_differential_identity(registry.entry(id), config.order);
        if (verdict.pass) {
            std::cout << "entry " << id << ": pass (order " << config.order << ")\n";
        } else {
            std::cout << "entry " << id << ": FAIL, first mismatch at q^"
                      << *verdict.first_failing_exponent << "\n";
            ++failures;
        }
    }
    return failures == 0 ? exit_pass : exit_math_failure;
}

struct CheckConfig {
    std::string entry;
    std::string closed_form;
    std::string primes_text;
    std::int64_t prime_bound = 0;
    int rmax = 1;
    int nmax = 10;
    int s = 1;
    std::string filter = "paper_default";
    int max_n_budget = 240;
    std::string format = "text";
    std::string out_path;
    std::string registry_path;
};

int cmd_check(const CheckConfig& config) {
    Registry registry = load_registry(config.registry_path);
    CongruenceTask task;
    if (!config.entry.empty() && !config.closed_form.empty()) {
        std::cerr << "check: choose one of --entry / --closed-form\n";
        return exit_usage;
    }
    if (config.entry.empty() && config.closed_form.empty()) {
        std::cerr << "check: need --entry or --closed-form\n";
        return exit_usage;
    }
    task.use_closed_form = !config.closed_form.empty();
    task.source_id = task.use_closed_form ? config.closed_form : config.entry;
    // Reject unknown ids before any computation.
    if (task.use_closed_form) {
        if (!is_closed_form_id(task.source_id)) {
            std::cerr << "check: unknown closed form '" << task.source_id << "'\n";
            return exit_usage;
        }
    } else if (!registry.has_entry(task.source_id)) {
        std::cerr << "check: unknown entry '" << task.source_id << "'\n";
        return exit_usage;
    }

    task.primes = parse_prime_list(config.primes_text);
    for (std::int64_t p = 2; p <= config.prime_bound; ++p)
        if (is_prime(p)) task.primes.push_back(p);
    if (task.primes.empty()) {
        std::cerr << "check: no primes selected (--primes or --prime-bound)\n";
        return exit_usage;
    }
    for (std::int64_t p : task.primes) {
        if (!is_prime(p)) {
            std::cerr << "check: " << p << " is not prime\n";
            return exit_usage;
        }
    }
    task.rmax = config.rmax;
    task.nmax = config.nmax;
    task.s = config.s;
    task.coefficient_budget = config.max_n_budget;
    if (config.filter == "paper_default") {
        task.filter_mode = FilterMode::paper_default;
    } else if (config.filter == "all_primes") {
        task.filter_mode = FilterMode::all_primes;
    } else {
        task.filter_mode = FilterMode::custom;
        task.custom_character = config.filter;
        DirichletCharacter::by_token(config.filter);    // validate now
    }

    CongruenceReport report = run_task(task, registry);

    std::ostringstream out;
    if (config.format == "json") {
        out << report.to_json() << "\n";
    } else if (config.format == "csv") {
        out << report.to_csv();
    } else {
        out << "source " << task.source_id << (task.use_closed_form ? " (closed form)" : "")
            << ", s = " << task.s << ": " << report.pass_count << " pass, " << report.fail_count
            << " fail, " << report.filtered_count << " filtered\n";
        for (const PrimeCoverage& coverage : report.coverage)
            out << "  p = " << coverage.p << ": verified r <= " << coverage.rmax_effective
                << ", n <= " << coverage.nmax_at_rmax << " at top power\n";
        if (report.grid_clamped)
            out << "  note: grid clamped to coefficient budget " << task.coefficient_budget << "\n";
        for (const CongruenceCell& cell : report.cells) {
            if (cell.verdict == Verdict::fail)
                out << "  FAIL p=" << cell.p << " r=" << cell.r << " n=" << cell.n << ": "
                    << to_string(cell.residue_a) << " != " << to_string(cell.residue_b) << " (mod p^"
                    << task.s * cell.r << ")\n";
        }
        // one filtered line per prime is enough in text mode
        std::int64_t last_filtered_p = 0;
        for (const CongruenceCell& cell : report.cells) {
            if (cell.verdict == Verdict::filtered && cell.p != last_filtered_p) {
                out << "  filtered p=" << cell.p << " (" << cell.filter_reason << ")\n";
                last_filtered_p = cell.p;
            }
        }
    }
    write_artifact(config.out_path, out.str());
    return report.fail_count == 0 ? exit_pass : exit_math_failure;
}

struct SequencesConfig {
    std::string id;
    long from = 0;
    long to = 20;
    std::string format = "text";
    std::string out_path;
};

int cmd_sequences(const SequencesConfig& config) {
    if (!is_closed_form_id(config.id)) {
        std::cerr << "sequences: unknown closed form '" << config.id << "'\n";
        return exit_usage;
    }
    if (config.from < 0 || config.to < config.from) {
        std::cerr << "sequences: bad range\n";
        return exit_usage;
    }
    std::vector<BigInt> values = closed_form_range(config.id, static_cast<unsigned long>(config.from),
                                                   static_cast<unsigned long>(config.to));
    std::ostringstream out;
    if (config.format == "json") {
        out << "{\"id\":\"" << config.id << "\",\"from\":" << config.from << ",\"to\":" << config.to
            << ",\"values\":[";
        for (size_t i = 0; i < values.size(); ++i) {
            if (i) out << ",";
            out << "\"" << to_string(values[i]) << "\"";
        }
        out << "]}\n";
    } else if (config.format == "csv") {
        out << "n,value\n";
        for (size_t i = 0; i < values.size(); ++i)
            out << config.from + static_cast<long>(i) << "," << to_string(values[i]) << "\n";
    } else {
        for (size_t i = 0; i < values.size(); ++i) {
            if (i) out << " ";
            out << to_string(values[i]);
        }
        out << "\n";
    }
    write_artifact(config.out_path, out.str());
    return exit_pass;
}

} // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"exact q-series toolkit: t-expansions of modular forms and their congruences"};
    app.require_subcommand(1);

    ExpandConfig expand_config;
    CLI::App* expand = app.add_subcommand("expand", "expand an entry's f as a series in t");
    expand->add_option("--entry", expand_config.entry, "registry entry id")->required();
    expand->add_option("--maxN", expand_config.max_n, "highest coefficient index");
    expand->add_option("--q-order", expand_config.q_order, "q-truncation budget");
    expand->add_option("--format", expand_config.format)
        ->check(CLI::IsMember({"text", "json", "csv"}));
    expand->add_option("--out", expand_config.out_path, "output path (default stdout)");
    expand->add_option("--registry", expand_config.registry_path, "registry override file");

    VerifyConfig verify_config;
    CLI::App* verify = app.add_subcommand("verify", "check f (q dt/dq)/t = M coefficientwise");
    verify->add_option("--entry", verify_config.entries, "entry id (repeatable)");
    verify->add_flag("--all", verify_config.all, "verify all 15 entries");
    verify->add_option("--order", verify_config.order, "comparison order");
    verify->add_option("--registry", verify_config.registry_path, "registry override file");

    CheckConfig check_config;
    CLI::App* check = app.add_subcommand("check", "scan A(n p^r) = A(n p^{r-1}) (mod p^{s r})");
    check->add_option("--entry", check_config.entry, "registry entry id");
    check->add_option("--closed-form", check_config.closed_form, "closed-form id");
    check->add_option("--primes", check_config.primes_text, "comma-separated primes");
    check->add_option("--prime-bound", check_config.prime_bound, "include all primes <= bound");
    check->add_option("--rmax", check_config.rmax, "largest prime power exponent");
    check->add_option("--nmax", check_config.nmax, "largest index factor");
    check->add_option("--s", check_config.s, "modulus exponent multiplier (1, 2, 3)")
        ->check(CLI::Range(1, 3));
    check->add_option("--filter", check_config.filter,
                      "paper_default | all_primes | character token");
    check->add_option("--maxN", check_config.max_n_budget, "coefficient budget");
    check->add_option("--format", check_config.format)
        ->check(CLI::IsMember({"text", "json", "csv"}));
    check->add_option("--out", check_config.out_path, "output path (default stdout)");
    check->add_option("--registry", check_config.registry_path, "registry override file");

    SequencesConfig sequences_config;
    CLI::App* sequences = app.add_subcommand("sequences", "dump a closed-form sequence");
    sequences->add_option("--id", sequences_config.id, "closed-form id")->required();
    sequences->add_option("--from", sequences_config.from, "first index");
    sequences->add_option("--to", sequences_config.to, "last index");
    sequences->add_option("--format", sequences_config.format)
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sequences->add_option("--out", sequences_config.out_path, "output path (default stdout)");

    bool quick = false;
    CLI::App* selftest_cmd = app.add_subcommand("selftest", "run the acceptance suite");
    selftest_cmd->add_flag("--quick", quick, "reduced orders and ranges");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        int code = app.exit(error);
        return code == 0 ? exit_pass : exit_usage;
    }

    try {
        if (expand->parsed()) return cmd_expand(expand_config);
        if (verify->parsed()) return cmd_verify(verify_config);
        if (check->parsed()) return cmd_check(check_config);
        if (sequences->parsed()) return cmd_sequences(sequences_config);
        if (selftest_cmd->parsed()) return selftest::run({quick}, std::cout);
    } catch (const Error& error) {
        std::cerr << argv[0] << ": " << error.what() << "\n";
        return exit_code_for(error);
    } catch (const std::exception& error) {
        std::cerr << argv[0] << ": " << error.what() << "\n";
        return exit_budget;
    }
    return exit_usage;
}

int run(const std::vector<std::string>& args) {
    std::vector<std::string> with_program = args;
    with_program.insert(with_program.begin(), "qmf");
    std::vector<const char*> argv;
    argv.reserve(with_program.size());
    for (const std::string& arg : with_program) argv.push_back(arg.c_str());
    return run(static_cast<int>(argv.size()), argv.data());
}

} // namespace qmf::cli
