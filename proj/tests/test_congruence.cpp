#include <doctest.h>

#include "qmf/congruence.hpp"
#include "qmf/sequences.hpp"

using namespace qmf;

TEST_CASE("check_one basics") {
    // f_6 = 5790 and f_2 = 6 are both divisible by 3
    std::vector<BigInt> f = {BigInt(1),    BigInt(2),    BigInt(6),     BigInt(26),
                             BigInt(142),  BigInt(876),  BigInt(5790),  BigInt(40020),
                             BigInt(285582)};
    CHECK(check_one(f, 3, 1, 2, 1) == Verdict::pass);
    CHECK(check_one(f, 2, 1, 0, 1) == Verdict::pass);    // n = 0 compares A(0) with itself
    CHECK_THROWS_AS(check_one(f, 3, 2, 1, 1), Error);    // index 9 unavailable

    // f3 supercongruence sample: A(7) = A(1) (mod 49)
    std::vector<BigInt> f3 = closed_form_range("f3", 0, 7);
    CHECK(check_one(f3, 7, 1, 1, 2) == Verdict::pass);
}

TEST_CASE("prime filters") {
    PrimeVerdict filtered = prime_allowed(registry_entry("f23"), 5);
    CHECK(!filtered.allowed);
    CHECK(filtered.reason == "chi23(5) = -1");
    CHECK(prime_allowed(registry_entry("f23"), 13).allowed);
    for (std::int64_t p : {2, 3, 5, 7, 11}) CHECK(prime_allowed(registry_entry("iii"), p).allowed);

    // eta-coprime default for the table entries
    CHECK(!prime_allowed(registry_entry("vii"), 3).allowed);
    CHECK(prime_allowed(registry_entry("vii"), 5).allowed);
    CHECK(!prime_allowed(registry_entry("ix"), 2).allowed);
    CHECK(prime_allowed(registry_entry("ix"), 3).allowed);

    // supercongruence floors only bite for s >= 2
    CHECK(prime_allowed(registry_entry("xii"), 5, 3).allowed);
    CHECK(!prime_allowed(registry_entry("xii"), 3, 3).allowed);    // floor p >= 5... after eta filter
    CHECK(!prime_allowed(registry_entry("vii"), 3, 2).allowed);
    CHECK(prime_allowed(registry_entry("v"), 3, 1).allowed);
    CHECK(prime_allowed(registry_entry("v"), 3, 2).allowed);

    // all_primes mode disables everything
    CHECK(prime_allowed(registry_entry("f23"), 5, 1, FilterMode::all_primes).allowed);

    // custom character condition
    CHECK(prime_allowed(registry_entry("f23"), 7, 1, FilterMode::custom,
                        DirichletCharacter::quadratic(3))
              .allowed);
    CHECK(!prime_allowed(registry_entry("f23"), 5, 1, FilterMode::custom,
                         DirichletCharacter::quadratic(3))
               .allowed);
}

TEST_CASE("scan over the level-23 grid") {
    CongruenceTask task;
    task.source_id = "f23";
    task.primes = {2, 3, 13};
    task.rmax = 2;
    task.nmax = 10;
    task.s = 1;
    task.coefficient_budget = 135;    // full grid for p = 2, 3; p = 13 reaches r = 1
    CongruenceReport report = run_task(task);
    CHECK(report.fail_count == 0);
    CHECK(report.filtered_count == 0);
    CHECK(report.pass_count == static_cast<long>(report.cells.size()));
    CHECK(report.grid_clamped);    // p = 13, r = 2 cells exceeded the budget
    for (const PrimeCoverage& coverage : report.coverage) {
        if (coverage.p != 13) {
            CHECK(coverage.rmax_effective == 2);
            CHECK(coverage.nmax_at_rmax == 10);
        }
    }

    // the default desk budget keeps one p = 13, r = 2 cell
    task.coefficient_budget = 240;
    CongruenceReport clamped = run_task(task);
    CHECK(clamped.grid_clamped);
    CHECK(clamped.fail_count == 0);
    CHECK(clamped.coverage.size() == 3);
    for (const PrimeCoverage& coverage : clamped.coverage) {
        if (coverage.p == 13) {
            CHECK(coverage.rmax_effective == 2);
            CHECK(coverage.nmax_at_rmax == 1);    // only n = 1 fits 169 n <= 240
        }
    }
}

TEST_CASE("filtered primes are first-class rows") {
    CongruenceTask task;
    task.source_id = "f23";
    task.primes = {5};
    task.rmax = 1;
    task.nmax = 4;
    task.coefficient_budget = 60;
    CongruenceReport report = run_task(task);
    CHECK(report.filtered_count == 4);
    CHECK(report.pass_count == 0);
    for (const CongruenceCell& cell : report.cells) {
        CHECK(cell.verdict == Verdict::filtered);
        CHECK(cell.filter_reason == "chi23(5) = -1");
    }

    task.filter_mode = FilterMode::all_primes;
    CongruenceReport open_report = run_task(task);
    CHECK(open_report.filtered_count == 0);
}

TEST_CASE("negative observation: (xiii) fails mod 8 at p = 2 but holds mod 4") {
    // A(2) - A(1) = 9 - (-3) = 12; the s = 3 congruence at p = 2 is false,
    // which is why paper_default filters p = 2 for this entry.
    CongruenceTask task;
    task.source_id = "xiii";
    task.use_closed_form = true;
    task.primes = {2};
    task.rmax = 1;
    task.nmax = 8;
    task.s = 3;
    task.filter_mode = FilterMode::all_primes;
    task.coefficient_budget = 16;
    CongruenceReport report = run_task(task);
    CHECK(report.fail_count > 0);

    task.s = 2;
    CongruenceReport weaker = run_task(task);
    CHECK(weaker.fail_count == 0);

    task.s = 3;
    task.filter_mode = FilterMode::paper_default;
    CongruenceReport filtered = run_task(task);
    CHECK(filtered.fail_count == 0);
    CHECK(filtered.filtered_count == static_cast<long>(filtered.cells.size()));
}

TEST_CASE("closed-form and expansion sources give identical grids") {
    CongruenceTask task;
    task.source_id = "vi";
    task.primes = {5, 7};
    task.rmax = 1;
    task.nmax = 25;
    task.s = 1;
    task.coefficient_budget = 200;
    CongruenceReport from_expansion = run_task(task);
    task.use_closed_form = true;
    CongruenceReport from_closed = run_task(task);
    REQUIRE(from_expansion.cells.size() == from_closed.cells.size());
    for (size_t i = 0; i < from_closed.cells.size(); ++i) {
        CHECK(from_expansion.cells[i].verdict == from_closed.cells[i].verdict);
        CHECK(from_expansion.cells[i].residue_a == from_closed.cells[i].residue_a);
        CHECK(from_expansion.cells[i].residue_b == from_closed.cells[i].residue_b);
    }
}

TEST_CASE("a pass at s = 2 implies the s = 1 verdict") {
    CongruenceTask task;
    task.source_id = "f3";
    task.use_closed_form = true;
    task.primes = {7};
    task.rmax = 1;
    task.nmax = 8;
    task.s = 2;
    task.coefficient_budget = 60;
    CongruenceReport strong = run_task(task);
    task.s = 1;
    CongruenceReport weak = run_task(task);
    REQUIRE(strong.cells.size() == weak.cells.size());
    for (size_t i = 0; i < strong.cells.size(); ++i)
        if (strong.cells[i].verdict == Verdict::pass)
            CHECK(weak.cells[i].verdict == Verdict::pass);
}

TEST_CASE("reports are deterministic") {
    CongruenceTask task;
    task.source_id = "xi";
    task.use_closed_form = true;
    task.primes = {5};
    task.rmax = 1;
    task.nmax = 10;
    task.s = 3;
    task.coefficient_budget = 60;
    CongruenceReport first = run_task(task);
    CongruenceReport second = run_task(task);
    first.wall_seconds = 0.0;
    second.wall_seconds = 0.0;
    CHECK(first.to_json() == second.to_json());
    CHECK(first.to_csv() == second.to_csv());
}

TEST_CASE("budget exhaustion raises") {
    CongruenceTask task;
    task.source_id = "f23";
    task.primes = {251};
    task.rmax = 1;
    task.nmax = 5;
    task.coefficient_budget = 240;    // 251 > 240: no cell fits
    CHECK_THROWS_AS(run_task(task), Error);
}

TEST_CASE("csv layout") {
    CongruenceTask task;
    task.source_id = "vi";
    task.use_closed_form = true;
    task.primes = {5};
    task.rmax = 1;
    task.nmax = 2;
    task.s = 1;
    task.coefficient_budget = 12;
    CongruenceReport report = run_task(task);
    std::string csv = report.to_csv();
    CHECK(csv.rfind("entry,p,r,n,s,verdict,residue_a,residue_b\n", 0) == 0);
    CHECK(csv.find("vi,5,1,1,1,pass,") != std::string::npos);
}
