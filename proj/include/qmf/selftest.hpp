#pragma once

#include <iosfwd>

namespace qmf::selftest {

struct Options {
    bool quick = false;    // reduced orders/ranges; skips the long criteria
};

// Runs the acceptance suite, one [PASS]/[FAIL]/[SKIP] line per criterion.
// Returns 0 when nothing failed, 1 otherwise.
int run(const Options& options, std::ostream& out);

} // namespace qmf::selftest
