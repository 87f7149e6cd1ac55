#pragma once

#include <string>
#include <vector>

#include "qmf/numeric.hpp"

namespace qmf {

// The sequences with printed closed forms: f2, f3 from Table 1 and the
// binomial-sum columns of Tables 2 and 3.
extern const std::vector<std::string> closed_form_ids;

bool is_closed_form_id(const std::string& id);

// Exact integer value of the closed form at index n. The hypergeometric
// forms f2, f3 are evaluated as exact rationals and asserted integral
// (non_integral_closed_form would mean an implementation bug).
BigInt closed_form(const std::string& id, unsigned long n);

std::vector<BigInt> closed_form_range(const std::string& id, unsigned long from, unsigned long to);

} // namespace qmf
