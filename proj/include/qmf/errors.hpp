#pragma once

#include <stdexcept>
#include <string>

namespace qmf {

enum class errc {
    division_by_zero_series,
    non_integral_shift,
    not_positive_definite,
    parity_violation,
    unknown_entry,
    unknown_character,
    insufficient_order,
    shift_mismatch,
    non_integral_coefficient,
    non_integral_closed_form,
    index_unavailable,
    range_exceeded,
    filter_violation,
    parse_error,
};

inline const char* errc_name(errc code) {
    switch (code) {
        case errc::division_by_zero_series: return "DivisionByZeroSeries";
        case errc::non_integral_shift: return "NonIntegralShift";
        case errc::not_positive_definite: return "NotPositiveDefinite";
        case errc::parity_violation: return "ParityViolation";
        case errc::unknown_entry: return "UnknownEntry";
        case errc::unknown_character: return "UnknownCharacter";
        case errc::insufficient_order: return "InsufficientOrder";
        case errc::shift_mismatch: return "ShiftMismatch";
        case errc::non_integral_coefficient: return "NonIntegralCoefficient";
        case errc::non_integral_closed_form: return "NonIntegralClosedForm";
        case errc::index_unavailable: return "IndexUnavailable";
        case errc::range_exceeded: return "RangeExceeded";
        case errc::filter_violation: return "FilterViolation";
        case errc::parse_error: return "ParseError";
    }
    return "Error";
}

/* Every contract violation in the library throws this; code() tells the
 * caller which contract broke, what() carries the offending values. */
class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& message) {
    throw Error(code, message);
}

} // namespace qmf
