#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace opm {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p" or "p/q" (optional leading '-', q > 0 after normalization).
// Returns nullopt on malformed input or zero denominator.
std::optional<Rat> parse_rational(const std::string& text);

// Canonical text form: "p" when the denominator is 1, else "p/q" in lowest
// terms with q > 0.
std::string format_rational(const Rat& value);

// Exact square root when value is the square of a rational, nullopt otherwise.
// The returned root is nonnegative.
std::optional<Rat> exact_sqrt(const Rat& value);

// Best rational approximation with denominator bounded by max_den, computed
// by the continued-fraction convergents of value.
Rat snap_to_rational(double value, std::uint64_t max_den = 1000000);

double to_double(const Rat& value);

}  // namespace opm
