#pragma once

#include <string>

namespace lopsim {

// Shortest decimal string that parses back to exactly `value`. Locale
// independent ('.' radix point always); used for every number the CLI emits.
std::string format_double(double value);

}  // namespace lopsim
