#pragma once

#include <string>

namespace leafclust {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_shortest(double x);

/// Decimal string with 17 significant digits ("%.17g").
std::string format_g17(double x);

/// Parse a full string as a double; throws InputError on trailing garbage.
double parse_double(const std::string& text);

}  // namespace leafclust
