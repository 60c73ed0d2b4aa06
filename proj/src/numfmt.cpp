#include "leafclust/numfmt.hpp"

#include <charconv>
#include <cstdio>
#include <system_error>

#include "leafclust/error.hpp"

namespace leafclust {

std::string format_shortest(double x) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, result.ptr);
}

std::string format_g17(double x) {
  char buf[64];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

double parse_double(const std::string& text) {
  std::size_t begin = text.find_first_not_of(" \t\r");
  std::size_t end = text.find_last_not_of(" \t\r");
  if (begin == std::string::npos) throw InputError("empty numeric field");
  const char* first = text.data() + begin;
  const char* last = text.data() + end + 1;
  double value = 0.0;
  const auto result = std::from_chars(first, last, value);
  if (result.ec != std::errc() || result.ptr != last) {
    throw InputError("not a number: '" + text + "'");
  }
  return value;
}

}  // namespace leafclust
