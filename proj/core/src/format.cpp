#include "repagg/format.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

namespace repagg {

std::string format_g9(double value) {
  if (value == 0.0) {
    return "0";  // folds -0 into 0
  }
  char buffer[32];
  const int n = std::snprintf(buffer, sizeof buffer, "%.9g", value);
  return std::string(buffer, static_cast<std::size_t>(n));
}

std::vector<std::string_view> split(std::string_view line, std::string_view separator) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(separator, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + separator.size();
  }
}

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = text.find_last_not_of(" \t\r\n");
  return text.substr(first, last - first + 1);
}

namespace {

template <typename T>
bool parse_with_from_chars(std::string_view field, T& out) {
  if (field.empty()) {
    return false;
  }
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

bool parse_uint(std::string_view field, unsigned long long& out) {
  return parse_with_from_chars(field, out);
}

bool parse_int(std::string_view field, long long& out) {
  return parse_with_from_chars(field, out);
}

bool parse_double(std::string_view field, double& out) {
  if (!field.empty() && field.front() == '+') {
    return false;
  }
  return parse_with_from_chars(field, out) && std::isfinite(out);
}

}  // namespace repagg
