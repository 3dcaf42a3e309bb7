#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace repagg {

/// Shortest "%.9g" rendering used by every CSV writer.
std::string format_g9(double value);

std::vector<std::string_view> split(std::string_view line, std::string_view separator);

std::string_view trim(std::string_view text);

/// Strict numeric field parsers; return false on trailing garbage or overflow.
bool parse_uint(std::string_view field, unsigned long long& out);
bool parse_int(std::string_view field, long long& out);
bool parse_double(std::string_view field, double& out);

}  // namespace repagg
