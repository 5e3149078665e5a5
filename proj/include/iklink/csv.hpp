#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace iklink::csv {

/// Shortest-safe round-trip formatting (17 significant digits).
std::string format_double(double v);

std::vector<std::string> split_line(std::string_view line);

/// Parses a full-precision number; throws ParseError with `context`.
double parse_double(std::string_view field, const std::string& context);

}  // namespace iklink::csv
