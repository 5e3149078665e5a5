#include "iklink/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>

#include "iklink/errors.hpp"

namespace iklink::csv {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> split_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(std::string_view field, const std::string& context) {
  const std::string s(field);
  if (s.empty()) throw ParseError(context + ": empty field");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || errno == ERANGE) {
    throw ParseError(context + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace iklink::csv
