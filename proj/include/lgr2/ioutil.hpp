#pragma once

#include <charconv>
#include <string>
#include <vector>

#include "lgr2/errors.hpp"

namespace lgr2 {

// Shortest representation that round-trips exactly; keeps CSV output both
// readable and byte-deterministic.
inline std::string format_value(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw InternalError("to_chars failed");
  return std::string(buf, ptr);
}

inline double parse_value(const std::string& s) {
  double v = 0;
  const auto* begin = s.data();
  auto [ptr, ec] = std::from_chars(begin, begin + s.size(), v);
  if (ec != std::errc() || ptr != begin + s.size())
    throw InputError("not a number: '" + s + "'");
  return v;
}

inline std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace lgr2
