#include "bridgekit/csv.hpp"

#include <array>
#include <stdexcept>

#include "bridgekit/graph.hpp"

namespace bridgekit::csv {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_double(double v) {
  std::array<char, 64> buf;
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::int64_t parse_int(std::string_view field, std::size_t line_no, const char* what) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                     std::string(field) + "'");
  }
  return value;
}

double parse_double(std::string_view field, std::size_t line_no, const char* what) {
  double value = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw InputError("line " + std::to_string(line_no) + ": bad " + what + " '" +
                     std::string(field) + "'");
  }
  return value;
}

}  // namespace bridgekit::csv
