#ifndef BRIDGEKIT_CSV_HPP_
#define BRIDGEKIT_CSV_HPP_

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace bridgekit::csv {

/// Splits a line on commas. No quoting support; the file formats in this
/// project never embed commas in fields.
std::vector<std::string_view> split(std::string_view line);

/// Shortest round-trip decimal rendering of a double. Used everywhere a
/// number is written to an output file so runs are byte-reproducible.
std::string format_double(double v);

std::int64_t parse_int(std::string_view field, std::size_t line_no, const char* what);
double parse_double(std::string_view field, std::size_t line_no, const char* what);

}  // namespace bridgekit::csv

#endif  // BRIDGEKIT_CSV_HPP_
