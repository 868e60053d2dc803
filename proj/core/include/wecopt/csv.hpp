#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Small helpers shared by every file format the library reads or writes.
namespace wecopt::csv {

std::string_view trim(std::string_view s);

// Splits on commas and trims each field.
std::vector<std::string_view> split(std::string_view line);

std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

// Shortest representation that parses back to the same double.
std::string format_exact(double value);

// printf-style %.{digits}g.
std::string format_significant(double value, int digits);

// Fixed-point with the given number of decimals.
std::string format_fixed(double value, int decimals);

// Strips a trailing '#' comment and surrounding whitespace.
std::string_view strip_comment(std::string_view line);

}  // namespace wecopt::csv
