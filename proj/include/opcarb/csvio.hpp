#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace opcarb {

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

std::optional<double> parse_double(std::string_view text);
std::optional<int> parse_int(std::string_view text);

/// Splits one CSV line on commas. Fields are taken verbatim; the schemas in
/// this project never contain embedded commas or quotes.
std::vector<std::string> split_csv_line(std::string_view line);

std::string join_csv_line(const std::vector<std::string>& fields);

} // namespace opcarb
