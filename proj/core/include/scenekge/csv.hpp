#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace scenekge::csv {

/// Quotes a field when it holds a comma, quote, or line break.
std::string field(std::string_view value);

/// Splits one CSV record. Throws FormatError (tagged with `line_number`) on a bad quote.
std::vector<std::string> split(std::string_view line, std::size_t line_number);

/// Shortest decimal text that parses back to the same double.
std::string number(double value);

/// Throws FormatError unless `text` is a complete decimal number.
double parse_number(std::string_view text, std::size_t line_number);

}  // namespace scenekge::csv
