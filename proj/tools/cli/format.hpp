#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace openrcd::cli {

/// Round-trippable decimal: 17 significant digits, "inf"/"-inf"/"nan" for
/// non-finite values.
std::string format_double(double v);

/// Comma-separated row terminated by a single LF.
void write_csv_row(std::ostream& os, const std::vector<std::string>& fields);

/// Splits on commas, trimming surrounding whitespace from each item.
std::vector<std::string> split_list(std::string_view text);

std::string_view trim(std::string_view s) noexcept;

}  // namespace openrcd::cli
