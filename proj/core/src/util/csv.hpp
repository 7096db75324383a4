#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace hdq::csv {

/// Splits RFC-4180-style CSV: quoted fields, doubled quotes, CRLF or LF.
/// Empty trailing line is ignored.
std::vector<std::vector<std::string>> parse(std::string_view bytes);

/// Quotes a field only when it contains a comma, quote, or newline.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

}  // namespace hdq::csv
