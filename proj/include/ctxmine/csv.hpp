#pragma once

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ctxmine::csv {

/// Splits one line on `delim`. Double-quoted fields may contain the delimiter;
/// a doubled quote inside quotes is a literal quote. Returns nullopt for an
/// unterminated quote.
std::optional<std::vector<std::string>> split_line(std::string_view line, char delim);

/// Quotes a field when it contains the delimiter, a quote, or leading/trailing
/// whitespace.
std::string quote(std::string_view field, char delim);

void write_row(std::ostream& out, const std::vector<std::string>& fields, char delim);

/// Reads a line, stripping a trailing '\r'. False at end of input.
bool read_line(std::istream& in, std::string& line);

std::string trim(std::string_view s);

/// Trims and collapses interior whitespace runs to one space.
std::string normalize_space(std::string_view s);

}  // namespace ctxmine::csv
