#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace visbench::csv {

using Row = std::vector<std::string>;

/// A parsed CSV document. `line_numbers[i]` is the 1-based source line of
/// `rows[i]`, used for error messages.
struct Document {
  Row header;
  std::vector<Row> rows;
  std::vector<std::size_t> line_numbers;
};

/// Splits one CSV record. Double-quoted fields may contain commas and "" escapes.
Row split_line(std::string_view line);

/// Parses text with a mandatory header row. Blank lines are skipped; a
/// leading UTF-8 BOM is ignored.
Document parse(std::string_view text);

/// Reads the whole file; throws io_error when it cannot be opened.
std::string read_file(const std::filesystem::path& path);

Document read(const std::filesystem::path& path);

/// Quotes a field when it contains a comma, quote or newline.
std::string escape(std::string_view field);

std::string join(const Row& row);

double parse_double(std::string_view text, std::string_view what);
long long parse_int(std::string_view text, std::string_view what);

std::string trim(std::string_view text);

}  // namespace visbench::csv
