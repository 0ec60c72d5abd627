#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace visbench::report {

/// Empty, text, real (formatted at the requested precision) or integer.
using Cell = std::variant<std::monostate, std::string, double, long long>;

/// Columns `parts` are the signed contributions of column `total` in every row.
struct Stacking {
  std::vector<std::size_t> parts;
  std::size_t total = 0;
};

struct Table {
  std::string name;   ///< file stem when written to disk
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> notes;
  std::optional<Stacking> stacking;

  void add_row(std::vector<Cell> row);
};

enum class Format { csv, markdown, svg };

/// "csv", "markdown" (or "md"), "svg" (or "svg-bars").
Format parse_format(std::string_view text);
std::string_view extension(Format f);

inline constexpr int kDefaultPrecision = 3;

/// Fixed-point with round-half-even on the exact binary value; "-0.000"
/// becomes "0.000"; infinities print as "inf" and "-inf".
std::string format_number(double value, int precision);

/// Shortest round-trip representation.
std::string format_exact(double value);

/// Throws unless 0 <= precision <= 12.
void validate_precision(int precision);

/// VISBENCH_PRECISION when set, otherwise kDefaultPrecision.
int default_precision();

std::string render_csv(const Table& t, int precision);
std::string render_markdown(const Table& t, int precision);
/// Bar chart with one group per row. With stacking, each group stacks its
/// part columns so that the signed segment heights add up to the total.
std::string render_svg(const Table& t, int precision);

std::string render(const Table& t, Format f, int precision);
/// Several tables; CSV and Markdown separate them with a blank line, SVG
/// stacks the charts vertically in one document.
std::string render(const std::vector<Table>& tables, Format f, int precision);

/// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

}  // namespace visbench::report
