#include "visbench/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench::report {

namespace {

struct CellText {
  int precision;
  std::string operator()(std::monostate) const { return ""; }
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(double v) const { return format_number(v, precision); }
  std::string operator()(long long v) const { return std::to_string(v); }
};

std::string cell_text(const Cell& c, int precision) { return std::visit(CellText{precision}, c); }

std::optional<double> cell_value(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<long long>(&c)) return static_cast<double>(*i);
  return std::nullopt;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += ch;
    }
  }
  return out;
}

std::string px(double v) { return format_number(v, 3); }

constexpr const char* kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                    "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

struct Chart {
  std::string body;
  double height = 0.0;
  double width = 0.0;
};

Chart chart(const Table& t, int precision, double y0) {
  constexpr double kBarWidth = 18.0;
  constexpr double kGap = 14.0;
  constexpr double kPlotHeight = 200.0;
  constexpr double kMargin = 40.0;

  std::vector<std::size_t> series;
  if (t.stacking) {
    series = t.stacking->parts;
  } else {
    for (std::size_t c = 1; c < t.columns.size(); ++c) {
      const bool numeric = std::any_of(t.rows.begin(), t.rows.end(),
                                       [&](const auto& r) { return c < r.size() && cell_value(r[c]); });
      if (numeric) series.push_back(c);
    }
  }

  // Value range, including stacked extents.
  double lo = 0.0;
  double hi = 0.0;
  for (const auto& row : t.rows) {
    double up = 0.0;
    double down = 0.0;
    for (std::size_t c : series) {
      const auto v = c < row.size() ? cell_value(row[c]) : std::nullopt;
      if (!v || !std::isfinite(*v)) continue;
      if (t.stacking) {
        (*v >= 0 ? up : down) += *v;
      } else {
        hi = std::max(hi, *v);
        lo = std::min(lo, *v);
      }
    }
    hi = std::max(hi, up);
    lo = std::min(lo, down);
  }
  const double span = hi - lo > 0 ? hi - lo : 1.0;
  const double scale = kPlotHeight / span;
  const double top = y0 + kMargin;
  const double zero = top + hi * scale;

  const std::size_t bars_per_group = t.stacking ? 1 : std::max<std::size_t>(series.size(), 1);
  const double group_width = bars_per_group * kBarWidth + kGap;

  std::ostringstream out;
  out << "<g class=\"chart\" data-name=\"" << xml_escape(t.name) << "\" data-scale=\"" << format_exact(scale)
      << "\">\n";
  out << "<text x=\"" << px(kMargin) << "\" y=\"" << px(y0 + 20) << "\" font-size=\"14\">" << xml_escape(t.title)
      << "</text>\n";
  const double x_end = kMargin + t.rows.size() * group_width;
  out << "<line x1=\"" << px(kMargin) << "\" y1=\"" << px(zero) << "\" x2=\"" << px(x_end) << "\" y2=\"" << px(zero)
      << "\" stroke=\"#333\"/>\n";

  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string label = row.empty() ? "" : cell_text(row[0], precision);
    const double gx = kMargin + r * group_width;
    out << "<g class=\"bar-group\" data-label=\"" << xml_escape(label) << "\"";
    if (t.stacking && t.stacking->total < row.size()) {
      out << " data-total=\"" << xml_escape(cell_text(row[t.stacking->total], precision)) << "\"";
    }
    out << ">\n";
    double up = zero;
    double down = zero;
    for (std::size_t s = 0; s < series.size(); ++s) {
      const std::size_t c = series[s];
      const auto v = c < row.size() ? cell_value(row[c]) : std::nullopt;
      if (!v || !std::isfinite(*v)) continue;
      const double h = std::abs(*v) * scale;
      double x = gx;
      double y = 0.0;
      if (t.stacking) {
        if (*v >= 0) {
          up -= h;
          y = up;
        } else {
          y = down;
          down += h;
        }
      } else {
        x = gx + s * kBarWidth;
        y = *v >= 0 ? zero - h : zero;
      }
      out << "<rect class=\"bar\" data-series=\"" << xml_escape(t.columns[c]) << "\" data-value=\""
          << format_exact(*v) << "\" data-sign=\"" << (*v < 0 ? "-" : "+") << "\" x=\"" << px(x) << "\" y=\""
          << px(y) << "\" width=\"" << px(kBarWidth) << "\" height=\"" << px(h) << "\" fill=\""
          << kPalette[s % std::size(kPalette)] << "\"><title>" << xml_escape(label) << " " << xml_escape(t.columns[c])
          << ": " << format_number(*v, precision) << "</title></rect>\n";
    }
    out << "<text x=\"" << px(gx) << "\" y=\"" << px(top + kPlotHeight + 16) << "\" font-size=\"10\">"
        << xml_escape(label) << "</text>\n";
    out << "</g>\n";
  }
  out << "</g>\n";
  return {out.str(), kMargin + kPlotHeight + 40, x_end + kMargin};
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw validation_error("report row width does not match columns");
  rows.push_back(std::move(row));
}

Format parse_format(std::string_view text) {
  if (text == "csv") return Format::csv;
  if (text == "markdown" || text == "md") return Format::markdown;
  if (text == "svg" || text == "svg-bars") return Format::svg;
  throw validation_error("unknown format '" + std::string(text) + "' (expected csv, markdown or svg)");
}

std::string_view extension(Format f) {
  switch (f) {
    case Format::csv: return ".csv";
    case Format::markdown: return ".md";
    case Format::svg: return ".svg";
  }
  return "";
}

std::string format_number(double value, int precision) {
  validate_precision(precision);
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[512];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  std::string s(buf, res.ptr);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string format_exact(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void validate_precision(int precision) {
  if (precision < 0 || precision > 12) throw validation_error("precision must be within [0, 12]");
}

int default_precision() {
  const char* env = std::getenv("VISBENCH_PRECISION");
  if (env == nullptr || *env == '\0') return kDefaultPrecision;
  long long p = 0;
  try {
    p = csv::parse_int(env, "VISBENCH_PRECISION");
  } catch (const validation_error&) {
    throw validation_error(std::string("VISBENCH_PRECISION must be an integer within [0, 12], got '") + env + "'");
  }
  if (p < 0 || p > 12) throw validation_error("VISBENCH_PRECISION must be within [0, 12]");
  return static_cast<int>(p);
}

std::string render_csv(const Table& t, int precision) {
  validate_precision(precision);
  std::ostringstream out;
  out << csv::join(t.columns) << '\n';
  for (const auto& row : t.rows) {
    csv::Row fields;
    for (const auto& c : row) fields.push_back(cell_text(c, precision));
    out << csv::join(fields) << '\n';
  }
  return out.str();
}

std::string render_markdown(const Table& t, int precision) {
  validate_precision(precision);
  auto esc = [](std::string s) {
    std::string out;
    for (char ch : s) {
      if (ch == '|') out += '\\';
      out += ch;
    }
    return out;
  };
  std::ostringstream out;
  if (!t.title.empty()) out << "### " << t.title << "\n\n";
  out << '|';
  for (const auto& c : t.columns) out << ' ' << esc(c) << " |";
  out << "\n|";
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    const bool numeric = std::any_of(t.rows.begin(), t.rows.end(),
                                     [&](const auto& r) { return c < r.size() && cell_value(r[c]); });
    out << (numeric ? "---:|" : "---|");
  }
  out << '\n';
  for (const auto& row : t.rows) {
    out << '|';
    for (const auto& c : row) out << ' ' << esc(cell_text(c, precision)) << " |";
    out << '\n';
  }
  if (!t.notes.empty()) {
    out << '\n';
    for (const auto& n : t.notes) out << "- " << n << '\n';
  }
  return out.str();
}

std::string render_svg(const Table& t, int precision) { return render(std::vector<Table>{t}, Format::svg, precision); }

std::string render(const Table& t, Format f, int precision) {
  switch (f) {
    case Format::csv: return render_csv(t, precision);
    case Format::markdown: return render_markdown(t, precision);
    case Format::svg: return render_svg(t, precision);
  }
  return {};
}

std::string render(const std::vector<Table>& tables, Format f, int precision) {
  validate_precision(precision);
  if (f != Format::svg) {
    std::string out;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      if (i > 0) out += '\n';
      out += render(tables[i], f, precision);
    }
    return out;
  }
  std::string body;
  double y = 0.0;
  double width = 200.0;
  for (const auto& t : tables) {
    const Chart c = chart(t, precision, y);
    body += c.body;
    y += c.height;
    width = std::max(width, c.width);
  }
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(width) << "\" height=\"" << px(y)
      << "\" viewBox=\"0 0 " << px(width) << ' ' << px(y) << "\">\n"
      << body << "</svg>\n";
  return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw io_error("cannot write '" + tmp.string() + "'");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw io_error("cannot write '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw io_error("cannot write '" + path.string() + "'");
  }
}

}  // namespace visbench::report
