#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace visbench::reproduce {

enum class Status { pass, fail, reported, open };
std::string_view to_string(Status s);  ///< PASS, FAIL, REPORTED, OPEN

/// One row of a check file. Values are already formatted.
struct Check {
  std::string item;
  std::string computed;
  std::string expected;
  std::string tolerance;
  Status status = Status::reported;
};

struct CheckFile {
  std::string name;  ///< file stem
  std::vector<Check> checks;

  int count(Status s) const;
};

/// Every published value recomputed and compared. Survey and criteria
/// fixtures are read from `data_dir`; a fixture that cannot be loaded turns
/// into a failing row.
std::vector<CheckFile> run_checks(const std::filesystem::path& data_dir);

/// CSV with header `item,computed,expected,tolerance,status`.
std::string render(const CheckFile& f);

/// Per-file totals, the content of summary.csv.
std::string render_summary(const std::vector<CheckFile>& files);

struct Outcome {
  std::vector<std::filesystem::path> written;
  std::vector<std::string> log;  ///< one line per file, in a fixed order
  int failures = 0;
};

/// Writes one CSV per dataset plus summary.csv into `out_dir` (created when
/// missing). Every file is written atomically.
Outcome reproduce(const std::filesystem::path& data_dir, const std::filesystem::path& out_dir);

}  // namespace visbench::reproduce
