#include "doctest.h"

#include <unistd.h>

#include <fstream>

#include "visbench/csv.hpp"
#include "visbench/reproduce.hpp"

using namespace visbench;
using namespace visbench::reproduce;

namespace {

const std::filesystem::path kData = VISBENCH_TEST_DATA_DIR;

std::filesystem::path scratch(const std::string& tag) {
  const auto dir = std::filesystem::temp_directory_path() / ("vb_repro_" + tag + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

const CheckFile& file_named(const std::vector<CheckFile>& files, const std::string& name) {
  for (const auto& f : files) {
    if (f.name == name) return f;
  }
  FAIL("missing check file " << name);
  return files.front();
}

int total(const std::vector<CheckFile>& files, Status s) {
  int n = 0;
  for (const auto& f : files) n += f.count(s);
  return n;
}

}  // namespace

TEST_CASE("check files and their fixed order") {
  const auto files = run_checks(kData);
  std::vector<std::string> names;
  for (const auto& f : files) names.push_back(f.name);
  CHECK(names == std::vector<std::string>{"worked_example", "good_bad", "abcd", "mip_divergence_q", "mip_benefit_q",
                                          "mip_benefit_qprime", "isosurface", "london_benefit", "london_questions",
                                          "survey_stats", "table1", "grid_paths"});
  for (const auto& f : files) {
    CAPTURE(f.name);
    CHECK_FALSE(f.checks.empty());
    CHECK(render(f).rfind("item,computed,expected,tolerance,status\n", 0) == 0);
  }
  // The two known disagreements with the printed values, nothing else.
  CHECK(total(files, Status::fail) == 2);
  CHECK(file_named(files, "mip_divergence_q").count(Status::fail) == 1);
  CHECK(file_named(files, "survey_stats").count(Status::fail) == 1);
  CHECK(file_named(files, "grid_paths").count(Status::open) == 1);
  CHECK(file_named(files, "mip_benefit_q").count(Status::reported) >= 1);
}

TEST_CASE("reproduce output is deterministic") {
  const auto a = scratch("a");
  const auto b = scratch("b");
  const auto first = visbench::reproduce::reproduce(kData, a);
  const auto second = visbench::reproduce::reproduce(kData, b);
  CHECK(first.failures == second.failures);
  CHECK(first.log == second.log);
  REQUIRE(first.written.size() == 13);
  for (std::size_t i = 0; i < first.written.size(); ++i) {
    CHECK(first.written[i].filename() == second.written[i].filename());
    CHECK(csv::read_file(first.written[i]) == csv::read_file(second.written[i]));
  }
  CHECK(std::filesystem::exists(a / "summary.csv"));
  CHECK(csv::read_file(a / "summary.csv").rfind("file,checks,pass,fail,reported,open\n", 0) == 0);
  std::filesystem::remove_all(a);
  std::filesystem::remove_all(b);
}

TEST_CASE("a corrupted fixture surfaces as failing checks") {
  const auto dir = scratch("corrupt");
  std::filesystem::copy(kData, dir / "data", std::filesystem::copy_options::recursive);
  const auto kcl = dir / "data" / "survey" / "kcl.csv";
  std::string text = csv::read_file(kcl);
  const auto at = text.find("P1,KCL,8,");
  REQUIRE(at != std::string::npos);
  text.replace(at, 9, "P1,KCL,80,");
  { std::ofstream(kcl, std::ios::binary) << text; }
  const auto files = run_checks(dir / "data");
  CHECK(file_named(files, "survey_stats").count(Status::fail) > 1);

  std::filesystem::remove(dir / "data" / "mcda" / "table1.csv");
  const auto without_table = run_checks(dir / "data");
  const auto& table1 = file_named(without_table, "table1");
  REQUIRE(table1.checks.size() == 1);
  CHECK(table1.checks[0].status == Status::fail);
  CHECK(table1.checks[0].item.rfind("load", 0) == 0);
  std::filesystem::remove_all(dir);
}
