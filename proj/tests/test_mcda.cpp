#include "doctest.h"

#include <algorithm>
#include <random>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"
#include "visbench/mcda.hpp"

using namespace visbench;
using namespace visbench::mcda;

namespace {

const std::filesystem::path kData = VISBENCH_TEST_DATA_DIR;

// Published score grid; -1 is blank, 5* cells are stored as -5.
constexpr int kGrid[9][9] = {
    {0, 5, 5, 5, 5, 5, 5, 3, 3},     {-5, 5, 2, 5, 5, 5, 5, 5, 5},    {-5, 5, 5, 5, 5, 5, 5, 1, 1},
    {-5, 5, 1, 2, 4, 2, 4, 3, 3},    {-5, 4, 1, 3, 5, 3, 5, 2, 3},    {-1, 3, -1, 5, 4, 5, 4, -1, -1},
    {-1, 4, -1, 5, 3, 2, 1, -1, -1}, {-1, 5, -1, 1, 5, 5, 5, -1, -1}, {-1, 3, -1, 1, 5, 3, 3, -1, -1}};

int grid_sum(std::size_t measure, int first_row, int last_row) {
  int s = 0;
  for (int r = first_row; r <= last_row; ++r) {
    const int v = kGrid[r][measure];
    if (v >= 0) s += v;
  }
  return s;
}

std::string error_of(const std::string& text) {
  try {
    parse_criteria_table(text);
  } catch (const validation_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("built-in table matches the published grid") {
  const auto t = reference_table();
  REQUIRE(t.measures.size() == 9);
  REQUIRE(t.criteria.size() == 9);
  t.validate();
  for (std::size_t c = 0; c < 9; ++c) {
    for (std::size_t m = 0; m < 9; ++m) {
      const int v = kGrid[c][m];
      const auto& cell = t.scores[c][m];
      CAPTURE(c);
      CAPTURE(m);
      if (v == -1) {
        CHECK_FALSE(cell.score.has_value());
      } else {
        REQUIRE(cell.score.has_value());
        CHECK(*cell.score == std::abs(v));
        CHECK(cell.comparison_only == (v == -5));
      }
    }
  }
  CHECK(t.criteria[0].importance == Importance::critical);
  CHECK(t.criteria[8].stage == StageGroup::case_studies);
}

TEST_CASE("stage sums") {
  const auto t = reference_table();
  struct Range {
    const char* label;
    int first, last;
  };
  for (const Range r : {Range{"1", 0, 0}, Range{"2-5", 1, 4}, Range{"1-5", 0, 4}, Range{"6-9", 5, 8}, Range{"1-9", 0, 8}}) {
    const auto range = parse_stage_range(t, r.label);
    CHECK(stage_range_label(t, range) == r.label);
    const auto sums = stage_sums(t, range);
    for (std::size_t m = 0; m < 9; ++m) {
      CAPTURE(r.label);
      CAPTURE(m);
      const bool gone = t.eliminated_after[m] && *t.eliminated_after[m] < range.last;
      if (gone) {
        CHECK_FALSE(sums[m].has_value());
      } else {
        REQUIRE(sums[m].has_value());
        CHECK(*sums[m] == grid_sum(m, r.first, r.last));
      }
    }
  }
  const auto all = stage_sums(t, parse_stage_range(t, "1-9"));
  CHECK(*all[1] == 39);
  CHECK(*all[4] == 41);
  CHECK_THROWS_AS(parse_stage_range(t, "2-4"), validation_error);
  CHECK_THROWS_AS(parse_stage_range(t, "0-9"), validation_error);
  CHECK_THROWS_AS(parse_stage_range(t, "x"), validation_error);
}

TEST_CASE("rankings") {
  const auto t = reference_table();
  const auto range = parse_stage_range(t, "1-9");
  const auto unit = weighted_rank(t, ImportanceWeights::unit(), range);
  std::vector<std::string> order;
  for (const auto& r : unit) order.push_back(r.measure);
  CHECK(order == std::vector<std::string>{"new:2", "js", "ncm:2", "ncm:1", "new:1"});
  CHECK(unit[0].score == 41);

  const auto weighted = weighted_rank(t, ImportanceWeights::parse("critical=4,important=2,helpful=1"), range);
  REQUIRE(weighted.size() == 5);
  const std::vector<std::pair<std::string, double>> expected{
      {"new:2", 76}, {"js", 72}, {"ncm:2", 70}, {"ncm:1", 68}, {"new:1", 59}};
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(weighted[i].measure == expected[i].first);
    CHECK(weighted[i].score == expected[i].second);
  }

  const auto first = weighted_rank(t, ImportanceWeights::unit(), parse_stage_range(t, "1"));
  CHECK(first.size() == 9);
  CHECK(first.back().measure == "kl@0.3");

  CHECK_THROWS_AS(weighted_rank(t, ImportanceWeights::parse("critical=4,important=2"), range), validation_error);
  CHECK_THROWS_AS(ImportanceWeights::parse("critical=0"), validation_error);
  CHECK_THROWS_AS(ImportanceWeights::parse("critical=1,critical=2"), validation_error);
  CHECK_THROWS_AS(ImportanceWeights::parse("vital=1"), validation_error);
}

TEST_CASE("criteria CSV round trip") {
  const auto t = reference_table();
  const std::string text = serialize_criteria_table(t);
  const auto back = parse_criteria_table(text);
  CHECK(serialize_criteria_table(back) == text);
  CHECK(back.measures == t.measures);
  CHECK(csv::read_file(kData / "mcda" / "table1.csv") == text);
  CHECK_THROWS_AS(read_criteria_table(kData / "mcda" / "missing.csv"), io_error);
}

TEST_CASE("criteria CSV validation") {
  const std::string header = "criterion,importance,stage,a,b\n";
  const std::string ok = header + "x,critical,1,1,2\ny,helpful,2-5,3,4\neliminated_after,,,,\n";
  CHECK_NOTHROW(parse_criteria_table(ok));
  CHECK_FALSE(error_of(header + "x,critical,1,6,2\neliminated_after,,,,\n").empty());
  CHECK_FALSE(error_of(header + "x,critical,1,-1,2\neliminated_after,,,,\n").empty());
  CHECK_FALSE(error_of(header + "x,critical,1,,2\neliminated_after,,,,\n").empty());
  CHECK_FALSE(error_of(header + "x,critical,1,one,2\neliminated_after,,,,\n").empty());
  CHECK_FALSE(error_of(header + "x,urgent,1,1,2\neliminated_after,,,,\n").empty());
  CHECK_FALSE(error_of(header + "x,critical,1,1\neliminated_after,,,,\n").empty());
  CHECK_FALSE(error_of(header + "y,helpful,2-5,3,4\nx,critical,1,1,2\neliminated_after,,,,\n").empty());
  // A counted score after the measure was eliminated.
  CHECK_FALSE(error_of(header + "x,critical,1,1,2\ny,helpful,2-5,3,4\neliminated_after,,,1,\n").empty());
  CHECK_NOTHROW(parse_criteria_table(header + "x,critical,1,1,2\ny,helpful,2-5,3*,4\neliminated_after,,,1,\n"));
  CHECK_FALSE(error_of(header + "x,critical,1,1,2\neliminated_after,,,,\nz,helpful,1,1,1\n").empty());
}

TEST_CASE("unit-weight ranking equals plain sum ranking on random tables") {
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> score(0, 5);
  std::uniform_int_distribution<int> count(1, 6);
  std::uniform_int_distribution<int> group(0, 3);
  for (int trial = 0; trial < 300; ++trial) {
    CriteriaTable t;
    const int measures = count(rng);
    for (int m = 0; m < measures; ++m) t.measures.push_back("m" + std::to_string(m));
    for (int g = 0; g < 3; ++g) {
      for (int k = count(rng) % 3 + 1; k > 0; --k) {
        t.criteria.push_back({"c", static_cast<Importance>(score(rng) % 3), static_cast<StageGroup>(g)});
      }
    }
    for (int m = 0; m < measures; ++m) {
      const int g = group(rng);
      t.eliminated_after.push_back(g == 3 ? std::nullopt : std::optional<StageGroup>(static_cast<StageGroup>(g)));
    }
    t.scores.assign(t.criteria.size(), std::vector<ScoreCell>(static_cast<std::size_t>(measures)));
    for (std::size_t c = 0; c < t.criteria.size(); ++c) {
      for (std::size_t m = 0; m < t.measures.size(); ++m) {
        if (t.active(m, t.criteria[c].stage)) t.scores[c][m].score = score(rng);
      }
    }
    REQUIRE_NOTHROW(t.validate());
    REQUIRE_NOTHROW(parse_criteria_table(serialize_criteria_table(t)));

    const StageRange all{StageGroup::boundedness, StageGroup::case_studies};
    const auto sums = stage_sums(t, all);
    std::vector<std::pair<std::string, int>> expected;
    for (std::size_t m = 0; m < t.measures.size(); ++m) {
      if (sums[m]) expected.emplace_back(t.measures[m], *sums[m]);
    }
    std::stable_sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    const auto ranked = weighted_rank(t, ImportanceWeights::unit(), all);
    REQUIRE(ranked.size() == expected.size());
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      CHECK(ranked[i].measure == expected[i].first);
      CHECK(ranked[i].score == expected[i].second);
    }

    // Once a measure drops out it stays out of every later range.
    for (std::size_t m = 0; m < t.measures.size(); ++m) {
      bool gone = false;
      for (int g = 0; g < 3; ++g) {
        const auto s = stage_sums(t, {static_cast<StageGroup>(g), static_cast<StageGroup>(g)});
        if (gone) CHECK_FALSE(s[m].has_value());
        if (!s[m]) gone = true;
      }
    }
  }
}
