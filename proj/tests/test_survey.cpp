#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"
#include "visbench/survey.hpp"

using namespace visbench;

namespace {

const std::filesystem::path kData = VISBENCH_TEST_DATA_DIR;

std::string fixture(const std::string& name) { return csv::read_file(kData / "survey" / name); }

std::vector<LondonRecord> kcl() { return parse_london_survey(fixture("kcl.csv")); }

std::string replace_first(std::string text, const std::string& from, const std::string& to) {
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  return text.replace(at, from.size(), to);
}

std::string error_of(const std::string& text) {
  try {
    parse_london_survey(text);
  } catch (const validation_error& e) {
    return e.what();
  }
  return "";
}

// Reference fold straight over the raw CSV cells.
struct RawStats {
  double mean = 0.0;
  double mean_time = 0.0;
  double min = 1e300;
  double max = -1e300;
};

RawStats raw_stats(const std::string& text, int question) {
  std::vector<std::vector<std::string>> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) rows.push_back(csv::split_line(line));
    start = end + 1;
  }
  const auto& header = rows.front();
  auto col = [&](const std::string& name) {
    return static_cast<std::size_t>(std::find(header.begin(), header.end(), name) - header.begin());
  };
  const std::string q = "q" + std::to_string(question);
  const std::size_t ans = col(q + "_ans");
  const std::size_t t = col(q + "_t");
  RawStats s;
  double n = 0;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    s.mean_time += std::stod(rows[r][t]);
    if (question <= 8) {
      const double a = std::stod(rows[r][ans]);
      s.mean += a;
      s.min = std::min(s.min, a);
      s.max = std::max(s.max, a);
    }
    ++n;
  }
  s.mean /= n;
  s.mean_time /= n;
  return s;
}

}  // namespace

TEST_CASE("fixtures parse") {
  CHECK(kcl().size() == 12);
  CHECK(parse_london_survey(fixture("ou.csv")).size() == 4);
  CHECK(parse_volvis_survey(fixture("volvis.csv")).size() == 10);
  const auto r = kcl();
  CHECK(r[0].surveyee == "P1");
  CHECK(r[0].estimates[0].answer == 8);
  CHECK(r[0].estimates[0].time == doctest::Approx(6.22));
  CHECK(r[0].counts[0].lookup_time2 == doctest::Approx(24.22));
  CHECK(r[0].stations[0].answer == "P");
  CHECK(r[0].london_residence == Residence::over_five_years);
  CHECK(r[2].metro_residence == Residence::months);
  CHECK(r[0].response_time(5) == doctest::Approx(6.13));
  CHECK(r[0].response_time(12) == doctest::Approx(5.16));
  CHECK_THROWS_AS(r[0].response_time(13), validation_error);
}

TEST_CASE("serialization round-trips byte for byte") {
  for (const char* name : {"kcl.csv", "ou.csv"}) {
    const std::string text = fixture(name);
    CHECK(serialize_london_survey(parse_london_survey(text)) == text);
  }
  const std::string v = fixture("volvis.csv");
  CHECK(serialize_volvis_survey(parse_volvis_survey(v)) == v);
}

TEST_CASE("malformed survey rows are rejected with line and column") {
  const std::string text = fixture("kcl.csv");
  CHECK(error_of("").find("header") != std::string::npos);
  CHECK(error_of(std::string(london_csv_header()) + "\n").find("no records") != std::string::npos);
  CHECK(error_of(replace_first(text, "surveyee,group", "id,group")).find("header") != std::string::npos);
  CHECK(error_of(replace_first(text, ",>5yr,>5yr\nP2", ",>5yr\nP2")).find("line 2") != std::string::npos);
  CHECK(error_of(replace_first(text, "P2,KCL", "P1,KCL")) == "line 3: duplicate surveyee id 'P1'");
  CHECK(error_of(replace_first(text, "P1,KCL,8,6.22", "P1,KCL,8,0")).find("line 2, column 'q1_t'") !=
        std::string::npos);
  CHECK(error_of(replace_first(text, "P1,KCL,8,", "P1,KCL,0,")).find("line 2, column 'q1_ans'") !=
        std::string::npos);
  CHECK(error_of(replace_first(text, "P1,KCL,8,", "P1,KCL,eight,")).find("column 'q1_ans'") !=
        std::string::npos);
  CHECK(error_of(replace_first(text, "P1,KCL", "P1,UCL")).find("column 'group'") != std::string::npos);
  CHECK(error_of(replace_first(text, "months,months", "months,ages")).find("residence") != std::string::npos);
}

TEST_CASE("parse_survey reads by kind and reports missing files as io errors") {
  const auto london = parse_survey(kData / "survey" / "kcl.csv", SurveyKind::london);
  CHECK(std::get<std::vector<LondonRecord>>(london).size() == 12);
  const auto volvis = parse_survey(kData / "survey" / "volvis.csv", SurveyKind::volvis);
  CHECK(std::get<std::vector<VolVisRecord>>(volvis).size() == 10);
  CHECK_THROWS_AS(parse_survey(kData / "survey" / "missing.csv", SurveyKind::london), io_error);
  CHECK_THROWS_AS(parse_survey(kData / "survey" / "volvis.csv", SurveyKind::london), validation_error);
  CHECK(parse_survey_kind("volvis") == SurveyKind::volvis);
  CHECK_THROWS_AS(parse_survey_kind("census"), validation_error);
}

TEST_CASE("question statistics match a raw fold") {
  for (const char* name : {"kcl.csv", "ou.csv"}) {
    const std::string text = fixture(name);
    const auto records = parse_london_survey(text);
    for (int q = 1; q <= 12; ++q) {
      CAPTURE(name);
      CAPTURE(q);
      const auto s = question_stats(records, q);
      const auto raw = raw_stats(text, q);
      CHECK(s.respondents == static_cast<int>(records.size()));
      CHECK(s.mean_time == doctest::Approx(raw.mean_time).epsilon(1e-12));
      if (q <= 8) {
        CHECK(s.mean == doctest::Approx(raw.mean).epsilon(1e-12));
        CHECK(s.min == raw.min);
        CHECK(s.max == raw.max);
      }
    }
  }
  CHECK_THROWS_AS(question_stats({}, 1), validation_error);
  CHECK_THROWS_AS(question_stats(kcl(), 0), validation_error);
}

TEST_CASE("statistics and categories do not depend on record order") {
  auto records = kcl();
  const auto overrides = read_overrides(kData / "survey" / "london_overrides.csv");
  std::mt19937 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto shuffled = records;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    for (int q = 1; q <= 12; ++q) {
      CHECK(question_stats(shuffled, q).mean == doctest::Approx(question_stats(records, q).mean));
      CHECK(question_stats(shuffled, q).mean_time == doctest::Approx(question_stats(records, q).mean_time));
    }
    for (int q = 1; q <= 4; ++q) {
      const int xi = kEstimateXis[static_cast<std::size_t>(q - 1)];
      CHECK(categorize_question(shuffled, q, xi, overrides).applied ==
            categorize_question(records, q, xi, overrides).applied);
    }
  }
}

TEST_CASE("category breakdown with overrides") {
  const auto overrides = read_overrides(kData / "survey" / "london_overrides.csv");
  REQUIRE(overrides.size() == 2);
  const auto q2 = categorize_question(kcl(), 2, 17, overrides);
  CHECK(q2.strict == CategoryCounts{2, 8, 2});
  CHECK(q2.applied == CategoryCounts{2, 9, 1});
  REQUIRE(q2.deviations.size() == 1);
  CHECK(q2.deviations[0].surveyee == "P2");
  CHECK(q2.deviations[0].answer == 30);
  CHECK(q2.deviations[0].strict == AnswerCategory::wild_guess);
  CHECK(q2.deviations[0].applied == AnswerCategory::close);
  const auto q3 = categorize_question(kcl(), 3, 32, overrides);
  CHECK(q3.strict == CategoryCounts{1, 2, 9});
  CHECK(q3.applied == CategoryCounts{0, 3, 9});
  REQUIRE(q3.deviations.size() == 1);
  CHECK(q3.deviations[0].surveyee == "P10");
  CHECK(q3.deviations[0].strict == AnswerCategory::spot_on);

  const auto sum = [](const CategoryCounts& c) { return c[0] + c[1] + c[2]; };
  for (int q = 1; q <= 4; ++q) {
    const auto b = categorize_question(kcl(), q, kEstimateXis[static_cast<std::size_t>(q - 1)]);
    CHECK(sum(b.strict) == 12);
    CHECK(b.strict == b.applied);
    CHECK(b.deviations.empty());
  }
}

TEST_CASE("surveyee benefit") {
  const auto overrides = read_overrides(kData / "survey" / "london_overrides.csv");
  const auto records = kcl();
  const auto new2 = DivergenceSpec::parse("new:2");
  CHECK(std::abs(surveyee_benefit(records[8], kEstimateXis, new2, overrides) - 0.160) <= 1.5e-3);
  // P3 is a wild guess everywhere, so its benefit is the wild-guess entry of every table.
  const auto& p3 = records[2];
  for (int q = 1; q <= 4; ++q) {
    CHECK(categorize_estimate(q, p3.estimates[static_cast<std::size_t>(q - 1)].answer,
                              kEstimateXis[static_cast<std::size_t>(q - 1)], overrides) == AnswerCategory::wild_guess);
  }
  double wild = 0.0;
  for (int xi : kEstimateXis) {
    wild += london_benefit_table({xi, 256}, {new2}).at(2, 0);
  }
  CHECK(surveyee_benefit(p3, kEstimateXis, new2, overrides) == doctest::Approx(wild / 4));
}

TEST_CASE("override files") {
  CHECK(parse_overrides("question,answer,category\n1,12,spot on\n").at(0).category == AnswerCategory::spot_on);
  CHECK_THROWS_AS(parse_overrides("q,a,c\n"), validation_error);
  CHECK_THROWS_AS(parse_overrides("question,answer,category\n5,12,close\n"), validation_error);
  CHECK_THROWS_AS(parse_overrides("question,answer,category\n1,12,nearly\n"), validation_error);
  CHECK_THROWS_AS(parse_overrides("question,answer,category\n1,12,close\n1,12,close\n"), validation_error);
  CHECK_THROWS_AS(parse_overrides("question,answer,category\n1,12\n"), validation_error);
  CHECK_THROWS_AS(read_overrides(kData / "nope.csv"), io_error);
}

TEST_CASE("volvis tallies and grades") {
  const auto records = parse_volvis_survey(fixture("volvis.csv"));
  const auto summary = volvis_summary(records);
  CHECK(summary[1].tally == std::map<std::string, int>{{"C", 9}, {"d", 1}});
  CHECK(summary[4].tally == std::map<std::string, int>{{"B", 1}, {"D", 1}, {"a", 8}});
  for (const auto& s : summary) CHECK(s.grades[0] + s.grades[1] + s.grades[2] == 10);
  CHECK(records[2].rendering_knowledge.lo == 4);
  CHECK(records[2].rendering_knowledge.hi == 5);
  CHECK(records[2].rendering_knowledge.token() == "4-5");

  CHECK(GradedAnswer::parse("(D)").grade == Grade::most_appropriate);
  CHECK(GradedAnswer::parse("(a)").grade == Grade::acceptable);
  CHECK(GradedAnswer::parse("c").grade == Grade::incorrect);
  CHECK(GradedAnswer::parse("D").grade == Grade::incorrect);
  CHECK(GradedAnswer::parse("(a)").token() == "(a)");
  CHECK_THROWS_AS(GradedAnswer::parse("(E)"), validation_error);
  CHECK_THROWS_AS(GradedAnswer::parse("ab"), validation_error);
  CHECK_THROWS_AS(RankRange::parse("0"), validation_error);
  CHECK_THROWS_AS(RankRange::parse("5-4"), validation_error);
  CHECK_THROWS_AS(RankRange::parse("6"), validation_error);
}
