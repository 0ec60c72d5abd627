#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "visbench/measures.hpp"
#include "visbench/scenarios.hpp"

namespace visbench {

// ---------------------------------------------------------------------------
// London underground survey

enum class SurveyGroup { kcl, ou };
enum class Residence { never, days, weeks, months, one_to_five_years, over_five_years };

std::string_view to_string(SurveyGroup g);
std::string_view to_string(Residence r);

struct TimedAnswer {
  int answer = 0;     ///< minutes
  double time = 0.0;  ///< seconds
};

/// Stop-counting question: two station lookup times, the count, its time.
struct CountAnswer {
  double lookup_time1 = 0.0;
  double lookup_time2 = 0.0;
  int answer = 0;
  double time = 0.0;
};

struct StationAnswer {
  std::string answer;
  double time = 0.0;
};

struct LondonRecord {
  std::string surveyee;
  SurveyGroup group = SurveyGroup::kcl;
  std::array<TimedAnswer, 4> estimates;  ///< Q1..Q4 walking-time estimates
  std::array<CountAnswer, 4> counts;     ///< Q5..Q8
  std::array<StationAnswer, 4> stations; ///< Q9..Q12 interchange stations
  Residence metro_residence = Residence::never;
  Residence london_residence = Residence::never;

  /// Response time for question 1..12.
  double response_time(int question) const;
};

/// Exact header of the London survey CSV.
std::string_view london_csv_header();

std::vector<LondonRecord> parse_london_survey(std::string_view text);
std::string serialize_london_survey(const std::vector<LondonRecord>& records);

/// Walking-time estimates from an online map for Q1..Q4, minutes.
inline constexpr std::array<int, 4> kEstimateXis{20, 17, 32, 45};

/// Expected answers of Q5..Q12.
std::array<std::string, 8> london_answer_key();

struct QuestionStats {
  double mean = 0.0;       ///< mean answer (Q1..Q8)
  double min = 0.0;
  double max = 0.0;
  double mean_time = 0.0;  ///< mean response time, seconds
  int respondents = 0;
};

/// Answer mean/range and mean response time. Questions 9..12 have text
/// answers; their mean/min/max are left at zero.
QuestionStats question_stats(const std::vector<LondonRecord>& records, int question);

/// Number of answers to Q5..Q12 that match london_answer_key().
int correct_answers(const std::vector<LondonRecord>& records, int question);

/// A manual category assignment for one answer value of one question.
struct CategoryOverride {
  int question = 0;
  int answer = 0;
  AnswerCategory category = AnswerCategory::wild_guess;
};
using CategoryOverrides = std::vector<CategoryOverride>;

/// CSV with header `question,answer,category`.
CategoryOverrides parse_overrides(std::string_view text);
CategoryOverrides read_overrides(const std::filesystem::path& path);

/// Category of an estimate (question 1..4) after applying overrides.
AnswerCategory categorize_estimate(int question, int answer, int xi, const CategoryOverrides& overrides);

struct CategoryDeviation {
  std::string surveyee;
  int answer = 0;
  AnswerCategory strict;
  AnswerCategory applied;
};

struct CategoryBreakdown {
  CategoryCounts strict{};   ///< pure banding
  CategoryCounts applied{};  ///< with overrides
  std::vector<CategoryDeviation> deviations;
};

CategoryBreakdown categorize_question(const std::vector<LondonRecord>& records, int question, int xi,
                                      const CategoryOverrides& overrides = {});

/// Mean of the London benefit-table entries of the record's Q1..Q4 categories.
double surveyee_benefit(const LondonRecord& record, const std::array<int, 4>& xis,
                        const DivergenceSpec& measure, const CategoryOverrides& overrides = {});

/// Average benefit of the categorised answers divided by the mean response time.
double question_cost_benefit(const std::vector<LondonRecord>& records, int question, int xi,
                             const DivergenceSpec& measure, const CategoryOverrides& overrides = {});

// ---------------------------------------------------------------------------
// Volume visualization survey

enum class Grade { most_appropriate, acceptable, incorrect };
std::string_view to_string(Grade g);

/// "(D)" is a most-appropriate answer, "(a)" acceptable, "c" or "D" incorrect.
struct GradedAnswer {
  char letter = 'A';  ///< as written (case carries meaning inside brackets)
  Grade grade = Grade::incorrect;

  static GradedAnswer parse(std::string_view token);
  std::string token() const;      ///< "(D)", "(a)", "c"
  std::string tally_key() const;  ///< letter as written: "D", "a", "c"
};

/// Self-assessed knowledge on a 1..5 scale; "4-5" is kept as a range.
struct RankRange {
  int lo = 1;
  int hi = 1;

  static RankRange parse(std::string_view token);
  std::string token() const;
};

struct VolVisRecord {
  std::string surveyee;
  std::array<GradedAnswer, 8> answers;
  RankRange imaging_knowledge;    ///< Q9
  RankRange rendering_knowledge;  ///< Q10
};

std::string_view volvis_csv_header();
std::vector<VolVisRecord> parse_volvis_survey(std::string_view text);
std::string serialize_volvis_survey(const std::vector<VolVisRecord>& records);

struct VolVisQuestionSummary {
  std::map<std::string, int> tally;  ///< keyed by GradedAnswer::tally_key()
  std::array<int, 3> grades{};       ///< indexed by Grade
};

std::array<VolVisQuestionSummary, 8> volvis_summary(const std::vector<VolVisRecord>& records);

// ---------------------------------------------------------------------------

enum class SurveyKind { london, volvis };
SurveyKind parse_survey_kind(std::string_view text);

using SurveyRecords = std::variant<std::vector<LondonRecord>, std::vector<VolVisRecord>>;

/// Reads and validates a survey file. Malformed rows name the line and
/// column; duplicate surveyee ids and files without records are rejected.
SurveyRecords parse_survey(const std::filesystem::path& path, SurveyKind kind);

}  // namespace visbench
