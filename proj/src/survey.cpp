#include "visbench/survey.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench {

namespace {

constexpr std::string_view kLondonHeader =
    "surveyee,group,q1_ans,q1_t,q2_ans,q2_t,q3_ans,q3_t,q4_ans,q4_t,"
    "q5_t1,q5_t2,q5_ans,q5_t,q6_t1,q6_t2,q6_ans,q6_t,q7_t1,q7_t2,q7_ans,q7_t,"
    "q8_t1,q8_t2,q8_ans,q8_t,q9_ans,q9_t,q10_ans,q10_t,q11_ans,q11_t,q12_ans,q12_t,"
    "metro_res,london_res";

constexpr std::string_view kVolVisHeader = "surveyee,q1,q2,q3,q4,q5,q6,q7,q8,q9_rank,q10_rank";

constexpr std::array<std::string_view, 6> kResidenceTags{"never", "days", "weeks", "months", "1-5yr", ">5yr"};

std::string fixed2(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, 2);
  (void)ec;
  return std::string(buf, ptr);
}

// Field access with row/column context for error messages.
class RowReader {
 public:
  RowReader(const csv::Row& header, const csv::Row& row, std::size_t line)
      : header_(header), row_(row), line_(line) {}

  std::string where(std::size_t col) const {
    return "line " + std::to_string(line_) + ", column '" + header_[col] + "'";
  }

  std::string text(std::size_t col) const {
    const std::string value = csv::trim(row_[col]);
    if (value.empty()) throw validation_error(where(col) + ": empty value");
    return value;
  }

  double time(std::size_t col) const {
    const double t = csv::parse_double(row_[col], where(col));
    if (!(t > 0.0)) throw validation_error(where(col) + ": time must be positive");
    return t;
  }

  int answer(std::size_t col) const {
    const long long a = csv::parse_int(row_[col], where(col));
    if (a < 1 || a > 100000) throw validation_error(where(col) + ": answer must be a positive integer");
    return static_cast<int>(a);
  }

  template <typename F>
  auto wrap(std::size_t col, F&& f) const {
    try {
      return f(csv::trim(row_[col]));
    } catch (const validation_error& e) {
      throw validation_error(where(col) + ": " + e.what());
    }
  }

 private:
  const csv::Row& header_;
  const csv::Row& row_;
  std::size_t line_;
};

Residence parse_residence(std::string_view text) {
  const auto it = std::find(kResidenceTags.begin(), kResidenceTags.end(), text);
  if (it == kResidenceTags.end()) {
    throw validation_error("unknown residence tag '" + std::string(text) +
                           "' (expected never, days, weeks, months, 1-5yr, >5yr)");
  }
  return static_cast<Residence>(it - kResidenceTags.begin());
}

csv::Document parse_with_header(std::string_view text, std::string_view expected_header) {
  csv::Document doc = csv::parse(text);
  if (csv::join(doc.header) != expected_header) {
    throw validation_error("unexpected header; expected '" + std::string(expected_header) + "'");
  }
  if (doc.rows.empty()) throw validation_error("survey file has no records");
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    if (doc.rows[r].size() != doc.header.size()) {
      throw validation_error("line " + std::to_string(doc.line_numbers[r]) + ": expected " +
                             std::to_string(doc.header.size()) + " columns, found " +
                             std::to_string(doc.rows[r].size()));
    }
  }
  return doc;
}

void check_unique(std::set<std::string>& seen, const std::string& id, std::size_t line) {
  if (!seen.insert(id).second) {
    throw validation_error("line " + std::to_string(line) + ": duplicate surveyee id '" + id + "'");
  }
}

void check_question(int question, int lo, int hi) {
  if (question < lo || question > hi) {
    throw validation_error("question must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
}

}  // namespace

std::string_view to_string(SurveyGroup g) { return g == SurveyGroup::kcl ? "KCL" : "OU"; }

std::string_view to_string(Residence r) { return kResidenceTags[static_cast<std::size_t>(r)]; }

double LondonRecord::response_time(int question) const {
  check_question(question, 1, 12);
  if (question <= 4) return estimates[static_cast<std::size_t>(question - 1)].time;
  if (question <= 8) return counts[static_cast<std::size_t>(question - 5)].time;
  return stations[static_cast<std::size_t>(question - 9)].time;
}

std::string_view london_csv_header() { return kLondonHeader; }

std::vector<LondonRecord> parse_london_survey(std::string_view text) {
  const csv::Document doc = parse_with_header(text, kLondonHeader);
  std::vector<LondonRecord> records;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const RowReader in(doc.header, doc.rows[r], doc.line_numbers[r]);
    LondonRecord rec;
    rec.surveyee = in.text(0);
    check_unique(seen, rec.surveyee, doc.line_numbers[r]);
    const std::string group = in.text(1);
    if (group == "KCL") {
      rec.group = SurveyGroup::kcl;
    } else if (group == "OU") {
      rec.group = SurveyGroup::ou;
    } else {
      throw validation_error(in.where(1) + ": group must be KCL or OU");
    }
    std::size_t col = 2;
    for (auto& e : rec.estimates) {
      e.answer = in.answer(col++);
      e.time = in.time(col++);
    }
    for (auto& c : rec.counts) {
      c.lookup_time1 = in.time(col++);
      c.lookup_time2 = in.time(col++);
      c.answer = in.answer(col++);
      c.time = in.time(col++);
    }
    for (auto& s : rec.stations) {
      s.answer = in.text(col++);
      s.time = in.time(col++);
    }
    rec.metro_residence = in.wrap(col++, [](const std::string& v) { return parse_residence(v); });
    rec.london_residence = in.wrap(col++, [](const std::string& v) { return parse_residence(v); });
    records.push_back(std::move(rec));
  }
  return records;
}

std::string serialize_london_survey(const std::vector<LondonRecord>& records) {
  std::ostringstream out;
  out << kLondonHeader << '\n';
  for (const auto& rec : records) {
    csv::Row row{rec.surveyee, std::string(to_string(rec.group))};
    for (const auto& e : rec.estimates) {
      row.push_back(std::to_string(e.answer));
      row.push_back(fixed2(e.time));
    }
    for (const auto& c : rec.counts) {
      row.push_back(fixed2(c.lookup_time1));
      row.push_back(fixed2(c.lookup_time2));
      row.push_back(std::to_string(c.answer));
      row.push_back(fixed2(c.time));
    }
    for (const auto& s : rec.stations) {
      row.push_back(s.answer);
      row.push_back(fixed2(s.time));
    }
    row.emplace_back(to_string(rec.metro_residence));
    row.emplace_back(to_string(rec.london_residence));
    out << csv::join(row) << '\n';
  }
  return out.str();
}

std::array<std::string, 8> london_answer_key() { return {"10", "9", "7", "6", "P", "LB", "WP", "FP"}; }

QuestionStats question_stats(const std::vector<LondonRecord>& records, int question) {
  check_question(question, 1, 12);
  if (records.empty()) throw validation_error("question statistics need at least one record");
  QuestionStats s;
  s.respondents = static_cast<int>(records.size());
  double answer_sum = 0.0;
  double time_sum = 0.0;
  bool first = true;
  for (const auto& rec : records) {
    time_sum += rec.response_time(question);
    if (question > 8) continue;
    const double a = question <= 4 ? rec.estimates[static_cast<std::size_t>(question - 1)].answer
                                   : rec.counts[static_cast<std::size_t>(question - 5)].answer;
    answer_sum += a;
    s.min = first ? a : std::min(s.min, a);
    s.max = first ? a : std::max(s.max, a);
    first = false;
  }
  const double n = static_cast<double>(records.size());
  if (question <= 8) s.mean = answer_sum / n;
  s.mean_time = time_sum / n;
  return s;
}

int correct_answers(const std::vector<LondonRecord>& records, int question) {
  check_question(question, 5, 12);
  const auto key = london_answer_key()[static_cast<std::size_t>(question - 5)];
  int correct = 0;
  for (const auto& rec : records) {
    const std::string given = question <= 8 ? std::to_string(rec.counts[static_cast<std::size_t>(question - 5)].answer)
                                            : rec.stations[static_cast<std::size_t>(question - 9)].answer;
    if (given == key) ++correct;
  }
  return correct;
}

CategoryOverrides parse_overrides(std::string_view text) {
  const csv::Document doc = csv::parse(text);
  if (doc.header != csv::Row{"question", "answer", "category"}) {
    throw validation_error("overrides header must be 'question,answer,category'");
  }
  CategoryOverrides out;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    const std::string where = "line " + std::to_string(doc.line_numbers[r]);
    if (row.size() != 3) throw validation_error(where + ": expected 3 columns");
    CategoryOverride o;
    o.question = static_cast<int>(csv::parse_int(row[0], where + " column 'question'"));
    if (o.question < 1 || o.question > 4) throw validation_error(where + ": question must be 1..4");
    o.answer = static_cast<int>(csv::parse_int(row[1], where + " column 'answer'"));
    try {
      o.category = parse_category(csv::trim(row[2]));
    } catch (const validation_error& e) {
      throw validation_error(where + " column 'category': " + e.what());
    }
    for (const auto& existing : out) {
      if (existing.question == o.question && existing.answer == o.answer) {
        throw validation_error(where + ": duplicate override");
      }
    }
    out.push_back(o);
  }
  return out;
}

CategoryOverrides read_overrides(const std::filesystem::path& path) {
  const std::string text = csv::read_file(path);
  try {
    return parse_overrides(text);
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

AnswerCategory categorize_estimate(int question, int answer, int xi, const CategoryOverrides& overrides) {
  check_question(question, 1, 4);
  for (const auto& o : overrides) {
    if (o.question == question && o.answer == answer) return o.category;
  }
  return categorize_answer(answer, LondonPmfSpec{xi, 256});
}

CategoryBreakdown categorize_question(const std::vector<LondonRecord>& records, int question, int xi,
                                      const CategoryOverrides& overrides) {
  check_question(question, 1, 4);
  CategoryBreakdown b;
  for (const auto& rec : records) {
    const int answer = rec.estimates[static_cast<std::size_t>(question - 1)].answer;
    const AnswerCategory strict = categorize_answer(answer, LondonPmfSpec{xi, 256});
    const AnswerCategory applied = categorize_estimate(question, answer, xi, overrides);
    ++b.strict[static_cast<std::size_t>(strict)];
    ++b.applied[static_cast<std::size_t>(applied)];
    if (strict != applied) b.deviations.push_back({rec.surveyee, answer, strict, applied});
  }
  return b;
}

double surveyee_benefit(const LondonRecord& record, const std::array<int, 4>& xis,
                        const DivergenceSpec& measure, const CategoryOverrides& overrides) {
  double sum = 0.0;
  for (int q = 1; q <= 4; ++q) {
    const int xi = xis[static_cast<std::size_t>(q - 1)];
    const AnswerCategory c =
        categorize_estimate(q, record.estimates[static_cast<std::size_t>(q - 1)].answer, xi, overrides);
    CategoryCounts counts{};
    counts[static_cast<std::size_t>(c)] = 1;
    sum += per_question_benefit(counts, LondonPmfSpec{xi, 256}, measure);
  }
  return sum / 4.0;
}

double question_cost_benefit(const std::vector<LondonRecord>& records, int question, int xi,
                             const DivergenceSpec& measure, const CategoryOverrides& overrides) {
  const CategoryBreakdown b = categorize_question(records, question, xi, overrides);
  const double benefit = per_question_benefit(b.applied, LondonPmfSpec{xi, 256}, measure);
  return cost_benefit_ratio(benefit, question_stats(records, question).mean_time);
}

// ---------------------------------------------------------------------------

std::string_view to_string(Grade g) {
  switch (g) {
    case Grade::most_appropriate: return "most appropriate";
    case Grade::acceptable: return "acceptable";
    case Grade::incorrect: return "incorrect";
  }
  return "?";
}

GradedAnswer GradedAnswer::parse(std::string_view token) {
  const std::string t = csv::trim(token);
  const bool bracketed = t.size() == 3 && t.front() == '(' && t.back() == ')';
  if (!bracketed && t.size() != 1) throw validation_error("answer '" + t + "' is not a letter or (letter)");
  const char letter = bracketed ? t[1] : t[0];
  const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(letter)));
  if (upper < 'A' || upper > 'D') throw validation_error("answer letter '" + t + "' not in A..D");
  GradedAnswer a;
  a.letter = letter;
  if (!bracketed) {
    a.grade = Grade::incorrect;
  } else {
    a.grade = letter == upper ? Grade::most_appropriate : Grade::acceptable;
  }
  return a;
}

std::string GradedAnswer::token() const {
  return grade == Grade::incorrect ? std::string(1, letter) : "(" + std::string(1, letter) + ")";
}

std::string GradedAnswer::tally_key() const { return std::string(1, letter); }

RankRange RankRange::parse(std::string_view token) {
  const std::string t = csv::trim(token);
  RankRange r;
  if (const auto dash = t.find('-'); dash != std::string::npos) {
    r.lo = static_cast<int>(csv::parse_int(t.substr(0, dash), "rank"));
    r.hi = static_cast<int>(csv::parse_int(t.substr(dash + 1), "rank"));
  } else {
    r.lo = r.hi = static_cast<int>(csv::parse_int(t, "rank"));
  }
  if (r.lo < 1 || r.hi > 5 || r.lo > r.hi) throw validation_error("rank '" + t + "' outside 1..5");
  return r;
}

std::string RankRange::token() const {
  return lo == hi ? std::to_string(lo) : std::to_string(lo) + "-" + std::to_string(hi);
}

std::string_view volvis_csv_header() { return kVolVisHeader; }

std::vector<VolVisRecord> parse_volvis_survey(std::string_view text) {
  const csv::Document doc = parse_with_header(text, kVolVisHeader);
  std::vector<VolVisRecord> records;
  std::set<std::string> seen;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const RowReader in(doc.header, doc.rows[r], doc.line_numbers[r]);
    VolVisRecord rec;
    rec.surveyee = in.text(0);
    check_unique(seen, rec.surveyee, doc.line_numbers[r]);
    for (std::size_t q = 0; q < 8; ++q) {
      rec.answers[q] = in.wrap(q + 1, [](const std::string& v) { return GradedAnswer::parse(v); });
    }
    rec.imaging_knowledge = in.wrap(9, [](const std::string& v) { return RankRange::parse(v); });
    rec.rendering_knowledge = in.wrap(10, [](const std::string& v) { return RankRange::parse(v); });
    records.push_back(std::move(rec));
  }
  return records;
}

std::string serialize_volvis_survey(const std::vector<VolVisRecord>& records) {
  std::ostringstream out;
  out << kVolVisHeader << '\n';
  for (const auto& rec : records) {
    csv::Row row{rec.surveyee};
    for (const auto& a : rec.answers) row.push_back(a.token());
    row.push_back(rec.imaging_knowledge.token());
    row.push_back(rec.rendering_knowledge.token());
    out << csv::join(row) << '\n';
  }
  return out.str();
}

std::array<VolVisQuestionSummary, 8> volvis_summary(const std::vector<VolVisRecord>& records) {
  if (records.empty()) throw validation_error("volvis summary needs at least one record");
  std::array<VolVisQuestionSummary, 8> out{};
  for (const auto& rec : records) {
    for (std::size_t q = 0; q < 8; ++q) {
      ++out[q].tally[rec.answers[q].tally_key()];
      ++out[q].grades[static_cast<std::size_t>(rec.answers[q].grade)];
    }
  }
  return out;
}

SurveyKind parse_survey_kind(std::string_view text) {
  if (text == "london") return SurveyKind::london;
  if (text == "volvis") return SurveyKind::volvis;
  throw validation_error("survey kind must be 'london' or 'volvis'");
}

SurveyRecords parse_survey(const std::filesystem::path& path, SurveyKind kind) {
  const std::string text = csv::read_file(path);
  try {
    if (kind == SurveyKind::london) return parse_london_survey(text);
    return parse_volvis_survey(text);
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

}  // namespace visbench
