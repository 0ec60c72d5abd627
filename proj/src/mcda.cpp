#include "visbench/mcda.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench::mcda {

namespace {

constexpr const char* kEliminatedRow = "eliminated_after";

// 1-based criterion numbers of the first and last criterion of each group.
std::pair<std::size_t, std::size_t> group_span(const CriteriaTable& t, StageGroup g) {
  std::size_t first = 0;
  std::size_t last = 0;
  for (std::size_t i = 0; i < t.criteria.size(); ++i) {
    if (t.criteria[i].stage != g) continue;
    if (first == 0) first = i + 1;
    last = i + 1;
  }
  return {first, last};
}

}  // namespace

std::string_view to_string(Importance i) {
  switch (i) {
    case Importance::critical: return "critical";
    case Importance::important: return "important";
    case Importance::helpful: return "helpful";
  }
  return "?";
}

Importance parse_importance(std::string_view text) {
  if (text == "critical") return Importance::critical;
  if (text == "important") return Importance::important;
  if (text == "helpful") return Importance::helpful;
  throw validation_error("unknown importance '" + std::string(text) + "'");
}

std::string_view to_string(StageGroup g) {
  switch (g) {
    case StageGroup::boundedness: return "1";
    case StageGroup::conceptual: return "2-5";
    case StageGroup::case_studies: return "6-9";
  }
  return "?";
}

StageGroup parse_stage_group(std::string_view text) {
  if (text == "1") return StageGroup::boundedness;
  if (text == "2-5") return StageGroup::conceptual;
  if (text == "6-9") return StageGroup::case_studies;
  throw validation_error("unknown stage group '" + std::string(text) + "' (expected 1, 2-5 or 6-9)");
}

void CriteriaTable::validate() const {
  if (measures.empty()) throw validation_error("criteria table has no measures");
  if (criteria.empty()) throw validation_error("criteria table has no criteria");
  if (scores.size() != criteria.size()) throw validation_error("score rows do not match criteria");
  if (eliminated_after.size() != measures.size()) throw validation_error("elimination markers do not match measures");
  for (std::size_t c = 1; c < criteria.size(); ++c) {
    if (criteria[c].stage < criteria[c - 1].stage) throw validation_error("criteria stages must be non-decreasing");
  }
  for (std::size_t c = 0; c < criteria.size(); ++c) {
    if (scores[c].size() != measures.size()) {
      throw validation_error("criterion '" + criteria[c].name + "' has the wrong number of scores");
    }
    for (std::size_t m = 0; m < measures.size(); ++m) {
      const ScoreCell& cell = scores[c][m];
      const std::string where = "criterion '" + criteria[c].name + "', measure '" + measures[m] + "'";
      if (cell.score && (*cell.score < 0 || *cell.score > 5)) throw validation_error(where + ": score outside [0, 5]");
      if (cell.comparison_only && !cell.score) throw validation_error(where + ": comparison-only cell without score");
      if (active(m, criteria[c].stage)) {
        if (!cell.score || cell.comparison_only) throw validation_error(where + ": missing score");
      } else if (cell.score && !cell.comparison_only) {
        throw validation_error(where + ": scored after elimination");
      }
    }
  }
}

bool CriteriaTable::active(std::size_t measure, StageGroup group) const {
  const auto& e = eliminated_after.at(measure);
  return !e || *e >= group;
}

StageRange parse_stage_range(const CriteriaTable& t, std::string_view text) {
  const std::string s = csv::trim(text);
  std::size_t from = 0;
  std::size_t to = 0;
  try {
    if (const auto dash = s.find('-'); dash != std::string::npos) {
      from = static_cast<std::size_t>(csv::parse_int(s.substr(0, dash), "stage"));
      to = static_cast<std::size_t>(csv::parse_int(s.substr(dash + 1), "stage"));
    } else {
      from = to = static_cast<std::size_t>(csv::parse_int(s, "stage"));
    }
  } catch (const validation_error&) {
    throw validation_error("unknown stage '" + s + "'");
  }
  std::optional<StageGroup> first;
  std::optional<StageGroup> last;
  for (StageGroup g : {StageGroup::boundedness, StageGroup::conceptual, StageGroup::case_studies}) {
    const auto [a, b] = group_span(t, g);
    if (a == 0) continue;
    if (a == from) first = g;
    if (b == to) last = g;
  }
  if (!first || !last || *first > *last) throw validation_error("unknown stage '" + s + "'");
  return {*first, *last};
}

std::string stage_range_label(const CriteriaTable& t, const StageRange& range) {
  const auto from = group_span(t, range.first).first;
  const auto to = group_span(t, range.last).second;
  return from == to ? std::to_string(from) : std::to_string(from) + "-" + std::to_string(to);
}

CriteriaTable reference_table() {
  CriteriaTable t;
  t.measures = {"kl@0.3", "js", "H(P|Q)", "new:1", "new:2", "ncm:1", "ncm:2", "mink:2", "mink:200"};
  using I = Importance;
  using G = StageGroup;
  t.criteria = {{"Boundedness", I::critical, G::boundedness},
                {"Number of PMFs", I::important, G::conceptual},
                {"Entropic measures", I::important, G::conceptual},
                {"Curve shapes", I::helpful, G::conceptual},
                {"Curve shapes", I::helpful, G::conceptual},
                {"Scenario: good and bad", I::helpful, G::case_studies},
                {"Scenario: A, B, C, D", I::helpful, G::case_studies},
                {"Case study: volume visualization", I::important, G::case_studies},
                {"Case study: London underground", I::important, G::case_studies}};
  // -1: absent; values >= 10 are comparison-only (score + 10).
  const int rows[9][9] = {{0, 5, 5, 5, 5, 5, 5, 3, 3},
                          {15, 5, 2, 5, 5, 5, 5, 5, 5},
                          {15, 5, 5, 5, 5, 5, 5, 1, 1},
                          {15, 5, 1, 2, 4, 2, 4, 3, 3},
                          {15, 4, 1, 3, 5, 3, 5, 2, 3},
                          {-1, 3, -1, 5, 4, 5, 4, -1, -1},
                          {-1, 4, -1, 5, 3, 2, 1, -1, -1},
                          {-1, 5, -1, 1, 5, 5, 5, -1, -1},
                          {-1, 3, -1, 1, 5, 3, 3, -1, -1}};
  for (const auto& row : rows) {
    std::vector<ScoreCell> cells;
    for (int v : row) {
      if (v < 0) {
        cells.push_back({});
      } else if (v >= 10) {
        cells.push_back({v - 10, true});
      } else {
        cells.push_back({v, false});
      }
    }
    t.scores.push_back(std::move(cells));
  }
  t.eliminated_after = {G::boundedness, std::nullopt, G::conceptual, std::nullopt, std::nullopt,
                        std::nullopt,   std::nullopt, G::conceptual, G::conceptual};
  t.validate();
  return t;
}

std::vector<std::optional<int>> stage_sums(const CriteriaTable& t, const StageRange& range) {
  t.validate();
  std::vector<std::optional<int>> sums(t.measures.size());
  for (std::size_t m = 0; m < t.measures.size(); ++m) {
    if (!t.active(m, range.last)) continue;
    int sum = 0;
    for (std::size_t c = 0; c < t.criteria.size(); ++c) {
      const auto stage = t.criteria[c].stage;
      if (stage < range.first || stage > range.last) continue;
      sum += *t.scores[c][m].score;
    }
    sums[m] = sum;
  }
  return sums;
}

ImportanceWeights ImportanceWeights::unit() {
  return {{{Importance::critical, 1.0}, {Importance::important, 1.0}, {Importance::helpful, 1.0}}};
}

ImportanceWeights ImportanceWeights::parse(std::string_view text) {
  ImportanceWeights w;
  for (const auto& item : csv::split_line(text)) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw validation_error("weight '" + item + "' is not importance=value");
    const Importance i = parse_importance(csv::trim(item.substr(0, eq)));
    const double v = csv::parse_double(item.substr(eq + 1), "weight");
    if (!(v > 0.0) || !std::isfinite(v)) throw validation_error("weights must be positive");
    if (!w.weight.emplace(i, v).second) throw validation_error("weight given twice for " + std::string(to_string(i)));
  }
  return w;
}

std::vector<RankedMeasure> weighted_rank(const CriteriaTable& t, const ImportanceWeights& weights,
                                         const StageRange& range) {
  t.validate();
  for (const auto& [importance, value] : weights.weight) {
    if (!(value > 0.0)) throw validation_error("weights must be positive");
  }
  std::vector<RankedMeasure> ranked;
  for (std::size_t m = 0; m < t.measures.size(); ++m) {
    if (!t.active(m, range.last)) continue;
    double score = 0.0;
    for (std::size_t c = 0; c < t.criteria.size(); ++c) {
      const auto& crit = t.criteria[c];
      if (crit.stage < range.first || crit.stage > range.last) continue;
      const auto it = weights.weight.find(crit.importance);
      if (it == weights.weight.end()) {
        throw validation_error("no weight given for importance '" + std::string(to_string(crit.importance)) + "'");
      }
      score += it->second * *t.scores[c][m].score;
    }
    ranked.push_back({t.measures[m], score});
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const RankedMeasure& a, const RankedMeasure& b) { return a.score > b.score; });
  return ranked;
}

CriteriaTable parse_criteria_table(std::string_view text) {
  const csv::Document doc = csv::parse(text);
  if (doc.header.size() < 4 || doc.header[0] != "criterion" || doc.header[1] != "importance" ||
      doc.header[2] != "stage") {
    throw validation_error("criteria table header must start with 'criterion,importance,stage' and list measures");
  }
  CriteriaTable t;
  t.measures.assign(doc.header.begin() + 3, doc.header.end());
  t.eliminated_after.assign(t.measures.size(), std::nullopt);
  bool saw_elimination = false;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    const std::string where = "line " + std::to_string(doc.line_numbers[r]);
    if (row.size() != doc.header.size()) throw validation_error(where + ": wrong number of columns");
    if (saw_elimination) throw validation_error(where + ": rows after '" + std::string(kEliminatedRow) + "'");
    if (csv::trim(row[0]) == kEliminatedRow) {
      saw_elimination = true;
      for (std::size_t m = 0; m < t.measures.size(); ++m) {
        const std::string v = csv::trim(row[m + 3]);
        if (v.empty()) continue;
        try {
          t.eliminated_after[m] = parse_stage_group(v);
        } catch (const validation_error& e) {
          throw validation_error(where + ", column '" + t.measures[m] + "': " + e.what());
        }
      }
      continue;
    }
    Criterion c;
    c.name = csv::trim(row[0]);
    try {
      c.importance = parse_importance(csv::trim(row[1]));
      c.stage = parse_stage_group(csv::trim(row[2]));
    } catch (const validation_error& e) {
      throw validation_error(where + ": " + e.what());
    }
    std::vector<ScoreCell> cells;
    for (std::size_t m = 0; m < t.measures.size(); ++m) {
      std::string v = csv::trim(row[m + 3]);
      ScoreCell cell;
      if (!v.empty()) {
        if (v.back() == '*') {
          cell.comparison_only = true;
          v.pop_back();
        }
        cell.score = static_cast<int>(csv::parse_int(v, where + ", column '" + t.measures[m] + "'"));
      }
      cells.push_back(cell);
    }
    t.criteria.push_back(std::move(c));
    t.scores.push_back(std::move(cells));
  }
  t.validate();
  return t;
}

CriteriaTable read_criteria_table(const std::filesystem::path& path) {
  const std::string text = csv::read_file(path);
  try {
    return parse_criteria_table(text);
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

std::string serialize_criteria_table(const CriteriaTable& t) {
  std::ostringstream out;
  csv::Row header{"criterion", "importance", "stage"};
  header.insert(header.end(), t.measures.begin(), t.measures.end());
  out << csv::join(header) << '\n';
  for (std::size_t c = 0; c < t.criteria.size(); ++c) {
    csv::Row row{t.criteria[c].name, std::string(to_string(t.criteria[c].importance)),
                 std::string(to_string(t.criteria[c].stage))};
    for (const auto& cell : t.scores[c]) {
      row.push_back(cell.score ? std::to_string(*cell.score) + (cell.comparison_only ? "*" : "") : "");
    }
    out << csv::join(row) << '\n';
  }
  csv::Row elim{kEliminatedRow, "", ""};
  for (const auto& e : t.eliminated_after) elim.push_back(e ? std::string(to_string(*e)) : "");
  out << csv::join(elim) << '\n';
  return out.str();
}

}  // namespace visbench::mcda
