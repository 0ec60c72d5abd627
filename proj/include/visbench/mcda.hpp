#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace visbench::mcda {

enum class Importance { critical, important, helpful };
std::string_view to_string(Importance i);
Importance parse_importance(std::string_view text);

/// Criteria are evaluated in three consecutive groups; measures can be
/// eliminated after any group.
enum class StageGroup { boundedness = 0, conceptual = 1, case_studies = 2 };
std::string_view to_string(StageGroup g);  ///< "1", "2-5", "6-9"
StageGroup parse_stage_group(std::string_view text);

struct Criterion {
  std::string name;
  Importance importance = Importance::helpful;
  StageGroup stage = StageGroup::boundedness;
};

/// A score in [0, 5]. Comparison-only cells are rendered but never summed or ranked.
struct ScoreCell {
  std::optional<int> score;
  bool comparison_only = false;
};

struct CriteriaTable {
  std::vector<std::string> measures;
  std::vector<Criterion> criteria;
  std::vector<std::vector<ScoreCell>> scores;                 ///< [criterion][measure]
  std::vector<std::optional<StageGroup>> eliminated_after;    ///< per measure

  /// Scores within [0, 5]; every measure still in play has a counted score;
  /// after elimination only comparison-only cells may remain; stage groups
  /// are contiguous and non-decreasing.
  void validate() const;

  /// True when the measure has not been eliminated before `group`.
  bool active(std::size_t measure, StageGroup group) const;
};

/// Inclusive range of stage groups, written with criterion numbers, e.g.
/// "1", "2-5", "6-9", "1-5", "1-9". Must align with group boundaries.
struct StageRange {
  StageGroup first = StageGroup::boundedness;
  StageGroup last = StageGroup::case_studies;
};

StageRange parse_stage_range(const CriteriaTable& t, std::string_view text);
std::string stage_range_label(const CriteriaTable& t, const StageRange& range);

/// Published scores of the nine criteria for nine measure columns.
CriteriaTable reference_table();

/// Per-measure sums over the range; nullopt for measures eliminated before
/// the range's last group.
std::vector<std::optional<int>> stage_sums(const CriteriaTable& t, const StageRange& range);

struct ImportanceWeights {
  std::map<Importance, double> weight;

  static ImportanceWeights unit();
  /// "critical=4,important=2,helpful=1"
  static ImportanceWeights parse(std::string_view text);
};

struct RankedMeasure {
  std::string measure;
  double score = 0.0;
};

/// Measures active through the range, by descending weighted sum; ties keep
/// column order. A missing weight for an importance used in the range, or a
/// non-positive weight, is rejected.
std::vector<RankedMeasure> weighted_rank(const CriteriaTable& t, const ImportanceWeights& weights,
                                         const StageRange& range);

/// CSV: `criterion,importance,stage,<measure>...`; blank cells for absent
/// scores, a trailing `*` marks comparison-only scores, and a final row
/// `eliminated_after,,,<group or blank>...`.
CriteriaTable parse_criteria_table(std::string_view text);
CriteriaTable read_criteria_table(const std::filesystem::path& path);
std::string serialize_criteria_table(const CriteriaTable& t);

}  // namespace visbench::mcda
