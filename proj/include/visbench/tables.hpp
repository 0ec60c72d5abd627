#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "visbench/benefit.hpp"
#include "visbench/grid_paths.hpp"
#include "visbench/mcda.hpp"
#include "visbench/measures.hpp"
#include "visbench/report.hpp"
#include "visbench/scenarios.hpp"
#include "visbench/survey.hpp"

namespace visbench::tables {

/// Entropy and maximum entropy of each PMF.
report::Table entropy_table(const std::vector<NamedPmf>& pmfs);

/// One row per measure with D(p || q); with `decompose`, one stacked
/// per-letter table per measure follows.
std::vector<report::Table> divergence_report(const Pmf& p, const Pmf& q, const std::vector<DivergenceSpec>& measures,
                                             bool decompose);

/// AC, PD, benefit and, when the manifest has a cost, the cost-benefit ratio.
report::Table benefit_table(const CaseManifest& manifest, const std::vector<DivergenceSpec>& measures);

struct ScenarioOptions {
  std::vector<DivergenceSpec> measures;  ///< empty: the five bounded candidates
  int xi = 20;                           ///< London peak
};

/// Tables for one built-in scenario; throws for unknown names.
std::vector<report::Table> scenario_report(std::string_view name, const ScenarioOptions& options = {});

/// Every PMF a scenario is built from.
std::vector<NamedPmf> scenario_pmfs(std::string_view name, int xi = 20);

std::vector<report::Table> london_survey_report(const std::vector<LondonRecord>& records,
                                                const CategoryOverrides& overrides,
                                                const std::vector<DivergenceSpec>& measures);

std::vector<report::Table> volvis_survey_report(const std::vector<VolVisRecord>& records);

std::vector<report::Table> mcda_report(const mcda::CriteriaTable& table,
                                       const std::optional<mcda::ImportanceWeights>& weights);

std::vector<report::Table> grid_paths_report(const GridPathResult& result, bool list_paths);

}  // namespace visbench::tables
