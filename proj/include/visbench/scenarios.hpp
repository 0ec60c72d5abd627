#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "visbench/benefit.hpp"
#include "visbench/measures.hpp"
#include "visbench/pmf.hpp"

namespace visbench {

/// A PMF given by integer numerators over a common denominator, so that the
/// unit sum can be checked exactly.
struct ExactPmf {
  std::vector<std::string> labels;
  std::vector<std::int64_t> numerators;
  std::int64_t denominator = 1;

  bool unit_sum() const;
  Pmf to_pmf() const;
};

struct NamedPmf {
  std::string name;
  Pmf pmf;
};

struct ScenarioUser {
  std::string label;
  Pmf decision;          ///< reconstruction over the ground-truth alphabet
  std::size_t process;   ///< index into UserScenario::processes
};

/// Ground truth, the lossy process outputs, and the users reconstructing the
/// ground truth from those outputs.
struct UserScenario {
  std::string name;
  Pmf ground_truth;
  std::vector<NamedPmf> processes;
  std::vector<ScenarioUser> users;

  /// D(user || ground truth) for every user.
  std::vector<Decomposition> divergences(const DivergenceSpec& spec) const;
};

/// Two states good/bad, P = {0.8, 0.2}, a biased process always reporting
/// bad, and users LD, FD, RG, UC, OC.
UserScenario good_bad_scenario();

/// Four values A..D, P = {0.1, 0.4, 0.2, 0.3}, aggregated to AB/CD by a
/// correct and a biased process; users CG, CU, CB (correct) and BG, BS, BM
/// (biased).
UserScenario abcd_scenario();

/// Rows × measure columns of real values.
struct MeasureTable {
  std::vector<std::string> rows;
  std::vector<DivergenceSpec> measures;
  std::vector<std::vector<double>> values;  ///< values[row][measure]

  double at(std::size_t row, std::size_t measure) const { return values.at(row).at(measure); }
};

/// Ground truth for the MIP arteries question, {0.1, 0.878, 0.002, 0.02}.
Pmf mip_arteries_pmf();
/// The flatter alternative {0.30, 0.57, 0.03, 0.10}.
Pmf mip_arteries_qprime_pmf();

struct MipTables {
  double entropy = 0.0;        ///< H(q)
  double ac = 0.0;             ///< H(q) - H(depiction)
  MeasureTable divergence;     ///< D(one-hot answer || q)
  MeasureTable benefit;        ///< bounded benefit with the depiction implying answer C
};

/// Rows A..D: each answer as a one-hot reconstruction against `q`. The
/// depicted output is one_hot(4, 3). Requires a 4-letter q.
MipTables mip_arteries_tables(const Pmf& q, const std::vector<DivergenceSpec>& measures);

/// 256 configurations: A and four others at 0.01, B and 64 others at 0.0002,
/// C and 184 others at 0.0001, D at 0.9185.
ExactPmf isosurface_exact();
Pmf isosurface_pmf();
/// 1-based positions of the answer letters A, B, C, D in isosurface_pmf().
std::array<std::size_t, 4> isosurface_answer_letters();
MeasureTable isosurface_table(const std::vector<DivergenceSpec>& measures);

struct LondonPmfSpec {
  int xi = 20;   ///< peak (estimated walking time, minutes)
  int n = 256;   ///< alphabet size

  /// Throws unless 9 <= xi <= n - 13.
  void validate() const;
};

enum class AnswerCategory { spot_on, close, wild_guess };

inline constexpr std::array<AnswerCategory, 3> kAnswerCategories{
    AnswerCategory::spot_on, AnswerCategory::close, AnswerCategory::wild_guess};

std::string_view to_string(AnswerCategory c);
/// Accepts `spot_on`, `spot on`, `close`, `wild_guess`, `wild guess` (any case).
AnswerCategory parse_category(std::string_view text);

/// Piecewise walking-time PMF over minutes 1..n peaked at xi; the wild-guess
/// band carries 0.01 in total, spread evenly.
ExactPmf london_exact(const LondonPmfSpec& spec);
Pmf london_pmf(const LondonPmfSpec& spec);

/// SPOT_ON within ±2 of xi, CLOSE for xi-7..xi-3 or xi+3..xi+12, else WILD_GUESS.
AnswerCategory categorize_answer(int answer, const LondonPmfSpec& spec);

/// 1-based representative letter per category: xi, xi+3, n.
std::size_t representative_letter(AnswerCategory c, const LondonPmfSpec& spec);

/// Rows spot on / close / wild guess: bounded benefit of a fully collapsed
/// depiction (single-letter output) with the category's representative
/// answer as reconstruction.
MeasureTable london_benefit_table(const LondonPmfSpec& spec, const std::vector<DivergenceSpec>& measures);

using CategoryCounts = std::array<int, 3>;  ///< indexed by AnswerCategory

/// Count-weighted mean of the London benefit table column for `measure`.
double per_question_benefit(const CategoryCounts& counts, const LondonPmfSpec& spec,
                            const DivergenceSpec& measure);

/// Names accepted by `scenario run`.
std::vector<std::string> scenario_names();

}  // namespace visbench
