#include "visbench/scenarios.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "visbench/errors.hpp"

namespace visbench {

bool ExactPmf::unit_sum() const {
  const std::int64_t total = std::accumulate(numerators.begin(), numerators.end(), std::int64_t{0});
  return total == denominator;
}

Pmf ExactPmf::to_pmf() const {
  std::vector<double> probs;
  probs.reserve(numerators.size());
  for (auto n : numerators) probs.push_back(static_cast<double>(n) / static_cast<double>(denominator));
  return Pmf(labels, std::move(probs));
}

std::vector<Decomposition> UserScenario::divergences(const DivergenceSpec& spec) const {
  std::vector<Decomposition> out;
  out.reserve(users.size());
  for (const auto& u : users) out.push_back(divergence(spec, u.decision, ground_truth));
  return out;
}

UserScenario good_bad_scenario() {
  const std::vector<std::string> states{"good", "bad"};
  auto pmf = [&](double good, double bad) { return Pmf(states, {good, bad}); };
  UserScenario s{"good-bad", pmf(0.8, 0.2), {{"biased", pmf(0.0, 1.0)}}, {}};
  s.users = {{"LD", pmf(0.1, 0.9), 0},
             {"FD", pmf(0.3, 0.7), 0},
             {"RG", pmf(0.5, 0.5), 0},
             {"UC", pmf(0.7, 0.3), 0},
             {"OC", pmf(0.9, 0.1), 0}};
  return s;
}

UserScenario abcd_scenario() {
  const std::vector<std::string> letters{"A", "B", "C", "D"};
  const std::vector<std::string> classes{"AB", "CD"};
  auto pmf = [&](double a, double b, double c, double d) { return Pmf(letters, {a, b, c, d}); };
  UserScenario s{"abcd",
                 pmf(0.1, 0.4, 0.2, 0.3),
                 {{"correct", Pmf(classes, {0.5, 0.5})}, {"biased", Pmf(classes, {0.0, 1.0})}},
                 {}};
  s.users = {{"CG", pmf(0.25, 0.25, 0.25, 0.25), 0},
             {"CU", pmf(0.1, 0.4, 0.1, 0.4), 0},
             {"CB", pmf(0.4, 0.1, 0.4, 0.1), 0},
             {"BG", pmf(0.0, 0.0, 0.5, 0.5), 1},
             {"BS", pmf(0.1, 0.1, 0.4, 0.4), 1},
             {"BM", pmf(0.2, 0.2, 0.3, 0.3), 1}};
  return s;
}

Pmf mip_arteries_pmf() { return Pmf({"A", "B", "C", "D"}, {0.1, 0.878, 0.002, 0.02}); }

Pmf mip_arteries_qprime_pmf() { return Pmf({"A", "B", "C", "D"}, {0.30, 0.57, 0.03, 0.10}); }

MipTables mip_arteries_tables(const Pmf& q, const std::vector<DivergenceSpec>& measures) {
  if (q.size() != 4) throw validation_error("MIP arteries tables need a 4-letter PMF (A, B, C, D)");
  // The MIP image suggests a flat surface, i.e. answer C with certainty.
  const Pmf depiction = one_hot(4, 3);
  MipTables t;
  t.entropy = entropy(q);
  t.divergence.measures = measures;
  t.benefit.measures = measures;
  for (std::size_t row = 1; row <= 4; ++row) {
    const TransformCase c{q, depiction, one_hot(q, row)};
    t.ac = alphabet_compression(c);
    std::vector<double> div_row;
    std::vector<double> ben_row;
    for (const auto& m : measures) {
      div_row.push_back(divergence(m, c.recon, q).total);
      ben_row.push_back(evaluate_benefit(c, m).benefit);
    }
    t.divergence.rows.push_back(q.label(row - 1));
    t.benefit.rows.push_back(q.label(row - 1));
    t.divergence.values.push_back(std::move(div_row));
    t.benefit.values.push_back(std::move(ben_row));
  }
  return t;
}

ExactPmf isosurface_exact() {
  // Units of 1e-4: 0.01 = 100, 0.0002 = 2, 0.0001 = 1, 0.9185 = 9185.
  ExactPmf e;
  e.denominator = 10000;
  auto add = [&](const std::string& label, std::int64_t num) {
    e.labels.push_back(label);
    e.numerators.push_back(num);
  };
  add("A", 100);
  for (int i = 1; i <= 4; ++i) add("a" + std::to_string(i), 100);
  add("B", 2);
  for (int i = 1; i <= 64; ++i) add("b" + std::to_string(i), 2);
  add("C", 1);
  for (int i = 1; i <= 184; ++i) add("c" + std::to_string(i), 1);
  add("D", 9185);
  return e;
}

Pmf isosurface_pmf() { return isosurface_exact().to_pmf(); }

std::array<std::size_t, 4> isosurface_answer_letters() { return {1, 6, 71, 256}; }

MeasureTable isosurface_table(const std::vector<DivergenceSpec>& measures) {
  const Pmf q = isosurface_pmf();
  MeasureTable t;
  t.measures = measures;
  for (std::size_t letter : isosurface_answer_letters()) {
    const Pmf answer = one_hot(q, letter);
    std::vector<double> row;
    for (const auto& m : measures) row.push_back(divergence(m, answer, q).total);
    t.rows.push_back(q.label(letter - 1));
    t.values.push_back(std::move(row));
  }
  return t;
}

void LondonPmfSpec::validate() const {
  if (n < 22 || xi < 9 || xi > n - 13) {
    throw validation_error("London PMF needs 9 <= xi <= n - 13 (xi=" + std::to_string(xi) +
                           ", n=" + std::to_string(n) + ")");
  }
}

std::string_view to_string(AnswerCategory c) {
  switch (c) {
    case AnswerCategory::spot_on: return "spot on";
    case AnswerCategory::close: return "close";
    case AnswerCategory::wild_guess: return "wild guess";
  }
  return "?";
}

AnswerCategory parse_category(std::string_view text) {
  std::string s;
  for (char c : text) s.push_back(c == ' ' || c == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (s == "spot_on") return AnswerCategory::spot_on;
  if (s == "close") return AnswerCategory::close;
  if (s == "wild_guess") return AnswerCategory::wild_guess;
  throw validation_error("unknown answer category '" + std::string(text) + "'");
}

ExactPmf london_exact(const LondonPmfSpec& spec) {
  spec.validate();
  // Common denominator 1000 (n - 20): spot on 0.12, close 0.026, and the
  // n - 20 wild-guess letters share 0.01.
  const std::int64_t wild_letters = spec.n - 20;
  ExactPmf e;
  e.denominator = 1000 * wild_letters;
  e.labels = numbered_labels(static_cast<std::size_t>(spec.n));
  e.numerators.reserve(static_cast<std::size_t>(spec.n));
  for (int i = 1; i <= spec.n; ++i) {
    switch (categorize_answer(i, spec)) {
      case AnswerCategory::spot_on: e.numerators.push_back(120 * wild_letters); break;
      case AnswerCategory::close: e.numerators.push_back(26 * wild_letters); break;
      case AnswerCategory::wild_guess: e.numerators.push_back(10); break;
    }
  }
  return e;
}

Pmf london_pmf(const LondonPmfSpec& spec) { return london_exact(spec).to_pmf(); }

AnswerCategory categorize_answer(int answer, const LondonPmfSpec& spec) {
  spec.validate();
  if (answer < 1 || answer > spec.n) {
    throw validation_error("answer " + std::to_string(answer) + " outside [1, " + std::to_string(spec.n) + "]");
  }
  const int xi = spec.xi;
  if (answer >= xi - 2 && answer <= xi + 2) return AnswerCategory::spot_on;
  if ((answer >= xi - 7 && answer <= xi - 3) || (answer >= xi + 3 && answer <= xi + 12)) {
    return AnswerCategory::close;
  }
  return AnswerCategory::wild_guess;
}

std::size_t representative_letter(AnswerCategory c, const LondonPmfSpec& spec) {
  switch (c) {
    case AnswerCategory::spot_on: return static_cast<std::size_t>(spec.xi);
    case AnswerCategory::close: return static_cast<std::size_t>(spec.xi + 3);
    case AnswerCategory::wild_guess: return static_cast<std::size_t>(spec.n);
  }
  return 0;
}

MeasureTable london_benefit_table(const LondonPmfSpec& spec, const std::vector<DivergenceSpec>& measures) {
  const Pmf q = london_pmf(spec);
  const Pmf collapsed = one_hot(1, 1);
  MeasureTable t;
  t.measures = measures;
  for (AnswerCategory c : kAnswerCategories) {
    const TransformCase tc{q, collapsed, one_hot(q, representative_letter(c, spec))};
    std::vector<double> row;
    for (const auto& m : measures) row.push_back(evaluate_benefit(tc, m).benefit);
    t.rows.emplace_back(to_string(c));
    t.values.push_back(std::move(row));
  }
  return t;
}

double per_question_benefit(const CategoryCounts& counts, const LondonPmfSpec& spec,
                            const DivergenceSpec& measure) {
  int total = 0;
  for (int c : counts) {
    if (c < 0) throw validation_error("category counts must be non-negative");
    total += c;
  }
  if (total < 1) throw validation_error("per-question benefit needs at least one answer");
  const MeasureTable t = london_benefit_table(spec, {measure});
  double sum = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) sum += counts[i] * t.at(i, 0);
  return sum / total;
}

std::vector<std::string> scenario_names() {
  return {"good-bad", "abcd", "mip-arteries", "mip-arteries-qprime", "isosurface", "london"};
}

}  // namespace visbench
