#include "visbench/tables.hpp"

#include <algorithm>
#include <sstream>

#include "visbench/errors.hpp"

namespace visbench::tables {

namespace {

using report::Cell;
using report::Table;

std::vector<DivergenceSpec> or_candidates(const std::vector<DivergenceSpec>& measures) {
  return measures.empty() ? candidate_measures() : measures;
}

Table measure_table(std::string name, std::string title, std::string row_header, const MeasureTable& m) {
  Table t;
  t.name = std::move(name);
  t.title = std::move(title);
  t.columns.push_back(std::move(row_header));
  for (const auto& spec : m.measures) t.columns.push_back(spec.label());
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    std::vector<Cell> row{m.rows[r]};
    for (double v : m.values[r]) row.emplace_back(v);
    t.add_row(std::move(row));
  }
  return t;
}

Table decomposition_table(std::string name, std::string title, std::string row_header,
                          const std::vector<std::string>& letters) {
  Table t;
  t.name = std::move(name);
  t.title = std::move(title);
  t.columns.push_back(std::move(row_header));
  report::Stacking stacking;
  for (const auto& l : letters) {
    stacking.parts.push_back(t.columns.size());
    t.columns.push_back(l);
  }
  stacking.total = t.columns.size();
  t.columns.push_back("total");
  t.stacking = stacking;
  return t;
}

void add_decomposition_row(Table& t, const std::string& label, const Decomposition& d, std::size_t letters) {
  std::vector<Cell> row{label};
  for (std::size_t i = 0; i < letters; ++i) {
    if (d.per_letter.empty()) {
      row.emplace_back();
    } else {
      row.emplace_back(d.per_letter[i]);
    }
  }
  row.emplace_back(d.total);
  t.add_row(std::move(row));
}

std::vector<Table> user_scenario_report(const UserScenario& s, const std::vector<DivergenceSpec>& measures) {
  std::vector<Table> out;
  Table summary;
  summary.name = s.name + "_totals";
  summary.title = s.name + ": D(user || ground truth)";
  summary.columns = {"user", "process"};
  for (const auto& m : measures) summary.columns.push_back(m.label());
  std::vector<std::vector<Decomposition>> per_measure;
  for (const auto& m : measures) per_measure.push_back(s.divergences(m));
  for (std::size_t u = 0; u < s.users.size(); ++u) {
    std::vector<Cell> row{s.users[u].label, s.processes.at(s.users[u].process).name};
    for (const auto& d : per_measure) row.emplace_back(d[u].total);
    summary.add_row(std::move(row));
  }
  out.push_back(std::move(summary));
  for (std::size_t m = 0; m < measures.size(); ++m) {
    const std::string label = measures[m].label();
    Table t = decomposition_table(s.name + "_" + label, s.name + ": per-letter " + label, "user",
                                  s.ground_truth.labels());
    for (std::size_t u = 0; u < s.users.size(); ++u) {
      add_decomposition_row(t, s.users[u].label, per_measure[m][u], s.ground_truth.size());
    }
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<Table> mip_report(const std::string& name, const Pmf& q, const std::vector<DivergenceSpec>& measures) {
  const MipTables mip = mip_arteries_tables(q, measures);
  Table summary;
  summary.name = name + "_summary";
  summary.title = name + ": ground truth";
  summary.columns = {"quantity", "value"};
  summary.add_row({std::string("H(Q)"), mip.entropy});
  summary.add_row({std::string("H(depiction)"), 0.0});
  summary.add_row({std::string("AC"), mip.ac});
  summary.add_row({std::string("Hmax"), max_entropy(q.size())});
  std::ostringstream note;
  note << "AC = H(Q) - H(depiction) = " << report::format_number(mip.ac, 3)
       << " bits; the figure 0.225 does not reproduce the benefit rows";
  summary.notes.push_back(note.str());
  return {std::move(summary),
          measure_table(name + "_divergence", name + ": D(answer || Q)", "answer", mip.divergence),
          measure_table(name + "_benefit", name + ": benefit with depiction C", "answer", mip.benefit)};
}

std::vector<Table> isosurface_report(const std::vector<DivergenceSpec>& measures) {
  const ExactPmf e = isosurface_exact();
  const Pmf q = e.to_pmf();
  Table summary;
  summary.name = "isosurface_summary";
  summary.title = "isosurface: ground truth";
  summary.columns = {"quantity", "value"};
  summary.add_row({std::string("letters"), static_cast<long long>(q.size())});
  summary.add_row({std::string("exact unit sum"), std::string(e.unit_sum() ? "yes" : "no")});
  summary.add_row({std::string("H(Q)"), entropy(q)});
  summary.add_row({std::string("Hmax"), max_entropy(q.size())});
  return {std::move(summary), measure_table("isosurface_divergence", "isosurface: D(answer || Q)", "answer",
                                            isosurface_table(measures))};
}

std::vector<Table> london_report(int xi, const std::vector<DivergenceSpec>& measures) {
  const LondonPmfSpec spec{xi, 256};
  const ExactPmf e = london_exact(spec);
  const Pmf q = e.to_pmf();
  const double h = entropy(q);
  Table summary;
  summary.name = "london_summary";
  summary.title = "london: walking-time PMF";
  summary.columns = {"quantity", "value"};
  summary.add_row({std::string("xi"), static_cast<long long>(xi)});
  summary.add_row({std::string("letters"), static_cast<long long>(q.size())});
  summary.add_row({std::string("exact unit sum"), std::string(e.unit_sum() ? "yes" : "no")});
  summary.add_row({std::string("H(Q)"), h});
  summary.add_row({std::string("Hmax"), max_entropy(q.size())});
  summary.notes.push_back("computed H(Q) = " + report::format_number(h, 3) +
                          " bits; the rough estimate of 3.6 bits does not match this PMF");
  Table reps;
  reps.name = "london_representatives";
  reps.title = "london: representative answers";
  reps.columns = {"category", "letter"};
  for (AnswerCategory c : kAnswerCategories) {
    reps.add_row({std::string(to_string(c)), static_cast<long long>(representative_letter(c, spec))});
  }
  return {std::move(summary), std::move(reps),
          measure_table("london_benefit", "london: benefit by answer category", "category",
                        london_benefit_table(spec, measures))};
}

std::string counts_text(const CategoryCounts& c) {
  return "(" + std::to_string(c[0]) + "," + std::to_string(c[1]) + "," + std::to_string(c[2]) + ")";
}

}  // namespace

report::Table entropy_table(const std::vector<NamedPmf>& pmfs) {
  Table t;
  t.name = "entropy";
  t.title = "entropy (bits)";
  t.columns = {"pmf", "letters", "entropy", "max_entropy"};
  for (const auto& p : pmfs) {
    t.add_row({p.name, static_cast<long long>(p.pmf.size()), entropy(p.pmf), max_entropy(p.pmf.size())});
  }
  return t;
}

std::vector<report::Table> divergence_report(const Pmf& p, const Pmf& q, const std::vector<DivergenceSpec>& measures,
                                             bool decompose) {
  if (p.size() != q.size()) throw validation_error("p and q have different alphabet sizes");
  std::vector<Table> out;
  Table totals;
  totals.name = "divergence";
  totals.title = "D(p || q)";
  totals.columns = {"measure", "divergence"};
  std::vector<Decomposition> ds;
  for (const auto& m : measures) {
    ds.push_back(divergence(m, p, q));
    totals.add_row({m.label(), ds.back().total});
  }
  out.push_back(std::move(totals));
  if (decompose) {
    for (std::size_t i = 0; i < measures.size(); ++i) {
      const std::string label = measures[i].label();
      Table t = decomposition_table("divergence_" + label, "per-letter " + label, "measure", q.labels());
      add_decomposition_row(t, label, ds[i], q.size());
      if (!ds[i].finite()) t.notes.push_back("infinite divergence has no per-letter decomposition");
      out.push_back(std::move(t));
    }
  }
  return out;
}

report::Table benefit_table(const CaseManifest& manifest, const std::vector<DivergenceSpec>& measures) {
  Table t;
  t.name = "benefit";
  t.title = "cost-benefit";
  t.columns = {"measure", "H(input)", "H(output)", "AC", "PD", "benefit"};
  if (manifest.cost) {
    t.columns.push_back("cost (" + manifest.cost_unit + ")");
    t.columns.push_back("benefit/cost");
  }
  const TransformCase& c = manifest.transform;
  for (const auto& m : measures) {
    const BenefitResult b = evaluate_benefit(c, m);
    std::vector<Cell> row{m.label(), entropy(c.input), entropy(c.output), b.ac, b.pd, b.benefit};
    if (manifest.cost) {
      row.emplace_back(*manifest.cost);
      row.emplace_back(cost_benefit_ratio(b, *manifest.cost));
    }
    t.add_row(std::move(row));
  }
  return t;
}

std::vector<report::Table> scenario_report(std::string_view name, const ScenarioOptions& options) {
  const auto measures = or_candidates(options.measures);
  if (name == "good-bad") return user_scenario_report(good_bad_scenario(), measures);
  if (name == "abcd") return user_scenario_report(abcd_scenario(), measures);
  if (name == "mip-arteries") return mip_report("mip-arteries", mip_arteries_pmf(), measures);
  if (name == "mip-arteries-qprime") return mip_report("mip-arteries-qprime", mip_arteries_qprime_pmf(), measures);
  if (name == "isosurface") return isosurface_report(measures);
  if (name == "london") return london_report(options.xi, measures);
  throw validation_error("unknown scenario '" + std::string(name) + "'");
}

std::vector<NamedPmf> scenario_pmfs(std::string_view name, int xi) {
  auto from_users = [](const UserScenario& s) {
    std::vector<NamedPmf> out{{"ground_truth", s.ground_truth}};
    for (const auto& p : s.processes) out.push_back({"process_" + p.name, p.pmf});
    for (const auto& u : s.users) out.push_back({"user_" + u.label, u.decision});
    return out;
  };
  if (name == "good-bad") return from_users(good_bad_scenario());
  if (name == "abcd") return from_users(abcd_scenario());
  if (name == "mip-arteries") return {{"q", mip_arteries_pmf()}};
  if (name == "mip-arteries-qprime") return {{"q_prime", mip_arteries_qprime_pmf()}};
  if (name == "isosurface") return {{"q", isosurface_pmf()}};
  if (name == "london") return {{"q_xi" + std::to_string(xi), london_pmf({xi, 256})}};
  throw validation_error("unknown scenario '" + std::string(name) + "'");
}

std::vector<report::Table> london_survey_report(const std::vector<LondonRecord>& records,
                                                const CategoryOverrides& overrides,
                                                const std::vector<DivergenceSpec>& measures_in) {
  if (records.empty()) throw validation_error("survey has no records");
  const auto measures = or_candidates(measures_in);
  std::vector<Table> out;

  Table stats;
  stats.name = "survey_questions";
  stats.title = "london survey: answers and response times";
  stats.columns = {"question", "respondents", "mean", "min", "max", "mean_time", "correct"};
  for (int q = 1; q <= 12; ++q) {
    const QuestionStats s = question_stats(records, q);
    std::vector<Cell> row{static_cast<long long>(q), static_cast<long long>(s.respondents)};
    if (q <= 8) {
      row.insert(row.end(), {s.mean, s.min, s.max});
    } else {
      row.insert(row.end(), {Cell{}, Cell{}, Cell{}});
    }
    row.emplace_back(s.mean_time);
    if (q >= 5) {
      row.emplace_back(static_cast<long long>(correct_answers(records, q)));
    } else {
      row.emplace_back();
    }
    stats.add_row(std::move(row));
  }
  out.push_back(std::move(stats));

  Table cats;
  cats.name = "survey_categories";
  cats.title = "london survey: categorized estimates (spot on, close, wild guess)";
  cats.columns = {"question", "xi", "strict", "applied", "mean_time"};
  for (const auto& m : measures) cats.columns.push_back(m.label());
  for (const auto& m : measures) cats.columns.push_back(m.label() + " per s");
  Table devs;
  devs.name = "survey_deviations";
  devs.title = "london survey: answers whose category differs from strict banding";
  devs.columns = {"question", "surveyee", "answer", "strict", "applied"};
  for (int q = 1; q <= 4; ++q) {
    const int xi = kEstimateXis[static_cast<std::size_t>(q - 1)];
    const CategoryBreakdown b = categorize_question(records, q, xi, overrides);
    const double mean_time = question_stats(records, q).mean_time;
    std::vector<Cell> row{static_cast<long long>(q), static_cast<long long>(xi), counts_text(b.strict),
                          counts_text(b.applied), mean_time};
    std::vector<double> avgs;
    for (const auto& m : measures) avgs.push_back(per_question_benefit(b.applied, {xi, 256}, m));
    for (double a : avgs) row.emplace_back(a);
    for (double a : avgs) row.emplace_back(cost_benefit_ratio(a, mean_time));
    cats.add_row(std::move(row));
    for (const auto& d : b.deviations) {
      devs.add_row({static_cast<long long>(q), d.surveyee, static_cast<long long>(d.answer),
                    std::string(to_string(d.strict)), std::string(to_string(d.applied))});
    }
  }
  if (devs.rows.empty()) devs.notes.push_back("no deviations");
  out.push_back(std::move(cats));
  out.push_back(std::move(devs));

  Table users;
  users.name = "survey_surveyees";
  users.title = "london survey: mean benefit of Q1-Q4 per surveyee";
  users.columns = {"surveyee", "group", "categories"};
  for (const auto& m : measures) users.columns.push_back(m.label());
  for (const auto& r : records) {
    std::string tags;
    for (int q = 1; q <= 4; ++q) {
      const auto c = categorize_estimate(q, r.estimates[static_cast<std::size_t>(q - 1)].answer,
                                         kEstimateXis[static_cast<std::size_t>(q - 1)], overrides);
      tags += c == AnswerCategory::spot_on ? 'S' : c == AnswerCategory::close ? 'C' : 'W';
    }
    std::vector<Cell> row{r.surveyee, std::string(to_string(r.group)), tags};
    for (const auto& m : measures) row.emplace_back(surveyee_benefit(r, kEstimateXis, m, overrides));
    users.add_row(std::move(row));
  }
  users.notes.push_back("categories: S spot on, C close, W wild guess for Q1..Q4");
  out.push_back(std::move(users));
  return out;
}

std::vector<report::Table> volvis_survey_report(const std::vector<VolVisRecord>& records) {
  const auto summary = volvis_summary(records);
  Table q;
  q.name = "volvis_questions";
  q.title = "volume visualization survey: answers per question";
  q.columns = {"question", "tally", "most appropriate", "acceptable", "incorrect"};
  for (std::size_t i = 0; i < summary.size(); ++i) {
    std::string tally;
    for (const auto& [key, count] : summary[i].tally) {
      if (!tally.empty()) tally += ' ';
      tally += key + ":" + std::to_string(count);
    }
    q.add_row({static_cast<long long>(i + 1), tally, static_cast<long long>(summary[i].grades[0]),
               static_cast<long long>(summary[i].grades[1]), static_cast<long long>(summary[i].grades[2])});
  }
  q.notes.push_back("upper case letters are most appropriate when bracketed; bracketed lower case letters are acceptable");
  Table k;
  k.name = "volvis_knowledge";
  k.title = "volume visualization survey: self-assessed knowledge";
  k.columns = {"surveyee", "imaging", "rendering"};
  for (const auto& r : records) k.add_row({r.surveyee, r.imaging_knowledge.token(), r.rendering_knowledge.token()});
  return {std::move(q), std::move(k)};
}

std::vector<report::Table> mcda_report(const mcda::CriteriaTable& table,
                                       const std::optional<mcda::ImportanceWeights>& weights) {
  table.validate();
  std::vector<Table> out;
  Table scores;
  scores.name = "mcda_scores";
  scores.title = "criteria scores";
  scores.columns = {"#", "criterion", "importance", "stage"};
  scores.columns.insert(scores.columns.end(), table.measures.begin(), table.measures.end());
  for (std::size_t c = 0; c < table.criteria.size(); ++c) {
    const auto& crit = table.criteria[c];
    std::vector<Cell> row{static_cast<long long>(c + 1), crit.name, std::string(mcda::to_string(crit.importance)),
                          std::string(mcda::to_string(crit.stage))};
    for (const auto& cell : table.scores[c]) {
      if (!cell.score) {
        row.emplace_back();
      } else if (cell.comparison_only) {
        row.emplace_back(std::to_string(*cell.score) + "*");
      } else {
        row.emplace_back(static_cast<long long>(*cell.score));
      }
    }
    scores.add_row(std::move(row));
  }
  scores.notes.push_back("* comparison only: shown but excluded from sums and rankings");
  for (std::size_t m = 0; m < table.measures.size(); ++m) {
    if (table.eliminated_after[m]) {
      scores.notes.push_back(table.measures[m] + " eliminated after stage " +
                             std::string(mcda::to_string(*table.eliminated_after[m])));
    }
  }
  out.push_back(std::move(scores));

  Table sums;
  sums.name = "mcda_sums";
  sums.title = "stage sums";
  sums.columns = {"stages"};
  sums.columns.insert(sums.columns.end(), table.measures.begin(), table.measures.end());
  for (const char* r : {"1", "2-5", "1-5", "6-9", "1-9"}) {
    mcda::StageRange range;
    try {
      range = mcda::parse_stage_range(table, r);
    } catch (const validation_error&) {
      continue;
    }
    std::vector<Cell> row{std::string(r)};
    for (const auto& s : mcda::stage_sums(table, range)) {
      if (s) {
        row.emplace_back(static_cast<long long>(*s));
      } else {
        row.emplace_back();
      }
    }
    sums.add_row(std::move(row));
  }
  out.push_back(std::move(sums));

  const mcda::StageRange all{table.criteria.front().stage, table.criteria.back().stage};
  auto ranking = [&](const mcda::ImportanceWeights& w, const std::string& name, const std::string& title) {
    Table t;
    t.name = name;
    t.title = title;
    t.columns = {"rank", "measure", "score"};
    const auto ranked = mcda::weighted_rank(table, w, all);
    for (std::size_t i = 0; i < ranked.size(); ++i) {
      t.add_row({static_cast<long long>(i + 1), ranked[i].measure, ranked[i].score});
    }
    return t;
  };
  out.push_back(ranking(mcda::ImportanceWeights::unit(), "mcda_ranking", "ranking of remaining measures (unit weights)"));
  if (weights) {
    std::string desc;
    for (const auto& [imp, v] : weights->weight) {
      if (!desc.empty()) desc += ", ";
      desc += std::string(mcda::to_string(imp)) + "=" + report::format_exact(v);
    }
    out.push_back(ranking(*weights, "mcda_weighted_ranking", "weighted ranking (" + desc + ")"));
  }
  return out;
}

std::vector<report::Table> grid_paths_report(const GridPathResult& result, bool list_paths) {
  Table summary;
  summary.name = "grid_paths";
  summary.title = "metro line paths";
  summary.columns = {"n", "start", "end", "count"};
  auto point = [](const GridPoint& p) { return "(" + std::to_string(p.first) + "," + std::to_string(p.second) + ")"; };
  summary.add_row({static_cast<long long>(result.n), point(result.start), point(result.end),
                   static_cast<long long>(result.count)});
  std::vector<Table> out{std::move(summary)};
  if (list_paths) {
    Table paths;
    paths.name = "grid_paths_list";
    paths.title = "paths";
    paths.columns = {"#", "steps"};
    for (std::size_t i = 0; i < result.paths.size(); ++i) {
      paths.add_row({static_cast<long long>(i + 1), result.paths[i].encode()});
    }
    if (result.truncated) paths.notes.push_back("list truncated");
    out.push_back(std::move(paths));
  }
  return out;
}

}  // namespace visbench::tables
