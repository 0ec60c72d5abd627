#include "visbench/reproduce.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <sstream>

#include "visbench/benefit.hpp"
#include "visbench/csv.hpp"
#include "visbench/errors.hpp"
#include "visbench/grid_paths.hpp"
#include "visbench/mcda.hpp"
#include "visbench/measures.hpp"
#include "visbench/report.hpp"
#include "visbench/scenarios.hpp"
#include "visbench/survey.hpp"

namespace visbench::reproduce {

namespace {

constexpr double kTol3 = 1.5e-3;   // three-decimal published values
constexpr double kTol4 = 2e-4;     // four-decimal published values
constexpr double kTolMean = 5e-3;  // survey means, rounded in print
constexpr double kTolTime = 0.01;  // seconds
constexpr double kTolIdentity = 2.5e-3;
constexpr int kDigits = 6;

std::string num(double v) { return report::format_number(v, kDigits); }

class Builder {
 public:
  explicit Builder(std::string name) { file_.name = std::move(name); }

  void near(const std::string& item, double computed, double expected, double tol) {
    const bool ok = std::isfinite(computed) && std::abs(computed - expected) <= tol + 1e-12;
    file_.checks.push_back({item, num(computed), report::format_exact(expected), report::format_exact(tol),
                            ok ? Status::pass : Status::fail});
  }

  void exact(const std::string& item, long long computed, long long expected) {
    file_.checks.push_back({item, std::to_string(computed), std::to_string(expected), "0",
                            computed == expected ? Status::pass : Status::fail});
  }

  void text(const std::string& item, const std::string& computed, const std::string& expected) {
    file_.checks.push_back({item, computed, expected, "", computed == expected ? Status::pass : Status::fail});
  }

  void reported(const std::string& item, double computed) {
    file_.checks.push_back({item, num(computed), "", "", Status::reported});
  }

  void reported(const std::string& item, const std::string& computed) {
    file_.checks.push_back({item, computed, "", "", Status::reported});
  }

  void open(const std::string& item, long long computed, long long target) {
    file_.checks.push_back({item, std::to_string(computed), std::to_string(target), "0", Status::open});
  }

  void fail(const std::string& item, const std::string& message) {
    file_.checks.push_back({item, message, "", "", Status::fail});
  }

  // Runs `body`; an exception becomes a failing row instead of aborting.
  void guarded(const std::string& item, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      fail(item, e.what());
    }
  }

  CheckFile take() { return std::move(file_); }

 private:
  CheckFile file_;
};

const char* kRows[] = {"A", "B", "C", "D"};

std::string cell(const std::string& row, const DivergenceSpec& m) { return row + "/" + m.label(); }

CheckFile worked_example() {
  Builder b("worked_example");
  const Pmf p({0.998, 0.001, 0.001});
  const Pmf qu({1.0 / 3, 1.0 / 3, 1.0 / 3});
  const Pmf qv({0.9, 0.05, 0.05});
  const Pmf qw({0.001, 0.998, 0.001});
  b.near("H(Q_u)", entropy(qu), 1.585, kTol3);
  b.near("H(Q_v)", entropy(qv), 0.569, kTol3);
  b.near("KL(P||Q_u)", kl(p, qu), 1.562, kTol3);
  b.near("KL(P||Q_v)", kl(p, qv), 0.138, kTol3);
  b.near("KL(P||Q_w)", kl(p, qw), 9.933, kTol3);
  const Pmf out = one_hot(1, 1);
  b.near("benefit Q_u", benefit_kl({qu, out, p}).benefit, 0.023, kTol3);
  b.near("benefit Q_v", benefit_kl({qv, out, p}).benefit, 0.431, kTol3);
  b.reported("cross entropy H(P,Q_v)", cross_entropy(p, qv));
  return b.take();
}

CheckFile user_scenario_checks(const UserScenario& s) {
  Builder b(s.name == "good-bad" ? "good_bad" : s.name);
  const auto measures = candidate_measures();
  for (const auto& m : measures) {
    const auto ds = s.divergences(m);
    for (std::size_t u = 0; u < s.users.size(); ++u) {
      for (std::size_t i = 0; i < s.ground_truth.size(); ++i) {
        b.reported(s.users[u].label + "/" + m.label() + "/" + s.ground_truth.label(i), ds[u].per_letter[i]);
      }
      b.reported(s.users[u].label + "/" + m.label() + "/total", ds[u].total);
    }
  }
  auto total = [&](const std::string& user, const DivergenceSpec& m) {
    for (std::size_t u = 0; u < s.users.size(); ++u) {
      if (s.users[u].label == user) return divergence(m, s.users[u].decision, s.ground_truth);
    }
    throw validation_error("no user " + user);
  };
  if (s.name == "good-bad") {
    const DivergenceSpec js{Family::js};
    const DivergenceSpec new1{Family::dnew, 1};
    b.near("UC/js", total("UC", js).total, 0.010, kTol3);
    b.near("OC/js", total("OC", js).total, 0.014, kTol3);
    b.near("UC-OC/new:1", total("UC", new1).total - total("OC", new1).total, 0.0, 1e-12);
  } else {
    const auto bg = total("BG", {Family::dncm, 1});
    b.near("BG/ncm:1/A", bg.per_letter[0], 0.0, 1e-12);
    b.near("BG/ncm:1/B", bg.per_letter[1], 0.0, 1e-12);
  }
  return b.take();
}

void table_checks(Builder& b, const MeasureTable& t, const double expected[][5], const double tol[5]) {
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    for (std::size_t m = 0; m < t.measures.size(); ++m) {
      b.near(cell(t.rows[r], t.measures[m]), t.at(r, m), expected[r][m], tol[m]);
    }
  }
}

const double kMipDivergence[4][5] = {{0.758, 0.9087, 0.833, 0.926, 0.856},
                                     {0.064, 0.1631, 0.021, 0.166, 0.021},
                                     {0.990, 0.9066, 0.985, 0.999, 0.997},
                                     {0.929, 0.9086, 0.858, 0.986, 0.971}};
const double kMipBenefitQ[4][5] = {{-0.889, -1.190, -1.038, -1.224, -1.084},
                                   {0.500, 0.302, 0.586, 0.296, 0.585},
                                   {-1.351, -1.185, -1.097, -1.369, -1.366},
                                   {-1.230, -1.189, -1.088, -1.343, -1.314}};
const double kMipBenefitQprime[4][5] = {{0.480, 0.086, 0.487, -0.064, 0.317},
                                        {0.951, 0.529, 1.044, 0.435, 0.978},
                                        {-0.337, -0.038, 0.212, -0.489, -0.446},
                                        {-0.049, -0.037, 0.257, -0.385, -0.245}};
const double kIsoDivergence[4][5] = {{0.960, 0.933, 0.903, 0.993, 0.986},
                                     {0.999, 0.932, 0.905, 1.000, 1.000},
                                     {0.999, 0.932, 0.905, 1.000, 1.000},
                                     {0.042, 0.109, 0.009, 0.113, 0.010}};
const double kLondonBenefit[3][5] = {{-1.765, -0.418, 0.287, -3.252, -2.585},
                                     {-3.266, -0.439, 0.033, -3.815, -3.666},
                                     {-3.963, -0.416, -0.017, -3.966, -3.965}};
const double kTol3All[5] = {kTol3, kTol3, kTol3, kTol3, kTol3};
const double kTolMipDivergence[5] = {kTol3, kTol4, kTol3, kTol3, kTol3};

CheckFile mip_divergence() {
  Builder b("mip_divergence_q");
  const auto t = mip_arteries_tables(mip_arteries_pmf(), candidate_measures());
  b.near("H(Q)", t.entropy, 0.628, kTol3);
  table_checks(b, t.divergence, kMipDivergence, kTolMipDivergence);
  return b.take();
}

CheckFile mip_benefit(bool prime) {
  Builder b(prime ? "mip_benefit_qprime" : "mip_benefit_q");
  const Pmf q = prime ? mip_arteries_qprime_pmf() : mip_arteries_pmf();
  const auto t = mip_arteries_tables(q, candidate_measures());
  if (prime) b.near("H(Q')", t.entropy, 1.467, kTol3);
  b.near("AC", t.ac, t.entropy, 1e-12);
  table_checks(b, t.benefit, prime ? kMipBenefitQprime : kMipBenefitQ, kTol3All);
  // Published benefit against H(Q) - Hmax * D with the recomputed divergence.
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t m = 0; m < t.divergence.measures.size(); ++m) {
      const double published = (prime ? kMipBenefitQprime : kMipBenefitQ)[r][m];
      b.near("identity " + cell(kRows[r], t.divergence.measures[m]), t.entropy - 2.0 * t.divergence.at(r, m),
             published, kTolIdentity);
    }
  }
  b.reported("benefit A/js with AC 0.225", 0.225 - 2.0 * t.divergence.at(0, 0));
  return b.take();
}

CheckFile isosurface() {
  Builder b("isosurface");
  const auto e = isosurface_exact();
  b.exact("letters", static_cast<long long>(e.labels.size()), 256);
  b.text("exact unit sum", e.unit_sum() ? "yes" : "no", "yes");
  b.near("H(Q)", entropy(e.to_pmf()), 0.850, kTol3);
  table_checks(b, isosurface_table(candidate_measures()), kIsoDivergence, kTol3All);
  return b.take();
}

CheckFile london_benefit() {
  Builder b("london_benefit");
  for (int xi : kEstimateXis) {
    b.text("exact unit sum xi=" + std::to_string(xi), london_exact({xi, 256}).unit_sum() ? "yes" : "no", "yes");
  }
  const LondonPmfSpec spec{20, 256};
  b.near("H(Q) xi=20", entropy(london_pmf(spec)), 4.034, 0.01);
  const auto measures = candidate_measures();
  const auto t = london_benefit_table(spec, measures);
  table_checks(b, t, kLondonBenefit, kTol3All);
  std::string positive;
  for (std::size_t m = 0; m < measures.size(); ++m) {
    if (t.at(0, m) > 0 && t.at(1, m) > 0) positive += (positive.empty() ? "" : " ") + measures[m].label();
  }
  b.text("measures with positive spot on and close", positive, "new:2");
  return b.take();
}

std::string counts_text(const CategoryCounts& c) {
  return std::to_string(c[0]) + "/" + std::to_string(c[1]) + "/" + std::to_string(c[2]);
}

struct Fixtures {
  std::optional<std::vector<LondonRecord>> kcl;
  std::optional<std::vector<LondonRecord>> ou;
  std::optional<std::vector<VolVisRecord>> volvis;
  std::optional<CategoryOverrides> overrides;
  std::optional<mcda::CriteriaTable> table1;
  std::vector<std::pair<std::string, std::string>> errors;
};

Fixtures load_fixtures(const std::filesystem::path& dir) {
  Fixtures f;
  auto attempt = [&](const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      f.errors.emplace_back(name, e.what());
    }
  };
  attempt("survey/kcl.csv", [&] {
    f.kcl = std::get<0>(parse_survey(dir / "survey" / "kcl.csv", SurveyKind::london));
  });
  attempt("survey/ou.csv", [&] { f.ou = std::get<0>(parse_survey(dir / "survey" / "ou.csv", SurveyKind::london)); });
  attempt("survey/volvis.csv", [&] {
    f.volvis = std::get<1>(parse_survey(dir / "survey" / "volvis.csv", SurveyKind::volvis));
  });
  attempt("survey/london_overrides.csv",
          [&] { f.overrides = read_overrides(dir / "survey" / "london_overrides.csv"); });
  attempt("mcda/table1.csv", [&] { f.table1 = mcda::read_criteria_table(dir / "mcda" / "table1.csv"); });
  return f;
}

void fixture_errors(Builder& b, const Fixtures& f, std::initializer_list<const char*> names) {
  for (const auto& [name, message] : f.errors) {
    for (const char* n : names) {
      if (name == n) b.fail("load " + name, message);
    }
  }
}

CheckFile london_questions(const Fixtures& f) {
  Builder b("london_questions");
  const DivergenceSpec js{Family::js};
  const DivergenceSpec new2{Family::dnew, 2};
  // Published counts per question.
  const CategoryCounts published[4] = {{4, 5, 3}, {2, 9, 1}, {0, 3, 9}, {2, 1, 9}};
  const double js_avg[4] = {-2.940, -3.074, -3.789, -3.539};
  const double new2_avg[4] = {0.105, 0.071, -0.005, 0.038};
  const double ratio[4] = {0.0113, 0.0075, -0.0003, 0.0033};
  const double times[4] = {9.27, 9.48, 14.65, 11.40};
  for (int q = 1; q <= 4; ++q) {
    const auto i = static_cast<std::size_t>(q - 1);
    const LondonPmfSpec spec{kEstimateXis[i], 256};
    const std::string p = "Q" + std::to_string(q);
    b.near(p + " average/js", per_question_benefit(published[i], spec, js), js_avg[i], kTol3);
    b.near(p + " average/new:2", per_question_benefit(published[i], spec, new2), new2_avg[i], kTol3);
  }
  fixture_errors(b, f, {"survey/kcl.csv", "survey/london_overrides.csv"});
  if (!f.kcl || !f.overrides) return b.take();
  const auto& kcl = *f.kcl;
  for (int q = 1; q <= 4; ++q) {
    const auto i = static_cast<std::size_t>(q - 1);
    const int xi = kEstimateXis[i];
    const std::string p = "Q" + std::to_string(q);
    b.guarded(p, [&] {
      const auto strict = categorize_question(kcl, q, xi);
      const auto applied = categorize_question(kcl, q, xi, *f.overrides);
      if (q == 1 || q == 4) {
        b.text(p + " counts strict", counts_text(strict.strict), counts_text(published[i]));
      } else {
        b.reported(p + " counts strict", counts_text(strict.strict));
      }
      b.text(p + " counts with overrides", counts_text(applied.applied), counts_text(published[i]));
      for (const auto& d : applied.deviations) {
        b.reported(p + " deviation " + d.surveyee, std::to_string(d.answer) + " " + std::string(to_string(d.strict)) +
                                                      " -> " + std::string(to_string(d.applied)));
      }
      const double t = question_stats(kcl, q).mean_time;
      b.near(p + " mean time", t, times[i], kTolTime);
      b.near(p + " cost-benefit/new:2", question_cost_benefit(kcl, q, xi, new2, *f.overrides), ratio[i], kTol4);
    });
  }
  return b.take();
}

CheckFile survey_stats(const Fixtures& f) {
  Builder b("survey_stats");
  fixture_errors(b, f, {"survey/kcl.csv", "survey/ou.csv", "survey/volvis.csv", "survey/london_overrides.csv"});
  const DivergenceSpec new2{Family::dnew, 2};
  if (f.kcl) {
    const auto& kcl = *f.kcl;
    b.exact("KCL records", static_cast<long long>(kcl.size()), 12);
    const double means[4] = {19.25, 19.67, 46.25, 59.17};
    const int lo[4] = {8, 5, 10, 20};
    const int hi[4] = {30, 30, 240, 120};
    for (int q = 1; q <= 4; ++q) {
      const auto i = static_cast<std::size_t>(q - 1);
      const auto s = question_stats(kcl, q);
      const std::string p = "KCL Q" + std::to_string(q);
      b.near(p + " mean", s.mean, means[i], kTolMean);
      b.exact(p + " min", static_cast<long long>(s.min), lo[i]);
      b.exact(p + " max", static_cast<long long>(s.max), hi[i]);
    }
    for (int q = 5; q <= 12; ++q) {
      b.reported("KCL Q" + std::to_string(q) + " correct", static_cast<double>(correct_answers(kcl, q)));
      b.reported("KCL Q" + std::to_string(q) + " mean time", question_stats(kcl, q).mean_time);
    }
    const CategoryOverrides none;
    bool found9 = false;
    bool found3 = false;
    for (const auto& r : kcl) {
      if (r.surveyee == "P9") {
        found9 = true;
        b.near("P9 benefit/new:2", surveyee_benefit(r, kEstimateXis, new2, none), 0.160, kTol3);
      }
      if (r.surveyee == "P3") {
        found3 = true;
        std::string cats;
        for (int q = 1; q <= 4; ++q) {
          const auto i = static_cast<std::size_t>(q - 1);
          const auto c = categorize_estimate(q, r.estimates[i].answer, kEstimateXis[i], none);
          cats += (cats.empty() ? "" : "/") + std::string(to_string(c));
        }
        b.text("P3 categories", cats, "wild guess/wild guess/wild guess/wild guess");
        std::string negative = "yes";
        for (const auto& m : candidate_measures()) {
          if (!(surveyee_benefit(r, kEstimateXis, m, none) < 0)) negative = "no";
        }
        b.text("P3 negative under all five measures", negative, "yes");
      }
    }
    if (!found9) b.fail("P9 benefit/new:2", "surveyee P9 missing");
    if (!found3) b.fail("P3 categories", "surveyee P3 missing");
  }
  if (f.ou) {
    const auto& ou = *f.ou;
    b.exact("OU records", static_cast<long long>(ou.size()), 4);
    const double means[4] = {16.25, 10, 37.25, 33.75};
    for (int q = 1; q <= 4; ++q) {
      b.near("OU Q" + std::to_string(q) + " mean", question_stats(ou, q).mean, means[q - 1], kTolMean);
    }
    const auto q2 = question_stats(ou, 2);
    b.exact("OU Q2 min", static_cast<long long>(q2.min), 5);
    b.exact("OU Q2 max", static_cast<long long>(q2.max), 15);
  }
  if (f.volvis) {
    const auto summary = volvis_summary(*f.volvis);
    auto tally = [&](std::size_t q) {
      std::string s;
      for (const auto& [k, v] : summary[q].tally) s += (s.empty() ? "" : " ") + k + ":" + std::to_string(v);
      return s;
    };
    b.exact("VolVis records", static_cast<long long>(f.volvis->size()), 10);
    b.text("VolVis Q5 tally", tally(4), "B:1 D:1 a:8");
    b.text("VolVis Q2 tally", tally(1), "C:9 d:1");
    for (std::size_t q = 0; q < 8; ++q) b.reported("VolVis Q" + std::to_string(q + 1) + " tally", tally(q));
  }
  return b.take();
}

CheckFile table1(const Fixtures& f) {
  Builder b("table1");
  fixture_errors(b, f, {"mcda/table1.csv"});
  if (!f.table1) return b.take();
  const auto& t = *f.table1;
  b.guarded("table", [&] {
    auto check_sums = [&](const std::string& range, const std::vector<std::pair<std::string, int>>& expected) {
      const auto sums = mcda::stage_sums(t, mcda::parse_stage_range(t, range));
      for (const auto& [measure, value] : expected) {
        std::optional<int> got;
        for (std::size_t m = 0; m < t.measures.size(); ++m) {
          if (t.measures[m] == measure) got = sums[m];
        }
        if (!got) {
          b.fail("stages " + range + "/" + measure, "measure missing or eliminated");
        } else {
          b.exact("stages " + range + "/" + measure, *got, value);
        }
      }
    };
    check_sums("1-5", {{"js", 24}, {"H(P|Q)", 14}, {"new:1", 20}, {"new:2", 24}, {"ncm:1", 20}, {"ncm:2", 24},
                       {"mink:2", 14}, {"mink:200", 15}});
    check_sums("6-9", {{"js", 15}, {"new:1", 12}, {"new:2", 17}, {"ncm:1", 15}, {"ncm:2", 13}});
    check_sums("1-9", {{"js", 39}, {"new:1", 32}, {"new:2", 41}, {"ncm:1", 35}, {"ncm:2", 37}});
    const mcda::StageRange all = mcda::parse_stage_range(t, "1-9");
    const auto unit = mcda::weighted_rank(t, mcda::ImportanceWeights::unit(), all);
    b.text("winner", unit.empty() ? "" : unit.front().measure, "new:2");
    const auto weighted = mcda::weighted_rank(t, mcda::ImportanceWeights::parse("critical=4,important=2,helpful=1"), all);
    for (std::size_t i = 0; i < weighted.size(); ++i) {
      b.reported("weighted rank " + std::to_string(i + 1), weighted[i].measure + " " + num(weighted[i].score));
    }
  });
  return b.take();
}

CheckFile grid_paths() {
  Builder b("grid_paths");
  const GridRules rules;
  b.exact("n=1 paths", static_cast<long long>(enumerate_grid_paths(1, rules, 0).count), 1);
  b.exact("n=2 paths", static_cast<long long>(enumerate_grid_paths(2, rules, 0).count), 3);
  b.open("n=4 paths", static_cast<long long>(enumerate_grid_paths(4, rules, 0).count), 15);
  return b.take();
}

}  // namespace

std::string_view to_string(Status s) {
  switch (s) {
    case Status::pass: return "PASS";
    case Status::fail: return "FAIL";
    case Status::reported: return "REPORTED";
    case Status::open: return "OPEN";
  }
  return "?";
}

int CheckFile::count(Status s) const {
  int n = 0;
  for (const auto& c : checks) n += c.status == s;
  return n;
}

std::vector<CheckFile> run_checks(const std::filesystem::path& data_dir) {
  const Fixtures f = load_fixtures(data_dir);
  std::vector<CheckFile> files;
  files.push_back(worked_example());
  files.push_back(user_scenario_checks(good_bad_scenario()));
  files.push_back(user_scenario_checks(abcd_scenario()));
  files.push_back(mip_divergence());
  files.push_back(mip_benefit(false));
  files.push_back(mip_benefit(true));
  files.push_back(isosurface());
  files.push_back(london_benefit());
  files.push_back(london_questions(f));
  files.push_back(survey_stats(f));
  files.push_back(table1(f));
  files.push_back(grid_paths());
  return files;
}

std::string render(const CheckFile& f) {
  std::ostringstream out;
  out << "item,computed,expected,tolerance,status\n";
  for (const auto& c : f.checks) {
    out << csv::join({c.item, c.computed, c.expected, c.tolerance, std::string(to_string(c.status))}) << '\n';
  }
  return out.str();
}

std::string render_summary(const std::vector<CheckFile>& files) {
  std::ostringstream out;
  out << "file,checks,pass,fail,reported,open\n";
  for (const auto& f : files) {
    out << f.name << ".csv," << f.checks.size() << ',' << f.count(Status::pass) << ',' << f.count(Status::fail) << ','
        << f.count(Status::reported) << ',' << f.count(Status::open) << '\n';
  }
  return out.str();
}

Outcome reproduce(const std::filesystem::path& data_dir, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) throw io_error("cannot create '" + out_dir.string() + "'");
  const auto files = run_checks(data_dir);
  Outcome outcome;
  for (const auto& f : files) {
    const auto path = out_dir / (f.name + ".csv");
    report::write_file_atomic(path, render(f));
    outcome.written.push_back(path);
    outcome.failures += f.count(Status::fail);
    std::ostringstream line;
    line << f.name << ".csv: " << f.count(Status::pass) << " pass, " << f.count(Status::fail) << " fail, "
         << f.count(Status::reported) << " reported, " << f.count(Status::open) << " open";
    outcome.log.push_back(line.str());
  }
  const auto summary = out_dir / "summary.csv";
  report::write_file_atomic(summary, render_summary(files));
  outcome.written.push_back(summary);
  return outcome;
}

}  // namespace visbench::reproduce
