#include "visbench/visbench.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "visbench/benefit.hpp"
#include "visbench/errors.hpp"
#include "visbench/grid_paths.hpp"
#include "visbench/mcda.hpp"
#include "visbench/measures.hpp"
#include "visbench/pmf.hpp"
#include "visbench/report.hpp"
#include "visbench/reproduce.hpp"
#include "visbench/scenarios.hpp"
#include "visbench/survey.hpp"
#include "visbench/tables.hpp"

struct vb_pmf {
  visbench::Pmf pmf;
};

struct vb_survey {
  visbench::SurveyRecords records;
};

struct vb_criteria_table {
  visbench::mcda::CriteriaTable table;
};

namespace {

using namespace visbench;

thread_local std::string g_error;

template <typename F>
vb_status guard(F&& body) {
  try {
    body();
    g_error.clear();
    return VB_OK;
  } catch (const io_error& e) {
    g_error = e.what();
    return VB_ERR_IO;
  } catch (const std::invalid_argument& e) {
    g_error = e.what();
    return VB_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    g_error = "out of memory";
    return VB_ERR_INTERNAL;
  } catch (const std::exception& e) {
    g_error = e.what();
    return VB_ERR_INTERNAL;
  } catch (...) {
    g_error = "unknown error";
    return VB_ERR_INTERNAL;
  }
}

template <typename T>
T& need(T* p, const char* what) {
  if (p == nullptr) throw validation_error(std::string(what) + " is null");
  return *p;
}

const char* need_str(const char* s, const char* what) {
  if (s == nullptr) throw validation_error(std::string(what) + " is null");
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<DivergenceSpec> specs(const char* const* measures, size_t count) {
  if (count > 0 && measures == nullptr) throw validation_error("measures is null");
  std::vector<DivergenceSpec> out;
  for (size_t i = 0; i < count; ++i) out.push_back(DivergenceSpec::parse(need_str(measures[i], "measure")));
  return out;
}

report::Format to_format(vb_format f) {
  switch (f) {
    case VB_FORMAT_CSV: return report::Format::csv;
    case VB_FORMAT_MARKDOWN: return report::Format::markdown;
    case VB_FORMAT_SVG: return report::Format::svg;
  }
  throw validation_error("unknown format");
}

void emit(const std::vector<report::Table>& tables, vb_format format, int precision, char** out) {
  need(out, "out") = dup(report::render(tables, to_format(format), precision));
}

GridRules grid_rules(int max_turn, const char* directions, int monotone, int max_bends) {
  GridRules r;
  r.max_turn_deg = max_turn;
  if (directions != nullptr) r.directions = parse_directions(directions);
  r.monotone_x = monotone != 0;
  if (max_bends >= 0) r.max_bends = max_bends;
  return r;
}

}  // namespace

extern "C" {

const char* vb_version(void) { return VISBENCH_VERSION; }

const char* vb_last_error_message(void) { return g_error.c_str(); }

void vb_string_free(char* s) { std::free(s); }

vb_status vb_parse_format(const char* text, vb_format* out) {
  return guard([&] {
    switch (report::parse_format(need_str(text, "format"))) {
      case report::Format::csv: need(out, "out") = VB_FORMAT_CSV; break;
      case report::Format::markdown: need(out, "out") = VB_FORMAT_MARKDOWN; break;
      case report::Format::svg: need(out, "out") = VB_FORMAT_SVG; break;
    }
  });
}

vb_status vb_default_precision(int* out) {
  return guard([&] { need(out, "out") = report::default_precision(); });
}

vb_status vb_format_number(double value, int precision, char** out) {
  return guard([&] { need(out, "out") = dup(report::format_number(value, precision)); });
}

vb_status vb_pmf_create(const double* probs, size_t n, const char* const* labels, vb_pmf** out) {
  return guard([&] {
    if (probs == nullptr && n > 0) throw validation_error("probs is null");
    std::vector<double> p(probs, probs + n);
    std::vector<std::string> l;
    if (labels != nullptr) {
      for (size_t i = 0; i < n; ++i) l.emplace_back(need_str(labels[i], "label"));
    } else {
      l = numbered_labels(n);
    }
    need(out, "out") = new vb_pmf{Pmf(std::move(l), std::move(p))};
  });
}

vb_status vb_pmf_read(const char* path, vb_pmf** out) {
  return guard([&] { need(out, "out") = new vb_pmf{read_pmf_csv(need_str(path, "path"))}; });
}

vb_status vb_pmf_london(int xi, int n, vb_pmf** out) {
  return guard([&] { need(out, "out") = new vb_pmf{london_pmf({xi, n})}; });
}

void vb_pmf_free(vb_pmf* pmf) { delete pmf; }

size_t vb_pmf_size(const vb_pmf* pmf) { return pmf == nullptr ? 0 : pmf->pmf.size(); }

vb_status vb_pmf_get(const vb_pmf* pmf, size_t index, double* out) {
  return guard([&] {
    const auto& p = need(pmf, "pmf").pmf;
    if (index >= p.size()) throw validation_error("index out of range");
    need(out, "out") = p[index];
  });
}

vb_status vb_entropy(const vb_pmf* p, double* out) {
  return guard([&] { need(out, "out") = entropy(need(p, "p").pmf); });
}

vb_status vb_max_entropy(size_t n, double* out) {
  return guard([&] { need(out, "out") = max_entropy(n); });
}

vb_status vb_cross_entropy(const vb_pmf* p, const vb_pmf* q, double* out) {
  return guard([&] { need(out, "out") = cross_entropy(need(p, "p").pmf, need(q, "q").pmf); });
}

vb_status vb_kl(const vb_pmf* p, const vb_pmf* q, double* out) {
  return guard([&] { need(out, "out") = kl(need(p, "p").pmf, need(q, "q").pmf); });
}

vb_status vb_divergence(const char* measure, const vb_pmf* p, const vb_pmf* q, double* total, double* per_letter,
                        int* finite) {
  return guard([&] {
    const auto spec = DivergenceSpec::parse(need_str(measure, "measure"));
    const Decomposition d = divergence(spec, need(p, "p").pmf, need(q, "q").pmf);
    need(total, "total") = d.total;
    if (per_letter != nullptr && d.finite()) std::copy(d.per_letter.begin(), d.per_letter.end(), per_letter);
    if (finite != nullptr) *finite = d.finite() ? 1 : 0;
  });
}

vb_status vb_benefit(const char* measure, const vb_pmf* input, const vb_pmf* output, const vb_pmf* recon, double* ac,
                     double* pd, double* benefit) {
  return guard([&] {
    const auto spec = DivergenceSpec::parse(need_str(measure, "measure"));
    const TransformCase c{need(input, "input").pmf, need(output, "output").pmf, need(recon, "recon").pmf};
    const BenefitResult r = evaluate_benefit(c, spec);
    if (ac != nullptr) *ac = r.ac;
    if (pd != nullptr) *pd = r.pd;
    need(benefit, "benefit") = r.benefit;
  });
}

vb_status vb_cost_benefit_ratio(double benefit, double cost, double* out) {
  return guard([&] { need(out, "out") = cost_benefit_ratio(benefit, cost); });
}

vb_status vb_categorize(int answer, int xi, int n, vb_category* out) {
  return guard([&] { need(out, "out") = static_cast<vb_category>(categorize_answer(answer, {xi, n})); });
}

vb_status vb_report_entropy(const char* const* paths, size_t count, vb_format format, int precision, char** out) {
  return guard([&] {
    if (count == 0 || paths == nullptr) throw validation_error("no PMF files given");
    std::vector<NamedPmf> pmfs;
    for (size_t i = 0; i < count; ++i) {
      const char* path = need_str(paths[i], "path");
      pmfs.push_back({path, read_pmf_csv(path)});
    }
    emit({tables::entropy_table(pmfs)}, format, precision, out);
  });
}

vb_status vb_report_divergence(const char* const* measures, size_t measure_count, const char* p_path,
                               const char* q_path, int decompose, vb_format format, int precision, char** out) {
  return guard([&] {
    auto ms = specs(measures, measure_count);
    if (ms.empty()) ms = candidate_measures();
    const Pmf p = read_pmf_csv(need_str(p_path, "p_path"));
    const Pmf q = read_pmf_csv(need_str(q_path, "q_path"));
    emit(tables::divergence_report(p, q, ms, decompose != 0), format, precision, out);
  });
}

vb_status vb_report_benefit(const char* manifest_path, const char* const* measures, size_t measure_count,
                            vb_format format, int precision, char** out) {
  return guard([&] {
    const CaseManifest m = read_case_manifest(need_str(manifest_path, "manifest_path"));
    auto ms = specs(measures, measure_count);
    if (ms.empty()) ms = m.measure ? std::vector<DivergenceSpec>{*m.measure} : candidate_measures();
    emit({tables::benefit_table(m, ms)}, format, precision, out);
  });
}

size_t vb_scenario_count(void) { return scenario_names().size(); }

const char* vb_scenario_name(size_t index) {
  static const std::vector<std::string> names = scenario_names();
  return index < names.size() ? names[index].c_str() : nullptr;
}

vb_status vb_report_scenario(const char* name, int xi, const char* const* measures, size_t measure_count,
                             vb_format format, int precision, char** out) {
  return guard([&] {
    tables::ScenarioOptions options;
    options.measures = specs(measures, measure_count);
    options.xi = xi;
    emit(tables::scenario_report(need_str(name, "name"), options), format, precision, out);
  });
}

vb_status vb_scenario_export(const char* name, int xi, const char* out_dir, char** log) {
  return guard([&] {
    const std::string n = need_str(name, "name");
    const std::filesystem::path dir = need_str(out_dir, "out_dir");
    const auto pmfs = tables::scenario_pmfs(n, xi);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) throw io_error("cannot create '" + dir.string() + "'");
    std::string lines;
    for (const auto& p : pmfs) {
      std::ostringstream content;
      write_pmf_csv(p.pmf, content);
      const auto path = dir / (n + "_" + p.name + ".csv");
      report::write_file_atomic(path, content.str());
      lines += path.string() + "\n";
    }
    if (log != nullptr) *log = dup(lines);
  });
}

vb_status vb_survey_read(const char* path, vb_survey_kind kind, vb_survey** out) {
  return guard([&] {
    if (kind != VB_SURVEY_LONDON && kind != VB_SURVEY_VOLVIS) throw validation_error("unknown survey kind");
    const SurveyKind k = kind == VB_SURVEY_LONDON ? SurveyKind::london : SurveyKind::volvis;
    need(out, "out") = new vb_survey{parse_survey(need_str(path, "path"), k)};
  });
}

void vb_survey_free(vb_survey* survey) { delete survey; }

size_t vb_survey_size(const vb_survey* survey) {
  if (survey == nullptr) return 0;
  return std::visit([](const auto& r) { return r.size(); }, survey->records);
}

vb_status vb_survey_question_stats(const vb_survey* survey, int question, double* mean, double* min, double* max,
                                   double* mean_time) {
  return guard([&] {
    const auto* records = std::get_if<std::vector<LondonRecord>>(&need(survey, "survey").records);
    if (records == nullptr) throw validation_error("question statistics need a London survey");
    const QuestionStats s = question_stats(*records, question);
    if (mean != nullptr) *mean = s.mean;
    if (min != nullptr) *min = s.min;
    if (max != nullptr) *max = s.max;
    if (mean_time != nullptr) *mean_time = s.mean_time;
  });
}

vb_status vb_report_survey(const vb_survey* survey, const char* overrides_path, const char* const* measures,
                           size_t measure_count, vb_format format, int precision, char** out) {
  return guard([&] {
    const auto& s = need(survey, "survey");
    if (const auto* london = std::get_if<std::vector<LondonRecord>>(&s.records)) {
      const CategoryOverrides overrides = overrides_path != nullptr ? read_overrides(overrides_path) : CategoryOverrides{};
      emit(tables::london_survey_report(*london, overrides, specs(measures, measure_count)), format, precision, out);
    } else {
      emit(tables::volvis_survey_report(std::get<std::vector<VolVisRecord>>(s.records)), format, precision, out);
    }
  });
}

vb_status vb_criteria_table_builtin(vb_criteria_table** out) {
  return guard([&] { need(out, "out") = new vb_criteria_table{mcda::reference_table()}; });
}

vb_status vb_criteria_table_read(const char* path, vb_criteria_table** out) {
  return guard([&] { need(out, "out") = new vb_criteria_table{mcda::read_criteria_table(need_str(path, "path"))}; });
}

void vb_criteria_table_free(vb_criteria_table* table) { delete table; }

size_t vb_criteria_table_measures(const vb_criteria_table* table) {
  return table == nullptr ? 0 : table->table.measures.size();
}

vb_status vb_mcda_stage_sums(const vb_criteria_table* table, const char* range, int* sums, int* present) {
  return guard([&] {
    const auto& t = need(table, "table").table;
    const auto result = mcda::stage_sums(t, mcda::parse_stage_range(t, need_str(range, "range")));
    need(sums, "sums");
    need(present, "present");
    for (size_t i = 0; i < result.size(); ++i) {
      present[i] = result[i] ? 1 : 0;
      sums[i] = result[i].value_or(0);
    }
  });
}

vb_status vb_report_mcda(const vb_criteria_table* table, const char* weights, vb_format format, int precision,
                         char** out) {
  return guard([&] {
    std::optional<mcda::ImportanceWeights> w;
    if (weights != nullptr) w = mcda::ImportanceWeights::parse(weights);
    emit(tables::mcda_report(need(table, "table").table, w), format, precision, out);
  });
}

vb_status vb_grid_paths(int n, int max_turn, const char* directions, int monotone, int max_bends, uint64_t* count) {
  return guard([&] {
    need(count, "count") = enumerate_grid_paths(n, grid_rules(max_turn, directions, monotone, max_bends), 0).count;
  });
}

vb_status vb_report_grid_paths(int n, int max_turn, const char* directions, int monotone, int max_bends,
                               int list_paths, vb_format format, int precision, char** out) {
  return guard([&] {
    const auto result =
        enumerate_grid_paths(n, grid_rules(max_turn, directions, monotone, max_bends), list_paths ? 10000 : 0);
    emit(tables::grid_paths_report(result, list_paths != 0), format, precision, out);
  });
}

vb_status vb_reproduce(const char* data_dir, const char* out_dir, int* failures, char** log) {
  return guard([&] {
    const auto outcome = reproduce::reproduce(need_str(data_dir, "data_dir"), need_str(out_dir, "out_dir"));
    need(failures, "failures") = outcome.failures;
    if (log != nullptr) {
      std::string lines;
      for (const auto& l : outcome.log) lines += l + "\n";
      *log = dup(lines);
    }
  });
}

}  // extern "C"
