#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "visbench/visbench.h"

#ifndef VISBENCH_DEFAULT_DATA_DIR
#define VISBENCH_DEFAULT_DATA_DIR "data"
#endif

namespace {

// Thrown to unwind with the status of a failed library call.
struct call_failed {
  vb_status status;
};

void check(vb_status s) {
  if (s != VB_OK) throw call_failed{s};
}

// Owns a string returned by the library.
struct owned {
  char* p = nullptr;
  ~owned() { vb_string_free(p); }
  std::string str() const { return p == nullptr ? std::string() : std::string(p); }
};

struct pmf_handle {
  vb_pmf* p = nullptr;
  ~pmf_handle() { vb_pmf_free(p); }
};

struct Common {
  std::optional<std::string> format;
  std::optional<int> precision;
  std::string output;

  vb_format resolved_format() const {
    vb_format f = VB_FORMAT_CSV;
    if (format) check(vb_parse_format(format->c_str(), &f));
    return f;
  }

  int resolved_precision() const {
    if (precision) return *precision;
    int p = 3;
    check(vb_default_precision(&p));
    return p;
  }
};

int write_output(const Common& common, const std::string& text) {
  if (common.output.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream out(common.output, std::ios::binary | std::ios::trunc);
  if (!out || !out.write(text.data(), static_cast<std::streamsize>(text.size()))) {
    std::cerr << "error: cannot write '" << common.output << "'\n";
    return 2;
  }
  return 0;
}

std::vector<const char*> c_strings(const std::vector<std::string>& v) {
  std::vector<const char*> out;
  for (const auto& s : v) out.push_back(s.c_str());
  return out;
}

std::string number(double v, int precision) {
  owned s;
  check(vb_format_number(v, precision, &s.p));
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bounded divergence measures and information-theoretic cost-benefit analysis"};
  app.set_version_flag("--version", vb_version());
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--format", common.format, "Output format: csv, markdown or svg");
  app.add_option("--precision", common.precision, "Decimal places (0-12); default VISBENCH_PRECISION or 3")
      ->check(CLI::Range(0, 12));
  app.add_option("-o,--output", common.output, "Write the result to a file instead of stdout");

  std::vector<std::string> measures;

  auto* entropy_cmd = app.add_subcommand("entropy", "Entropy of PMF files");
  std::vector<std::string> entropy_files;
  entropy_cmd->add_option("files", entropy_files, "PMF CSV files")->required();

  auto* div_cmd = app.add_subcommand("divergence", "Divergence D(p || q) between two PMF files");
  std::string p_path;
  std::string q_path;
  bool decompose = false;
  div_cmd->add_option("--measure", measures, "Measure spelling, repeatable (default: the five bounded candidates)");
  div_cmd->add_option("--p", p_path, "PMF file p")->required();
  div_cmd->add_option("--q", q_path, "PMF file q")->required();
  div_cmd->add_flag("--decompose", decompose, "Add per-letter contributions");

  auto* benefit_cmd = app.add_subcommand("benefit", "Cost-benefit of a transform case manifest");
  std::string manifest;
  benefit_cmd->add_option("manifest", manifest, "Manifest file (input=, output=, recon=, ...)")->required();
  benefit_cmd->add_option("--measure", measures, "Measure spelling, repeatable");

  auto* scenario_cmd = app.add_subcommand("scenario", "Built-in scenarios");
  scenario_cmd->require_subcommand(1);
  auto* scenario_list = scenario_cmd->add_subcommand("list", "List scenario names");
  auto* scenario_run = scenario_cmd->add_subcommand("run", "Print the tables of a scenario");
  auto* scenario_export = scenario_cmd->add_subcommand("export", "Write the PMFs of a scenario as CSV files");
  std::string scenario_name;
  int xi = 20;
  std::string export_dir;
  for (auto* sub : {scenario_run, scenario_export}) {
    sub->add_option("name", scenario_name, "Scenario name")->required();
    sub->add_option("--xi", xi, "Peak of the London walking-time PMF, minutes");
  }
  scenario_run->add_option("--measure", measures, "Measure spelling, repeatable");
  scenario_export->add_option("--out", export_dir, "Output directory")->required();

  auto* survey_cmd = app.add_subcommand("survey", "Survey data");
  survey_cmd->require_subcommand(1);
  auto* survey_analyze = survey_cmd->add_subcommand("analyze", "Summarize a survey file");
  std::string kind;
  std::string survey_file;
  std::string overrides;
  survey_analyze->add_option("--kind", kind, "london or volvis")->required()->check(CLI::IsMember({"london", "volvis"}));
  survey_analyze->add_option("--file", survey_file, "Survey CSV file")->required();
  survey_analyze->add_option("--overrides", overrides, "Category overrides CSV (london)");
  survey_analyze->add_option("--measure", measures, "Measure spelling, repeatable");

  auto* mcda_cmd = app.add_subcommand("mcda", "Multi-criteria comparison of the measures");
  std::string weights;
  std::string table_file;
  mcda_cmd->add_option("--weights", weights, "critical=..,important=..,helpful=..");
  mcda_cmd->add_option("--table", table_file, "Criteria table CSV (default: built-in scores)");

  auto* grid_cmd = app.add_subcommand("grid-paths", "Count metro-line paths between two stations");
  int grid_n = 0;
  int max_turn = 90;
  std::string directions;
  bool non_monotone = false;
  int max_bends = -1;
  bool list = false;
  grid_cmd->add_option("--n", grid_n, "Grid size")->required();
  grid_cmd->add_option("--max-turn", max_turn, "Largest turn at a joint, degrees (multiple of 45)");
  grid_cmd->add_option("--directions", directions, "Allowed steps, e.g. e,ne,se");
  grid_cmd->add_flag("--non-monotone", non_monotone, "Allow steps that do not advance in x");
  grid_cmd->add_option("--max-bends", max_bends, "Cap on direction changes");
  grid_cmd->add_flag("--list", list, "List the paths");

  auto* repro_cmd = app.add_subcommand("reproduce", "Recompute every published value and write check files");
  std::string repro_out;
  std::string repro_data = VISBENCH_DEFAULT_DATA_DIR;
  repro_cmd->add_option("--out", repro_out, "Output directory")->required();
  repro_cmd->add_option("--data", repro_data, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e, std::cerr, std::cerr);
    std::cerr << app.help();
    return 1;
  }

  try {
    const auto ms = c_strings(measures);
    const char* const* mp = ms.empty() ? nullptr : ms.data();

    if (entropy_cmd->parsed()) {
      if (entropy_files.size() == 1 && !common.format) {
        pmf_handle p;
        check(vb_pmf_read(entropy_files[0].c_str(), &p.p));
        double h = 0;
        check(vb_entropy(p.p, &h));
        return write_output(common, number(h, common.resolved_precision()) + "\n");
      }
      const auto files = c_strings(entropy_files);
      owned out;
      check(vb_report_entropy(files.data(), files.size(), common.resolved_format(), common.resolved_precision(), &out.p));
      return write_output(common, out.str());
    }

    if (div_cmd->parsed()) {
      if (measures.size() == 1 && !decompose && !common.format) {
        pmf_handle p;
        pmf_handle q;
        check(vb_pmf_read(p_path.c_str(), &p.p));
        check(vb_pmf_read(q_path.c_str(), &q.p));
        double total = 0;
        check(vb_divergence(measures[0].c_str(), p.p, q.p, &total, nullptr, nullptr));
        return write_output(common, number(total, common.resolved_precision()) + "\n");
      }
      owned out;
      check(vb_report_divergence(mp, ms.size(), p_path.c_str(), q_path.c_str(), decompose ? 1 : 0,
                                 common.resolved_format(), common.resolved_precision(), &out.p));
      return write_output(common, out.str());
    }

    if (benefit_cmd->parsed()) {
      owned out;
      check(vb_report_benefit(manifest.c_str(), mp, ms.size(), common.resolved_format(), common.resolved_precision(),
                              &out.p));
      return write_output(common, out.str());
    }

    if (scenario_list->parsed()) {
      std::string names;
      for (size_t i = 0; i < vb_scenario_count(); ++i) names += std::string(vb_scenario_name(i)) + "\n";
      return write_output(common, names);
    }
    if (scenario_run->parsed()) {
      owned out;
      check(vb_report_scenario(scenario_name.c_str(), xi, mp, ms.size(), common.resolved_format(),
                               common.resolved_precision(), &out.p));
      return write_output(common, out.str());
    }
    if (scenario_export->parsed()) {
      owned log;
      check(vb_scenario_export(scenario_name.c_str(), xi, export_dir.c_str(), &log.p));
      std::cout << log.str();
      return 0;
    }

    if (survey_analyze->parsed()) {
      struct survey_handle {
        vb_survey* p = nullptr;
        ~survey_handle() { vb_survey_free(p); }
      } survey;
      check(vb_survey_read(survey_file.c_str(), kind == "london" ? VB_SURVEY_LONDON : VB_SURVEY_VOLVIS, &survey.p));
      owned out;
      check(vb_report_survey(survey.p, overrides.empty() ? nullptr : overrides.c_str(), mp, ms.size(),
                             common.resolved_format(), common.resolved_precision(), &out.p));
      return write_output(common, out.str());
    }

    if (mcda_cmd->parsed()) {
      struct table_handle {
        vb_criteria_table* p = nullptr;
        ~table_handle() { vb_criteria_table_free(p); }
      } table;
      if (table_file.empty()) {
        check(vb_criteria_table_builtin(&table.p));
      } else {
        check(vb_criteria_table_read(table_file.c_str(), &table.p));
      }
      owned out;
      check(vb_report_mcda(table.p, weights.empty() ? nullptr : weights.c_str(), common.resolved_format(),
                           common.resolved_precision(), &out.p));
      return write_output(common, out.str());
    }

    if (grid_cmd->parsed()) {
      owned out;
      check(vb_report_grid_paths(grid_n, max_turn, directions.empty() ? nullptr : directions.c_str(),
                                 non_monotone ? 0 : 1, max_bends, list ? 1 : 0, common.resolved_format(),
                                 common.resolved_precision(), &out.p));
      return write_output(common, out.str());
    }

    if (repro_cmd->parsed()) {
      int failures = 0;
      owned log;
      check(vb_reproduce(repro_data.c_str(), repro_out.c_str(), &failures, &log.p));
      std::cout << log.str() << failures << " failing checks\n";
      return 0;
    }
  } catch (const call_failed& e) {
    std::cerr << "error: " << vb_last_error_message() << '\n';
    switch (e.status) {
      case VB_ERR_VALIDATION: return 1;
      case VB_ERR_IO: return 2;
      default: return 3;
    }
  }
  return 0;
}
