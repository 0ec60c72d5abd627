#include "visbench/benefit.hpp"

#include <cmath>
#include <limits>
#include <map>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench {

void TransformCase::validate() const {
  if (!recon.same_alphabet(input)) {
    throw validation_error("reconstruction PMF must use the input alphabet (same letters, same order)");
  }
}

double alphabet_compression(const TransformCase& c) { return entropy(c.input) - entropy(c.output); }

BenefitResult benefit_kl(const TransformCase& c) {
  c.validate();
  BenefitResult r;
  r.measure = {Family::kl, 1.0, 1.0};
  r.ac = alphabet_compression(c);
  r.hmax = max_entropy(c.input.size());
  r.pd = kl(c.recon, c.input);
  r.benefit = std::isfinite(r.pd) ? r.ac - r.pd : -std::numeric_limits<double>::infinity();
  return r;
}

BenefitResult benefit_bounded(const TransformCase& c, const DivergenceSpec& spec) {
  c.validate();
  if (spec.family == Family::kl) {
    throw validation_error("bounded benefit needs a bounded measure; use benefit_kl for KL");
  }
  BenefitResult r;
  r.measure = spec;
  r.ac = alphabet_compression(c);
  r.hmax = max_entropy(c.input.size());
  r.pd = r.hmax * divergence(spec, c.recon, c.input).total;
  r.benefit = r.ac - r.pd;
  return r;
}

BenefitResult evaluate_benefit(const TransformCase& c, const DivergenceSpec& spec) {
  if (spec.family != Family::kl) return benefit_bounded(c, spec);
  spec.validate();
  BenefitResult r = benefit_kl(c);
  if (spec.scale != 1.0 && std::isfinite(r.pd)) {
    r.pd *= spec.scale;
    r.benefit = r.ac - r.pd;
  }
  r.measure = spec;
  return r;
}

double cost_benefit_ratio(double benefit, double cost) {
  if (!(cost > 0.0) || !std::isfinite(cost)) throw validation_error("cost must be a positive number");
  return benefit / cost;
}

double cost_benefit_ratio(const BenefitResult& b, double cost) { return cost_benefit_ratio(b.benefit, cost); }

CaseManifest read_case_manifest(const std::filesystem::path& path) {
  const std::string text = csv::read_file(path);
  std::map<std::string, std::string> entries;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string line = csv::trim(text.substr(pos, nl == std::string::npos ? std::string::npos : nl - pos));
    pos = nl == std::string::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw validation_error(path.string() + ": line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = csv::trim(line.substr(0, eq));
    if (!entries.emplace(key, csv::trim(line.substr(eq + 1))).second) {
      throw validation_error(path.string() + ": duplicate key '" + key + "'");
    }
  }
  for (const auto& [key, value] : entries) {
    if (key != "input" && key != "output" && key != "recon" && key != "measure" && key != "cost" &&
        key != "cost_unit") {
      throw validation_error(path.string() + ": unknown key '" + key + "'");
    }
  }
  const auto base = path.parent_path();
  auto load = [&](const char* key) {
    const auto it = entries.find(key);
    if (it == entries.end()) throw validation_error(path.string() + ": missing key '" + key + "'");
    std::filesystem::path p = it->second;
    return read_pmf_csv(p.is_absolute() ? p : base / p);
  };
  CaseManifest m{TransformCase{load("input"), load("output"), load("recon")}, std::nullopt, std::nullopt, "s"};
  m.transform.validate();
  if (auto it = entries.find("measure"); it != entries.end()) m.measure = DivergenceSpec::parse(it->second);
  if (auto it = entries.find("cost"); it != entries.end()) {
    m.cost = csv::parse_double(it->second, "manifest cost");
    if (!(*m.cost > 0.0)) throw validation_error(path.string() + ": cost must be positive");
  }
  if (auto it = entries.find("cost_unit"); it != entries.end()) m.cost_unit = it->second;
  return m;
}

}  // namespace visbench
