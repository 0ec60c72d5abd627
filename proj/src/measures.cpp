#include "visbench/measures.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <numbers>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_same_length(const Pmf& p, const Pmf& q) {
  if (p.size() != q.size()) {
    throw validation_error("PMFs have different alphabet sizes (" + std::to_string(p.size()) +
                           " vs " + std::to_string(q.size()) + ")");
  }
}

void require_positive_k(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) throw validation_error("exponent k must be positive");
}

// log2(|d|^k + 1) without losing precision for tiny |d|^k.
double log2_gap(double d, double k) {
  return std::log1p(std::pow(std::abs(d), k)) / std::numbers::ln2;
}

double sum_of(const std::vector<double>& terms) {
  double total = 0.0;
  for (double t : terms) total += t;
  return total;
}

std::string format_param(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

}  // namespace

void DivergenceSpec::validate() const {
  require_positive_k(k);
  if (!(scale > 0.0) || !std::isfinite(scale)) throw validation_error("scale must be positive");
  if (family == Family::minkowski && k < 1.0) {
    throw validation_error("Minkowski exponent must be >= 1");
  }
}

bool DivergenceSpec::bounded() const noexcept {
  return family == Family::js || family == Family::dnew || family == Family::dncm;
}

std::string DivergenceSpec::label() const {
  std::string out;
  switch (family) {
    case Family::kl: out = "kl"; break;
    case Family::js: out = "js"; break;
    case Family::dnew: out = "new:" + format_param(k); break;
    case Family::dncm: out = "ncm:" + format_param(k); break;
    case Family::minkowski: out = "mink:" + format_param(k); break;
  }
  if (scale != 1.0) out += "@" + format_param(scale);
  return out;
}

DivergenceSpec DivergenceSpec::parse(std::string_view text) {
  const std::string original(text);
  DivergenceSpec spec;
  if (const auto at = text.find('@'); at != std::string_view::npos) {
    spec.scale = csv::parse_double(text.substr(at + 1), "measure scale in '" + original + "'");
    text = text.substr(0, at);
  }
  std::string_view name = text;
  std::string_view param;
  bool has_param = false;
  if (const auto colon = text.find(':'); colon != std::string_view::npos) {
    name = text.substr(0, colon);
    param = text.substr(colon + 1);
    has_param = true;
  }
  if (name == "kl" || name == "js") {
    if (has_param) throw validation_error("measure '" + original + "' takes no exponent");
    spec.family = name == "kl" ? Family::kl : Family::js;
  } else if (name == "new" || name == "ncm" || name == "mink") {
    if (!has_param) throw validation_error("measure '" + original + "' needs an exponent, e.g. new:2");
    spec.family = name == "new" ? Family::dnew : name == "ncm" ? Family::dncm : Family::minkowski;
    spec.k = csv::parse_double(param, "measure exponent in '" + original + "'");
  } else {
    throw validation_error("unknown measure '" + original +
                           "' (expected kl, js, new:<k>, ncm:<k> or mink:<k>)");
  }
  spec.validate();
  return spec;
}

bool Decomposition::finite() const noexcept { return std::isfinite(total); }

double entropy(const Pmf& p) {
  double h = 0.0;
  for (double pi : p.probs()) {
    if (pi > 0.0) h -= pi * std::log2(pi);
  }
  return h;
}

double max_entropy(std::size_t n) {
  if (n == 0) throw validation_error("max_entropy: alphabet size must be positive");
  return std::log2(static_cast<double>(n));
}

double cross_entropy(const Pmf& p, const Pmf& q) {
  require_same_length(p, q);
  double h = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return kInf;
    h -= p[i] * std::log2(q[i]);
  }
  return h;
}

Decomposition kl_terms(const Pmf& p, const Pmf& q) {
  require_same_length(p, q);
  Decomposition d;
  d.per_letter.assign(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (q[i] == 0.0) return Decomposition{{}, kInf};
    d.per_letter[i] = p[i] * std::log2(p[i] / q[i]);
  }
  d.total = sum_of(d.per_letter);
  return d;
}

double kl(const Pmf& p, const Pmf& q) { return kl_terms(p, q).total; }

Decomposition js(const Pmf& p, const Pmf& q) {
  require_same_length(p, q);
  Decomposition d;
  d.per_letter.assign(p.size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double m = p[i] + q[i];
    double term = 0.0;
    if (p[i] > 0.0) term += p[i] * std::log2(2.0 * p[i] / m);
    if (q[i] > 0.0) term += q[i] * std::log2(2.0 * q[i] / m);
    d.per_letter[i] = 0.5 * term;
  }
  d.total = sum_of(d.per_letter);
  return d;
}

Decomposition d_new(const Pmf& p, const Pmf& q, double k) {
  require_same_length(p, q);
  require_positive_k(k);
  Decomposition d;
  d.per_letter.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    d.per_letter[i] = 0.5 * (p[i] + q[i]) * log2_gap(p[i] - q[i], k);
  }
  d.total = sum_of(d.per_letter);
  return d;
}

Decomposition d_ncm(const Pmf& p, const Pmf& q, double k) {
  require_same_length(p, q);
  require_positive_k(k);
  Decomposition d;
  d.per_letter.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    d.per_letter[i] = p[i] * log2_gap(p[i] - q[i], k);
  }
  d.total = sum_of(d.per_letter);
  return d;
}

namespace {

// Terms (|d_i|/max)^k and the max, so large k does not underflow to zero.
std::pair<std::vector<double>, double> minkowski_parts(const Pmf& p, const Pmf& q, double k) {
  require_same_length(p, q);
  if (!(k >= 1.0) || !std::isfinite(k)) throw validation_error("Minkowski exponent must be >= 1");
  double largest = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) largest = std::max(largest, std::abs(p[i] - q[i]));
  std::vector<double> terms(p.size(), 0.0);
  if (largest == 0.0) return {terms, 0.0};
  for (std::size_t i = 0; i < p.size(); ++i) terms[i] = std::pow(std::abs(p[i] - q[i]) / largest, k);
  return {terms, largest};
}

}  // namespace

double minkowski(const Pmf& p, const Pmf& q, double k) {
  const auto [terms, largest] = minkowski_parts(p, q, k);
  if (largest == 0.0) return 0.0;
  return largest * std::pow(sum_of(terms), 1.0 / k);
}

Decomposition divergence(const DivergenceSpec& spec, const Pmf& p, const Pmf& q) {
  spec.validate();
  Decomposition d;
  switch (spec.family) {
    case Family::kl: d = kl_terms(p, q); break;
    case Family::js: d = js(p, q); break;
    case Family::dnew: d = d_new(p, q, spec.k); break;
    case Family::dncm: d = d_ncm(p, q, spec.k); break;
    case Family::minkowski: {
      const auto [terms, largest] = minkowski_parts(p, q, spec.k);
      const double weight = sum_of(terms);
      d.total = largest == 0.0 ? 0.0 : largest * std::pow(weight, 1.0 / spec.k);
      d.per_letter.resize(terms.size(), 0.0);
      if (weight > 0.0) {
        for (std::size_t i = 0; i < terms.size(); ++i) d.per_letter[i] = terms[i] / weight * d.total;
      }
      break;
    }
  }
  if (spec.scale != 1.0) {
    for (double& t : d.per_letter) t *= spec.scale;
    d.total *= spec.scale;
  }
  return d;
}

std::vector<DivergenceSpec> candidate_measures() {
  return {{Family::js, 1.0, 1.0},
          {Family::dnew, 1.0, 1.0},
          {Family::dnew, 2.0, 1.0},
          {Family::dncm, 1.0, 1.0},
          {Family::dncm, 2.0, 1.0}};
}

}  // namespace visbench
