#include "visbench/pmf.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <set>

#include "visbench/csv.hpp"
#include "visbench/errors.hpp"

namespace visbench {

namespace {

void validate_and_normalise(std::vector<double>& probs) {
  if (probs.empty()) throw validation_error("PMF must have at least one letter");
  double sum = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    const double p = probs[i];
    if (!std::isfinite(p) || p < 0.0) {
      throw validation_error("PMF probability " + std::to_string(i + 1) +
                             " is negative or not finite");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > kSumTolerance) {
    throw validation_error("PMF probabilities sum to " + std::to_string(sum) + ", not 1");
  }
  if (sum != 1.0) {
    for (double& p : probs) p /= sum;
  }
}

}  // namespace

std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  labels.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) labels.push_back(std::to_string(i));
  return labels;
}

Pmf::Pmf(std::vector<double> probs) : labels_(numbered_labels(probs.size())), probs_(std::move(probs)) {
  validate_and_normalise(probs_);
}

Pmf::Pmf(std::vector<std::string> labels, std::vector<double> probs)
    : labels_(std::move(labels)), probs_(std::move(probs)) {
  if (labels_.size() != probs_.size()) {
    throw validation_error("PMF has " + std::to_string(labels_.size()) + " labels but " +
                           std::to_string(probs_.size()) + " probabilities");
  }
  std::set<std::string_view> seen;
  for (const auto& l : labels_) {
    if (!seen.insert(l).second) throw validation_error("duplicate PMF label '" + l + "'");
  }
  validate_and_normalise(probs_);
}

std::size_t Pmf::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return labels_.size();
}

bool Pmf::same_alphabet(const Pmf& other) const { return labels_ == other.labels_; }

Pmf one_hot(std::size_t n, std::size_t index) {
  if (n == 0) throw validation_error("one_hot: alphabet size must be positive");
  if (index < 1 || index > n) {
    throw validation_error("one_hot: index " + std::to_string(index) + " outside [1, " +
                           std::to_string(n) + "]");
  }
  std::vector<double> probs(n, 0.0);
  probs[index - 1] = 1.0;
  return Pmf(std::move(probs));
}

Pmf one_hot(const Pmf& alphabet, std::size_t index) {
  const Pmf base = one_hot(alphabet.size(), index);
  return Pmf(alphabet.labels(), std::vector<double>(base.probs().begin(), base.probs().end()));
}

Pmf parse_pmf_csv(std::string_view text) {
  const csv::Document doc = csv::parse(text);
  if (doc.header != csv::Row{"index", "label", "probability"}) {
    throw validation_error("PMF CSV header must be 'index,label,probability'");
  }
  if (doc.rows.empty()) throw validation_error("PMF CSV has no letters");
  std::vector<std::string> labels;
  std::vector<double> probs;
  for (std::size_t r = 0; r < doc.rows.size(); ++r) {
    const auto& row = doc.rows[r];
    const std::string where = "line " + std::to_string(doc.line_numbers[r]);
    if (row.size() != 3) throw validation_error(where + ": expected 3 columns");
    const long long index = csv::parse_int(row[0], where + " column 'index'");
    if (index != static_cast<long long>(r + 1)) {
      throw validation_error(where + ": index " + std::to_string(index) + " out of sequence");
    }
    labels.push_back(csv::trim(row[1]));
    probs.push_back(csv::parse_double(row[2], where + " column 'probability'"));
  }
  return Pmf(std::move(labels), std::move(probs));
}

Pmf read_pmf_csv(const std::filesystem::path& path) {
  const std::string text = csv::read_file(path);
  try {
    return parse_pmf_csv(text);
  } catch (const validation_error& e) {
    throw validation_error(path.string() + ": " + e.what());
  }
}

void write_pmf_csv(const Pmf& pmf, std::ostream& out) {
  out << "index,label,probability\n";
  char buf[64];
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    // Shortest round-trip representation.
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, pmf[i]);
    (void)ec;
    out << (i + 1) << ',' << csv::escape(pmf.label(i)) << ',' << std::string_view(buf, ptr - buf)
        << '\n';
  }
}

}  // namespace visbench
