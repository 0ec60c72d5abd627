#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace visbench {

/// Absolute tolerance on the probability sum of a PMF.
inline constexpr double kSumTolerance = 1e-9;

/// A probability mass function over an ordered, labelled alphabet.
///
/// Construction validates that every probability is finite and non-negative
/// and that the sum is within kSumTolerance of 1; accepted inputs are then
/// renormalised by their actual sum. An alphabet has at least one letter.
class Pmf {
 public:
  /// Letters are labelled "1".."n".
  explicit Pmf(std::vector<double> probs);
  Pmf(std::vector<std::string> labels, std::vector<double> probs);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t i) const { return labels_[i]; }

  /// Index of the letter with the given label, or size() when absent.
  std::size_t find(std::string_view label) const;

  /// Same length and same labels in the same order.
  bool same_alphabet(const Pmf& other) const;

  friend bool operator==(const Pmf&, const Pmf&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<double> probs_;
};

/// Default labels "1".."n".
std::vector<std::string> numbered_labels(std::size_t n);

/// Degenerate PMF with all mass on letter `index` (1-based).
Pmf one_hot(std::size_t n, std::size_t index);

/// One-hot PMF that reuses the labels of `alphabet`; `index` is 1-based.
Pmf one_hot(const Pmf& alphabet, std::size_t index);

/// PMF file: header `index,label,probability`, one row per letter.
Pmf read_pmf_csv(const std::filesystem::path& path);
Pmf parse_pmf_csv(std::string_view text);
void write_pmf_csv(const Pmf& pmf, std::ostream& out);

}  // namespace visbench
