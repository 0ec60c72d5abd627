#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "visbench/pmf.hpp"

namespace visbench {

/// Divergence families. `dnew` and `dncm` are the bounded commutative and
/// non-commutative measures (1/2)Σ(p+q)log2(|p-q|^k+1) and Σ p log2(|p-q|^k+1).
enum class Family { kl, js, dnew, dncm, minkowski };

struct DivergenceSpec {
  Family family = Family::js;
  double k = 1.0;      ///< exponent; ignored for kl and js
  double scale = 1.0;  ///< multiplier applied to totals and per-letter terms

  /// Throws validation_error unless k > 0 and scale > 0 (and k >= 1 for minkowski).
  void validate() const;

  /// Command-line spelling: `kl`, `js`, `new:<k>`, `ncm:<k>`, `mink:<k>`, with
  /// an optional `@<scale>` suffix.
  std::string label() const;
  static DivergenceSpec parse(std::string_view text);

  /// JS, NEW and NCM are bounded by [0, scale].
  bool bounded() const noexcept;

  friend bool operator==(const DivergenceSpec&, const DivergenceSpec&) = default;
};

/// Per-letter contributions (bits) and their sum. An infinite KL total has
/// an empty per-letter list.
struct Decomposition {
  std::vector<double> per_letter;
  double total = 0.0;

  bool finite() const noexcept;
};

/// Shannon entropy in bits with 0 log 0 = 0.
double entropy(const Pmf& p);

/// log2 n. Throws for n = 0.
double max_entropy(std::size_t n);

/// -Σ p_i log2 q_i; +infinity when some p_i > 0 has q_i = 0.
double cross_entropy(const Pmf& p, const Pmf& q);

/// Σ p_i log2(p_i/q_i); terms with p_i = 0 vanish; +infinity when some
/// p_i > 0 has q_i = 0.
double kl(const Pmf& p, const Pmf& q);
Decomposition kl_terms(const Pmf& p, const Pmf& q);

Decomposition js(const Pmf& p, const Pmf& q);
Decomposition d_new(const Pmf& p, const Pmf& q, double k);
Decomposition d_ncm(const Pmf& p, const Pmf& q, double k);

/// (Σ|p_i - q_i|^k)^(1/k), k >= 1.
double minkowski(const Pmf& p, const Pmf& q, double k);

/// Dispatch over the family, scaled by spec.scale. Minkowski per-letter
/// terms are a proportional attribution of the total, for reporting only.
Decomposition divergence(const DivergenceSpec& spec, const Pmf& p, const Pmf& q);

/// The five bounded candidates compared throughout: JS, NEW k=1, NEW k=2,
/// NCM k=1, NCM k=2.
std::vector<DivergenceSpec> candidate_measures();

}  // namespace visbench
