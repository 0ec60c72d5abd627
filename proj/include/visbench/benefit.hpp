#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "visbench/measures.hpp"
#include "visbench/pmf.hpp"

namespace visbench {

/// One cost-benefit evaluation unit: the ground-truth input alphabet, the
/// process output alphabet, and a viewer's reconstruction of the input.
struct TransformCase {
  Pmf input;
  Pmf output;
  Pmf recon;

  /// recon must share the input alphabet (same labels, same order).
  void validate() const;
};

struct BenefitResult {
  double ac = 0.0;       ///< alphabet compression, bits
  double pd = 0.0;       ///< potential distortion, bits (already scaled by hmax when bounded)
  double benefit = 0.0;  ///< ac - pd
  double hmax = 0.0;     ///< log2 |input alphabet|
  DivergenceSpec measure;
};

/// H(input) - H(output). Negative when the output is more uncertain.
double alphabet_compression(const TransformCase& c);

/// Benefit with the unbounded KL term: H(in) - H(out) - KL(recon || in).
/// An infinite KL gives benefit = -infinity.
BenefitResult benefit_kl(const TransformCase& c);

/// Benefit with a bounded replacement of KL:
/// H(in) - H(out) - log2|in| * D(recon || in). Rejects the KL family.
BenefitResult benefit_bounded(const TransformCase& c, const DivergenceSpec& spec);

/// benefit_kl for KL (honouring spec.scale), benefit_bounded otherwise.
BenefitResult evaluate_benefit(const TransformCase& c, const DivergenceSpec& spec);

/// benefit / cost. Throws for non-positive cost.
double cost_benefit_ratio(double benefit, double cost);
double cost_benefit_ratio(const BenefitResult& b, double cost);

/// A TransformCase described by a `key=value` manifest:
///   input=<pmf.csv>  output=<pmf.csv>  recon=<pmf.csv>
///   measure=<spelling>  cost=<positive real>  cost_unit=<text>   (optional)
/// Relative paths resolve against the manifest's directory.
struct CaseManifest {
  TransformCase transform;
  std::optional<DivergenceSpec> measure;
  std::optional<double> cost;
  std::string cost_unit = "s";
};

CaseManifest read_case_manifest(const std::filesystem::path& path);

}  // namespace visbench
