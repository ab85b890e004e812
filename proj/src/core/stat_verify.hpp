#ifndef GRAPHDYN_CORE_STAT_VERIFY_HPP
#define GRAPHDYN_CORE_STAT_VERIFY_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "graph.hpp"

namespace graphdyn {

struct TestReport {
  std::string name;
  double statistic = 0.0;
  double threshold = 0.0;
  bool passed = false;
  std::vector<std::int64_t> sample_sizes;
  std::uint64_t seed = 0;
  std::string details;

  [[nodiscard]] nlohmann::json to_json() const;
};

std::string report_table(std::span<const TestReport> reports);

// Exact detailed-balance residual of the Beta-mixture rewiring family at
// truncation n (2 or 3): max |pi(F) P(F,F') - pi(F') P(F',F)| over all state
// pairs, compared against 1e-12. `perturbation` is a fault-injection control
// added to one transition entry.
TestReport check_detailed_balance(double alpha, double beta, int n, double perturbation = 0.0);

// Marginalizes the exact n=3 transition matrix over extensions to [2] and
// compares with the n=2 formula, tolerance 1e-12.
TestReport check_consistency(double alpha, double beta, double perturbation = 0.0);

enum class ExchangeabilityKind {
  kProductErKernel,    // one step of the product-coin rewiring chain
  kVertexUpdate,       // vertex-resampling-only jump process over a short horizon
  kEdgeBiasedControl,  // toggles pair {1,2} only: deliberately not exchangeable
};

// Two-sample chi-square between the one-step law started from a reference
// graph on [3] and the relabeled law started from its relabeling, over all 8
// states, for several permutations with Bonferroni correction at level 0.01.
TestReport check_exchangeability(ExchangeabilityKind kind, int replicates, std::uint64_t seed);

// Terminal mean edge density of the product-coin chain across replicates
// must fall within 4 standard errors of p0/(1-p1+p0).
TestReport check_er_stationarity(double p0, double p1, int n, int steps, int replicates,
                                 std::uint64_t seed);

// Chi-square goodness of fit of graphon-sampled graphs on [3] against the
// independent-edge law with parameter p_null; sampling uses p_sample, so a
// mismatch acts as the fault-injection control.
TestReport check_er_law(double p_sample, double p_null, int samples, std::uint64_t seed);

// Same for the Beta mixture law.
TestReport check_beta_law(double alpha_sample, double beta_sample, double alpha_null,
                          double beta_null, int samples, std::uint64_t seed);

// Upper-tail p-value of a chi-square statistic.
double chi_square_pvalue(double statistic, int df);

}  // namespace graphdyn

#endif
