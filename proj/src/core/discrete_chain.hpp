#ifndef GRAPHDYN_CORE_DISCRETE_CHAIN_HPP
#define GRAPHDYN_CORE_DISCRETE_CHAIN_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "graph.hpp"
#include "kernels.hpp"
#include "rewiring.hpp"

namespace graphdyn {

// Finite mixture of rewiring kernels; drives one i.i.d. map draw per step.
struct KernelMixture {
  std::vector<double> weights;
  std::vector<RewiringKernel> kernels;

  static KernelMixture single(RewiringKernel k);
  void validate() const;
  [[nodiscard]] int sample_index(RngStream rng) const;
};

struct DiscreteChainConfig {
  int n = 0;
  int steps = 0;
  KernelMixture mixture;
  std::uint64_t seed = 0;
  bool retain_maps = false;

  void validate() const;
};

struct DiscreteStepRecord {
  int kernel_index = 0;
  std::optional<RewiringMap> map;  // present when retention is on
};

// Dense snapshot trajectory: states_[m] is the chain after m steps.
class Trajectory {
 public:
  Trajectory(std::vector<FiniteGraph> states, std::vector<DiscreteStepRecord> records,
             std::shared_ptr<const KernelMixture> mixture, std::uint64_t seed);

  [[nodiscard]] int steps() const { return static_cast<int>(records_.size()); }
  [[nodiscard]] int order() const { return states_.front().order(); }
  [[nodiscard]] const FiniteGraph& state(int step) const;
  [[nodiscard]] const std::vector<FiniteGraph>& states() const { return states_; }
  [[nodiscard]] const DiscreteStepRecord& record(int step) const;
  [[nodiscard]] bool retained() const;
  [[nodiscard]] const KernelMixture& mixture() const { return *mixture_; }
  [[nodiscard]] std::uint64_t seed() const { return seed_; }

 private:
  std::vector<FiniteGraph> states_;
  std::vector<DiscreteStepRecord> records_;
  std::shared_ptr<const KernelMixture> mixture_;
  std::uint64_t seed_;
};

// Iterated-rewiring chain: per step, pick a mixture component, draw an
// exchangeable rewiring map from it, and apply. All randomness flows from
// the config seed through keyed streams, so runs at different truncation
// sizes with the same seed share every draw on common indices.
Trajectory run_chain(const DiscreteChainConfig& config, const FiniteGraph& g0);

// One-step transition probability of the Beta-mixture rewiring family.
// Both arguments must have the same order.
double reversible_transition_prob(double alpha, double beta, const FiniteGraph& from,
                                  const FiniteGraph& to);

// Stationary law of the same family.
double reversible_stationary_prob(double alpha, double beta, const FiniteGraph& F);

}  // namespace graphdyn

#endif
