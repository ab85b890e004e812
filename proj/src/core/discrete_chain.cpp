#include "discrete_chain.hpp"

#include <cmath>
#include <stdexcept>

namespace graphdyn {

namespace {

// Per-step stream roles under root.split(step).
constexpr std::uint64_t kChoiceRole = 0;
constexpr std::uint64_t kMapRole = 1;

constexpr double kWeightTolerance = 1e-12;

}  // namespace

KernelMixture KernelMixture::single(RewiringKernel k) {
  KernelMixture mix;
  mix.weights = {1.0};
  mix.kernels = {std::move(k)};
  return mix;
}

void KernelMixture::validate() const {
  if (weights.empty() || weights.size() != kernels.size())
    throw std::invalid_argument("KernelMixture: weights and kernels must align and be non-empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("KernelMixture: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kWeightTolerance)
    throw std::invalid_argument("KernelMixture: weights must sum to 1");
}

int KernelMixture::sample_index(RngStream rng) const {
  return static_cast<int>(rng.next_index(weights));
}

void DiscreteChainConfig::validate() const {
  if (n < 1) throw std::invalid_argument("DiscreteChainConfig: n must be positive");
  if (steps < 0) throw std::invalid_argument("DiscreteChainConfig: steps must be nonnegative");
  mixture.validate();
}

Trajectory::Trajectory(std::vector<FiniteGraph> states, std::vector<DiscreteStepRecord> records,
                       std::shared_ptr<const KernelMixture> mixture, std::uint64_t seed)
    : states_(std::move(states)), records_(std::move(records)), mixture_(std::move(mixture)), seed_(seed) {
  if (states_.empty() || states_.size() != records_.size() + 1)
    throw std::invalid_argument("Trajectory: need steps+1 states");
}

const FiniteGraph& Trajectory::state(int step) const {
  if (step < 0 || step >= static_cast<int>(states_.size()))
    throw std::invalid_argument("Trajectory: step out of range");
  return states_[static_cast<std::size_t>(step)];
}

const DiscreteStepRecord& Trajectory::record(int step) const {
  if (step < 1 || step > steps()) throw std::invalid_argument("Trajectory: step record out of range");
  return records_[static_cast<std::size_t>(step - 1)];
}

bool Trajectory::retained() const {
  return !records_.empty() && records_.front().map.has_value();
}

Trajectory run_chain(const DiscreteChainConfig& config, const FiniteGraph& g0) {
  config.validate();
  if (g0.order() != config.n)
    throw std::invalid_argument("run_chain: initial graph order does not match config");
  RngStream root(config.seed);
  std::vector<FiniteGraph> states;
  states.reserve(static_cast<std::size_t>(config.steps) + 1);
  states.push_back(g0);
  std::vector<DiscreteStepRecord> records;
  records.reserve(static_cast<std::size_t>(config.steps));
  for (int m = 1; m <= config.steps; ++m) {
    auto sm = root.split(static_cast<std::uint64_t>(m));
    int k = config.mixture.sample_index(sm.split(kChoiceRole));
    RewiringMap w = sample_rewiring(config.mixture.kernels[static_cast<std::size_t>(k)], config.n,
                                    sm.split(kMapRole));
    states.push_back(apply(w, states.back()));
    DiscreteStepRecord rec;
    rec.kernel_index = k;
    if (config.retain_maps) rec.map = std::move(w);
    records.push_back(std::move(rec));
  }
  return Trajectory(std::move(states), std::move(records),
                    std::make_shared<KernelMixture>(config.mixture), config.seed);
}

namespace {

void transition_counts(const FiniteGraph& from, const FiniteGraph& to, int counts[2][2]) {
  counts[0][0] = counts[0][1] = counts[1][0] = counts[1][1] = 0;
  const auto& a = from.bits();
  const auto& b = to.bits();
  for (std::size_t idx = 0; idx < a.size(); ++idx) ++counts[a[idx]][b[idx]];
}

}  // namespace

double reversible_transition_prob(double alpha, double beta, const FiniteGraph& from,
                                  const FiniteGraph& to) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("reversible_transition_prob: parameters must be positive");
  if (from.order() != to.order())
    throw std::invalid_argument("reversible_transition_prob: graphs must have equal order");
  int c[2][2];
  transition_counts(from, to, c);
  return rising_factorial(alpha, c[0][0]) * rising_factorial(beta, c[0][1]) *
         rising_factorial(beta, c[1][0]) * rising_factorial(alpha, c[1][1]) /
         (rising_factorial(alpha + beta, c[0][0] + c[0][1]) *
          rising_factorial(alpha + beta, c[1][0] + c[1][1]));
}

double reversible_stationary_prob(double alpha, double beta, const FiniteGraph& F) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("reversible_stationary_prob: parameters must be positive");
  auto n1 = static_cast<int>(F.edge_count());
  auto n0 = static_cast<int>(F.bits().size()) - n1;
  return rising_factorial(alpha + beta, n0) * rising_factorial(alpha + beta, n1) /
         rising_factorial(2 * alpha + 2 * beta, n0 + n1);
}

}  // namespace graphdyn
