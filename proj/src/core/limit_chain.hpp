#ifndef GRAPHDYN_CORE_LIMIT_CHAIN_HPP
#define GRAPHDYN_CORE_LIMIT_CHAIN_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "discrete_chain.hpp"
#include "graph.hpp"
#include "kernels.hpp"

namespace graphdyn {

// Truncated subgraph-density vector. Level k holds one value per labeled
// graph on [k], indexed by adjacency code (bit b of the code is the pair
// with pair_index b); level k therefore has 2^C(k,2) entries.
class GraphLimitVector {
 public:
  GraphLimitVector(int max_level, std::vector<std::vector<double>> levels,
                   std::vector<bool> exact);

  [[nodiscard]] int max_level() const { return max_level_; }
  [[nodiscard]] const std::vector<double>& level(int k) const;
  [[nodiscard]] bool level_exact(int k) const;
  [[nodiscard]] double value(int k, std::uint64_t code) const;

  void set_level(int k, std::vector<double> values, bool exact);

 private:
  int max_level_;
  std::vector<std::vector<double>> levels_;  // levels_[k-1]
  std::vector<bool> exact_;
};

std::size_t level_state_count(int k);

// Densities of every motif on [k], k <= max_level, by a single sweep over
// injections per level (each injection contributes to exactly one motif, so
// the level histogram is exactly consistent).
GraphLimitVector empirical_limit(const FiniteGraph& g, int max_level);

// Row-stochastic transition array at one level: entry (F, F') is the chance
// that a kernel-drawn map carries F to F'.
class RewiringLimitMatrix {
 public:
  RewiringLimitMatrix(int level, std::vector<std::vector<double>> rows, bool exact);

  static RewiringLimitMatrix identity(int level);

  [[nodiscard]] int level() const { return level_; }
  [[nodiscard]] bool exact() const { return exact_; }
  [[nodiscard]] std::size_t states() const { return rows_.size(); }
  [[nodiscard]] const std::vector<double>& row(std::uint64_t code) const;
  [[nodiscard]] double entry(std::uint64_t from, std::uint64_t to) const;

 private:
  int level_;
  bool exact_;
  std::vector<std::vector<double>> rows_;
};

// Exact product form for constant-cell kernels; Monte Carlo otherwise
// (sample maps at size `level` and tally row transitions). Level <= 4.
RewiringLimitMatrix kernel_limit_matrix(const RewiringKernel& kappa, int level, int samples,
                                        std::optional<RngStream> rng = {});

std::vector<double> act(const std::vector<double>& level_values, const RewiringLimitMatrix& m);

RewiringLimitMatrix matrix_product(const RewiringLimitMatrix& a, const RewiringLimitMatrix& b);

// Total-variation-style distance on one level: sum of absolute differences.
double level_distance(const std::vector<double>& a, const std::vector<double>& b);

struct StepDiscrepancy {
  int step = 0;
  std::vector<double> per_level;  // max abs difference, levels 2..max_level
  double max_abs = 0.0;
};

struct PredictionReport {
  int max_level = 0;
  std::vector<StepDiscrepancy> steps;
  double overall_max = 0.0;
};

// Compares the empirical density path of a retained trajectory against the
// matrix-product prediction chained from the kernels drawn at each step.
// Levels 2..max_level, max_level <= 3. Monte Carlo matrix estimation uses
// `samples` draws per distinct kernel (exact kernels ignore it).
PredictionReport predict_vs_empirical(const Trajectory& traj, int max_level, int samples,
                                      RngStream rng);

}  // namespace graphdyn

#endif
