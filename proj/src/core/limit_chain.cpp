#include "limit_chain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace graphdyn {

GraphLimitVector::GraphLimitVector(int max_level, std::vector<std::vector<double>> levels,
                                   std::vector<bool> exact)
    : max_level_(max_level), levels_(std::move(levels)), exact_(std::move(exact)) {
  if (max_level_ < 1) throw std::invalid_argument("GraphLimitVector: level cap must be positive");
  if (levels_.size() != static_cast<std::size_t>(max_level_) || exact_.size() != levels_.size())
    throw std::invalid_argument("GraphLimitVector: need one level vector per level");
  for (int k = 1; k <= max_level_; ++k)
    if (levels_[static_cast<std::size_t>(k - 1)].size() != level_state_count(k))
      throw std::invalid_argument("GraphLimitVector: level size mismatch");
}

const std::vector<double>& GraphLimitVector::level(int k) const {
  if (k < 1 || k > max_level_) throw std::invalid_argument("GraphLimitVector: level out of range");
  return levels_[static_cast<std::size_t>(k - 1)];
}

bool GraphLimitVector::level_exact(int k) const {
  if (k < 1 || k > max_level_) throw std::invalid_argument("GraphLimitVector: level out of range");
  return exact_[static_cast<std::size_t>(k - 1)];
}

double GraphLimitVector::value(int k, std::uint64_t code) const {
  const auto& lv = level(k);
  if (code >= lv.size()) throw std::invalid_argument("GraphLimitVector: code out of range");
  return lv[static_cast<std::size_t>(code)];
}

void GraphLimitVector::set_level(int k, std::vector<double> values, bool exact) {
  if (k < 1 || k > max_level_) throw std::invalid_argument("GraphLimitVector: level out of range");
  if (values.size() != level_state_count(k))
    throw std::invalid_argument("GraphLimitVector: level size mismatch");
  levels_[static_cast<std::size_t>(k - 1)] = std::move(values);
  exact_[static_cast<std::size_t>(k - 1)] = exact;
}

std::size_t level_state_count(int k) {
  if (k < 1) throw std::invalid_argument("level_state_count: level must be positive");
  if (pair_count(k) > 20) throw std::invalid_argument("level_state_count: level too large to enumerate");
  return std::size_t{1} << pair_count(k);
}

GraphLimitVector empirical_limit(const FiniteGraph& g, int max_level) {
  if (max_level < 1 || max_level > g.order())
    throw std::invalid_argument("empirical_limit: level cap must lie in [1, order]");
  if (max_level > 4)
    throw std::invalid_argument("empirical_limit: levels above 4 are not materialized");
  const int n = g.order();
  std::vector<std::vector<double>> levels;
  std::vector<bool> exact;
  for (int k = 1; k <= max_level; ++k) {
    const std::uint64_t total = falling_factorial(n, k);
    if (total > 2'000'000'000ULL)
      throw std::invalid_argument("empirical_limit: enumeration too large at this order");
    std::vector<std::uint64_t> hist(level_state_count(k), 0);
    for_each_injection(k, n, [&](std::span<const int> phi) {
      std::uint64_t code = 0;
      int bitpos = 0;
      for (int j = 2; j <= k; ++j)
        for (int i = 1; i < j; ++i, ++bitpos)
          if (g.edge(phi[static_cast<std::size_t>(i - 1)], phi[static_cast<std::size_t>(j - 1)]))
            code |= (std::uint64_t{1} << bitpos);
      ++hist[static_cast<std::size_t>(code)];
    });
    std::vector<double> values(hist.size());
    for (std::size_t c = 0; c < hist.size(); ++c)
      values[c] = static_cast<double>(hist[c]) / static_cast<double>(total);
    levels.push_back(std::move(values));
    exact.push_back(true);
  }
  return GraphLimitVector(max_level, std::move(levels), std::move(exact));
}

RewiringLimitMatrix::RewiringLimitMatrix(int level, std::vector<std::vector<double>> rows, bool exact)
    : level_(level), exact_(exact), rows_(std::move(rows)) {
  std::size_t states = level_state_count(level);
  if (rows_.size() != states) throw std::invalid_argument("RewiringLimitMatrix: row count mismatch");
  for (const auto& r : rows_)
    if (r.size() != states) throw std::invalid_argument("RewiringLimitMatrix: row size mismatch");
}

RewiringLimitMatrix RewiringLimitMatrix::identity(int level) {
  std::size_t states = level_state_count(level);
  std::vector<std::vector<double>> rows(states, std::vector<double>(states, 0.0));
  for (std::size_t s = 0; s < states; ++s) rows[s][s] = 1.0;
  return RewiringLimitMatrix(level, std::move(rows), true);
}

const std::vector<double>& RewiringLimitMatrix::row(std::uint64_t code) const {
  if (code >= rows_.size()) throw std::invalid_argument("RewiringLimitMatrix: code out of range");
  return rows_[static_cast<std::size_t>(code)];
}

double RewiringLimitMatrix::entry(std::uint64_t from, std::uint64_t to) const {
  const auto& r = row(from);
  if (to >= r.size()) throw std::invalid_argument("RewiringLimitMatrix: code out of range");
  return r[static_cast<std::size_t>(to)];
}

RewiringLimitMatrix kernel_limit_matrix(const RewiringKernel& kappa, int level, int samples,
                                        std::optional<RngStream> rng) {
  if (level < 2 || level > 4)
    throw std::invalid_argument("kernel_limit_matrix: level must lie in [2,4]");
  const std::size_t states = level_state_count(level);
  const std::size_t pairs = pair_count(level);
  std::vector<std::vector<double>> rows(states, std::vector<double>(states, 0.0));

  if (kappa.has_constant_cells()) {
    // Entries are i.i.d. across pairs, so each transition probability is a
    // product of per-pair relay marginals.
    const RuleDistribution& q = kappa.cell(0, 0);
    const double p_from0_to[2] = {q[0] + q[1], q[2] + q[3]};  // current bit 0 -> new bit {0,1}
    const double p_from1_to[2] = {q[0] + q[2], q[1] + q[3]};  // current bit 1 -> new bit {0,1}
    for (std::uint64_t from = 0; from < states; ++from) {
      for (std::uint64_t to = 0; to < states; ++to) {
        double p = 1.0;
        for (std::size_t b = 0; b < pairs; ++b) {
          int cur = static_cast<int>((from >> b) & 1u);
          int nxt = static_cast<int>((to >> b) & 1u);
          p *= cur == 0 ? p_from0_to[nxt] : p_from1_to[nxt];
        }
        rows[static_cast<std::size_t>(from)][static_cast<std::size_t>(to)] = p;
      }
    }
    return RewiringLimitMatrix(level, std::move(rows), true);
  }

  if (!rng.has_value())
    throw std::invalid_argument("kernel_limit_matrix: Monte Carlo estimation needs a random stream");
  if (samples < 1) throw std::invalid_argument("kernel_limit_matrix: need at least one sample");
  for (int s = 0; s < samples; ++s) {
    RewiringMap w = sample_rewiring(kappa, level, rng->split(static_cast<std::uint64_t>(s)));
    for (std::uint64_t from = 0; from < states; ++from) {
      FiniteGraph img = apply(w, FiniteGraph::from_code(level, from));
      rows[static_cast<std::size_t>(from)][static_cast<std::size_t>(img.code())] += 1.0;
    }
  }
  for (auto& r : rows)
    for (double& x : r) x /= samples;
  return RewiringLimitMatrix(level, std::move(rows), false);
}

std::vector<double> act(const std::vector<double>& level_values, const RewiringLimitMatrix& m) {
  if (level_values.size() != m.states())
    throw std::invalid_argument("act: vector level does not match matrix level");
  std::vector<double> out(level_values.size(), 0.0);
  for (std::size_t from = 0; from < level_values.size(); ++from) {
    const auto& row = m.row(from);
    for (std::size_t to = 0; to < out.size(); ++to) out[to] += level_values[from] * row[to];
  }
  return out;
}

RewiringLimitMatrix matrix_product(const RewiringLimitMatrix& a, const RewiringLimitMatrix& b) {
  if (a.level() != b.level()) throw std::invalid_argument("matrix_product: level mismatch");
  std::size_t states = a.states();
  std::vector<std::vector<double>> rows(states, std::vector<double>(states, 0.0));
  for (std::size_t i = 0; i < states; ++i)
    for (std::size_t k = 0; k < states; ++k) {
      double aik = a.entry(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < states; ++j) rows[i][j] += aik * b.entry(k, j);
    }
  return RewiringLimitMatrix(a.level(), std::move(rows), a.exact() && b.exact());
}

double level_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("level_distance: size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

PredictionReport predict_vs_empirical(const Trajectory& traj, int max_level, int samples,
                                      RngStream rng) {
  if (max_level < 2 || max_level > 3)
    throw std::invalid_argument("predict_vs_empirical: levels 2..3 are supported");
  if (traj.steps() > 0 && !traj.retained())
    throw std::invalid_argument("predict_vs_empirical: trajectory must retain its rewiring draws");

  // one matrix per (kernel index, level), estimated lazily
  std::map<std::pair<int, int>, RewiringLimitMatrix> matrices;
  auto matrix_for = [&](int kernel_index, int level) -> const RewiringLimitMatrix& {
    auto key = std::make_pair(kernel_index, level);
    auto it = matrices.find(key);
    if (it == matrices.end()) {
      const auto& kernel = traj.mixture().kernels[static_cast<std::size_t>(kernel_index)];
      auto sub = rng.split(static_cast<std::uint64_t>(kernel_index) * 8 + static_cast<std::uint64_t>(level));
      it = matrices.emplace(key, kernel_limit_matrix(kernel, level, samples, sub)).first;
    }
    return it->second;
  };

  PredictionReport report;
  report.max_level = max_level;
  GraphLimitVector d0 = empirical_limit(traj.state(0), max_level);
  std::vector<std::vector<double>> predicted;
  for (int k = 2; k <= max_level; ++k) predicted.push_back(d0.level(k));

  for (int m = 1; m <= traj.steps(); ++m) {
    int kernel_index = traj.record(m).kernel_index;
    StepDiscrepancy step;
    step.step = m;
    GraphLimitVector empirical = empirical_limit(traj.state(m), max_level);
    for (int k = 2; k <= max_level; ++k) {
      auto& pred = predicted[static_cast<std::size_t>(k - 2)];
      pred = act(pred, matrix_for(kernel_index, k));
      const auto& emp = empirical.level(k);
      double worst = 0.0;
      for (std::size_t c = 0; c < emp.size(); ++c)
        worst = std::max(worst, std::abs(emp[c] - pred[c]));
      step.per_level.push_back(worst);
      step.max_abs = std::max(step.max_abs, worst);
    }
    report.overall_max = std::max(report.overall_max, step.max_abs);
    report.steps.push_back(std::move(step));
  }
  return report;
}

}  // namespace graphdyn
