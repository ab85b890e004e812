#include "kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace graphdyn {

namespace {

constexpr double kSimplexTolerance = 1e-12;

int cell_of(double u, int k) {
  auto c = static_cast<int>(u * k);
  return std::min(std::max(c, 0), k - 1);
}

}  // namespace

Graphon::Graphon(int resolution, std::vector<double> cells_row_major)
    : k_(resolution), cells_(std::move(cells_row_major)) {
  if (k_ < 1) throw std::invalid_argument("Graphon: resolution must be positive");
  if (cells_.size() != static_cast<std::size_t>(k_) * static_cast<std::size_t>(k_))
    throw std::invalid_argument("Graphon: grid must be k x k");
  for (int a = 0; a < k_; ++a) {
    for (int b = 0; b < k_; ++b) {
      double x = cells_[static_cast<std::size_t>(a) * k_ + b];
      if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("Graphon: cell values must lie in [0,1]");
      double y = cells_[static_cast<std::size_t>(b) * k_ + a];
      if (std::abs(x - y) > kSimplexTolerance) throw std::invalid_argument("Graphon: grid must be symmetric");
    }
  }
}

Graphon Graphon::constant(double p) { return Graphon(1, {p}); }

double Graphon::cell(int a, int b) const {
  if (a < 0 || b < 0 || a >= k_ || b >= k_) throw std::invalid_argument("Graphon: cell index out of range");
  return cells_[static_cast<std::size_t>(a) * k_ + b];
}

double Graphon::value(double u, double v) const { return cell(cell_of(u, k_), cell_of(v, k_)); }

RewiringKernel::RewiringKernel(int resolution, std::vector<RuleDistribution> cells_row_major)
    : k_(resolution), cells_(std::move(cells_row_major)) {
  if (k_ < 1) throw std::invalid_argument("RewiringKernel: resolution must be positive");
  if (cells_.size() != static_cast<std::size_t>(k_) * static_cast<std::size_t>(k_))
    throw std::invalid_argument("RewiringKernel: grid must be k x k");
  for (int a = 0; a < k_; ++a) {
    for (int b = 0; b < k_; ++b) {
      const auto& q = cells_[static_cast<std::size_t>(a) * k_ + b];
      double sum = 0.0;
      for (double x : q) {
        if (!(x >= 0.0)) throw std::invalid_argument("RewiringKernel: cell probabilities must be nonnegative");
        sum += x;
      }
      if (std::abs(sum - 1.0) > kSimplexTolerance)
        throw std::invalid_argument("RewiringKernel: cell probabilities must sum to 1");
      const auto& qt = cells_[static_cast<std::size_t>(b) * k_ + a];
      for (std::size_t t = 0; t < 4; ++t)
        if (std::abs(q[t] - qt[t]) > kSimplexTolerance)
          throw std::invalid_argument("RewiringKernel: grid must be symmetric");
    }
  }
}

RewiringKernel RewiringKernel::constant(const RuleDistribution& q) { return RewiringKernel(1, {q}); }

RewiringKernel RewiringKernel::identity_concentrated() {
  return constant(RuleDistribution{0.0, 1.0, 0.0, 0.0});
}

RewiringKernel RewiringKernel::product_er(double p0, double p1) {
  if (!(p0 >= 0.0 && p0 <= 1.0 && p1 >= 0.0 && p1 <= 1.0))
    throw std::invalid_argument("product_er: probabilities must lie in [0,1]");
  return constant(RuleDistribution{(1 - p0) * (1 - p1), (1 - p0) * p1, p0 * (1 - p1), p0 * p1});
}

const RuleDistribution& RewiringKernel::cell(int a, int b) const {
  if (a < 0 || b < 0 || a >= k_ || b >= k_)
    throw std::invalid_argument("RewiringKernel: cell index out of range");
  return cells_[static_cast<std::size_t>(a) * k_ + b];
}

RuleDistribution RewiringKernel::value(double u, double v) const {
  return cell(cell_of(u, k_), cell_of(v, k_));
}

StochasticMatrix2 StochasticMatrix2::rows(double p0_stay, double p0_go, double p1_go, double p1_stay) {
  StochasticMatrix2 m;
  m.s = {{{p0_stay, p0_go}, {p1_go, p1_stay}}};
  m.validate();
  return m;
}

void StochasticMatrix2::validate() const {
  for (int r = 0; r < 2; ++r) {
    if (!(s[r][0] >= 0.0 && s[r][1] >= 0.0))
      throw std::invalid_argument("StochasticMatrix2: entries must be nonnegative");
    if (std::abs(s[r][0] + s[r][1] - 1.0) > kSimplexTolerance)
      throw std::invalid_argument("StochasticMatrix2: rows must sum to 1");
  }
}

SigmaMixture SigmaMixture::single(const StochasticMatrix2& m) {
  SigmaMixture mix;
  mix.weights = {1.0};
  mix.matrices = {m};
  return mix;
}

void SigmaMixture::validate() const {
  if (weights.empty() || weights.size() != matrices.size())
    throw std::invalid_argument("SigmaMixture: weights and matrices must align and be non-empty");
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("SigmaMixture: weights must be nonnegative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kSimplexTolerance)
    throw std::invalid_argument("SigmaMixture: weights must sum to 1");
  for (const auto& m : matrices) m.validate();
}

int SigmaMixture::sample_index(RngStream rng) const {
  return static_cast<int>(rng.next_index(weights));
}

void LevyItoIntensity::validate() const {
  auto finite_nonneg = [](double x) { return std::isfinite(x) && x >= 0.0; };
  if (!finite_nonneg(e0) || !finite_nonneg(e1))
    throw std::invalid_argument("LevyItoIntensity: edge rates must be finite and nonnegative");
  if (!finite_nonneg(v)) throw std::invalid_argument("LevyItoIntensity: vertex rate must be finite and nonnegative");
  sigma.validate();
  for (const auto& [rate, kernel] : upsilon) {
    (void)kernel;
    if (!std::isfinite(rate) || !(rate > 0.0))
      throw std::invalid_argument("LevyItoIntensity: rewiring rates must be finite and positive");
  }
}

FiniteGraph sample_graph(const Graphon& phi, int n, RngStream rng) {
  if (n < 1) throw std::invalid_argument("sample_graph: vertex count must be positive");
  auto us = rng.split(rngkey::kVertexUniforms);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    u[static_cast<std::size_t>(i - 1)] = us.split(static_cast<std::uint64_t>(i)).next_double();
  auto es = rng.split(rngkey::kPairEntries);
  FiniteGraph g(n);
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i) {
      double p = phi.value(u[static_cast<std::size_t>(i - 1)], u[static_cast<std::size_t>(j - 1)]);
      if (es.split(pair_index(i, j)).next_double() < p) g.set_edge(i, j, true);
    }
  }
  return g;
}

RewiringMap sample_rewiring(const RewiringKernel& kappa, int n, RngStream rng) {
  if (n < 1) throw std::invalid_argument("sample_rewiring: vertex count must be positive");
  auto us = rng.split(rngkey::kVertexUniforms);
  std::vector<double> u(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i)
    u[static_cast<std::size_t>(i - 1)] = us.split(static_cast<std::uint64_t>(i)).next_double();
  auto es = rng.split(rngkey::kPairEntries);
  RewiringMap w(n);
  for (int j = 2; j <= n; ++j) {
    for (int i = 1; i < j; ++i) {
      RuleDistribution q = kappa.value(u[static_cast<std::size_t>(i - 1)], u[static_cast<std::size_t>(j - 1)]);
      double x = es.split(pair_index(i, j)).next_double();
      std::size_t outcome = 3;
      double acc = 0.0;
      for (std::size_t t = 0; t < 3; ++t) {
        acc += q[t];
        if (x < acc) {
          outcome = t;
          break;
        }
      }
      w.set_rule(i, j, rule_from_outcome_index(outcome));
    }
  }
  return w;
}

RewiringMap sample_vertex_update(const SigmaMixture& sigma, int i, int n, RngStream rng,
                                 int* matrix_index_out) {
  if (i < 1 || i > n) throw std::invalid_argument("sample_vertex_update: vertex out of range");
  sigma.validate();
  int mi = sigma.sample_index(rng.split(rngkey::kMixtureChoice));
  if (matrix_index_out != nullptr) *matrix_index_out = mi;
  const auto& S = sigma.matrices[static_cast<std::size_t>(mi)];
  auto s0 = rng.split(rngkey::kBitsFrom0);
  auto s1 = rng.split(rngkey::kBitsFrom1);
  std::vector<std::uint8_t> x0(static_cast<std::size_t>(n), 0);
  std::vector<std::uint8_t> x1(static_cast<std::size_t>(n), 0);
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    x0[static_cast<std::size_t>(j - 1)] =
        s0.split(static_cast<std::uint64_t>(j)).next_double() < S.s[0][1] ? 1 : 0;
    x1[static_cast<std::size_t>(j - 1)] =
        s1.split(static_cast<std::uint64_t>(j)).next_double() < S.s[1][1] ? 1 : 0;
  }
  return vertex_update_map(n, i, x0, x1);
}

double er_fidi_prob(double p, const FiniteGraph& F) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("er_fidi_prob: p must lie in [0,1]");
  double prob = 1.0;
  for (std::uint8_t b : F.bits()) prob *= b ? p : (1.0 - p);
  return prob;
}

double rising_factorial(double x, int k) {
  double r = 1.0;
  for (int t = 0; t < k; ++t) r *= (x + t);
  return r;
}

double beta_fidi_prob(double alpha, double beta, const FiniteGraph& F) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw std::invalid_argument("beta_fidi_prob: parameters must be positive");
  auto n1 = static_cast<int>(F.edge_count());
  auto n0 = static_cast<int>(F.bits().size()) - n1;
  return rising_factorial(alpha, n1) * rising_factorial(beta, n0) /
         rising_factorial(alpha + beta, n0 + n1);
}

}  // namespace graphdyn
