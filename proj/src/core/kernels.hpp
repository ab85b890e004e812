#ifndef GRAPHDYN_CORE_KERNELS_HPP
#define GRAPHDYN_CORE_KERNELS_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "graph.hpp"
#include "rewiring.hpp"
#include "rng.hpp"

namespace graphdyn {

// Stream keys used by the samplers. Every random object consumed by a
// sampler is drawn from a child stream named by (role, index), so samples
// at different truncation sizes share all randomness for shared indices:
// sampling at n and restricting to m equals sampling at m from the same
// stream.
namespace rngkey {
inline constexpr std::uint64_t kVertexUniforms = 1;
inline constexpr std::uint64_t kPairEntries = 2;
inline constexpr std::uint64_t kMixtureChoice = 3;
inline constexpr std::uint64_t kBitsFrom0 = 4;
inline constexpr std::uint64_t kBitsFrom1 = 5;
}  // namespace rngkey

// Piecewise-constant symmetric kernel on the unit square with k x k equal
// cells; cell values are edge probabilities.
class Graphon {
 public:
  Graphon(int resolution, std::vector<double> cells_row_major);
  static Graphon constant(double p);

  [[nodiscard]] int resolution() const { return k_; }
  [[nodiscard]] double cell(int a, int b) const;
  [[nodiscard]] double value(double u, double v) const;

 private:
  int k_;
  std::vector<double> cells_;
};

// Per-cell distribution over the four per-pair rules, in the project-wide
// outcome order (0,0), (0,1), (1,0), (1,1).
using RuleDistribution = std::array<double, 4>;

// The rewiring analog of a graphon: each cell carries a distribution over
// the four per-pair rules; the grid is symmetric in its two cell indices.
class RewiringKernel {
 public:
  RewiringKernel(int resolution, std::vector<RuleDistribution> cells_row_major);

  static RewiringKernel constant(const RuleDistribution& q);
  // All mass on the identity rule (0,1).
  static RewiringKernel identity_concentrated();
  // Independent coins: the rule's from0 bit is 1 with probability p0 and
  // the from1 bit is 1 with probability p1, independently.
  static RewiringKernel product_er(double p0, double p1);

  [[nodiscard]] int resolution() const { return k_; }
  [[nodiscard]] const RuleDistribution& cell(int a, int b) const;
  [[nodiscard]] RuleDistribution value(double u, double v) const;
  [[nodiscard]] bool has_constant_cells() const { return k_ == 1; }

 private:
  int k_;
  std::vector<RuleDistribution> cells_;
};

// Row-stochastic 2x2 matrix; row r is the distribution of the new bit given
// current bit r.
struct StochasticMatrix2 {
  std::array<std::array<double, 2>, 2> s{{{1.0, 0.0}, {0.0, 1.0}}};

  static StochasticMatrix2 identity() { return {}; }
  static StochasticMatrix2 rows(double p0_stay, double p0_go, double p1_go, double p1_stay);

  void validate() const;
  bool operator==(const StochasticMatrix2&) const = default;
};

// Finite mixture over 2x2 stochastic matrices; weights sum to one.
struct SigmaMixture {
  std::vector<double> weights;
  std::vector<StochasticMatrix2> matrices;

  static SigmaMixture single(const StochasticMatrix2& m);
  void validate() const;
  [[nodiscard]] int sample_index(RngStream rng) const;
};

// Jump intensity in finite-activity form: per-pair deletion/insertion rates,
// a per-vertex resampling rate with its matrix mixture, and a finite list of
// global rewiring kernels with rates.
struct LevyItoIntensity {
  double e0 = 0.0;
  double e1 = 0.0;
  double v = 0.0;
  SigmaMixture sigma = SigmaMixture::single(StochasticMatrix2::identity());
  std::vector<std::pair<double, RewiringKernel>> upsilon;

  void validate() const;
};

FiniteGraph sample_graph(const Graphon& phi, int n, RngStream rng);
RewiringMap sample_rewiring(const RewiringKernel& kappa, int n, RngStream rng);

// Draws a matrix from the mixture, then per-neighbor bits, and assembles the
// vertex update map for vertex i. Pass `matrix_index_out` to learn which
// mixture component was used.
RewiringMap sample_vertex_update(const SigmaMixture& sigma, int i, int n, RngStream rng,
                                 int* matrix_index_out = nullptr);

// Probability that an independent-edge graph with parameter p restricts to
// exactly F on [F.order()].
double er_fidi_prob(double p, const FiniteGraph& F);

// Finite-dimensional law of the Beta(alpha,beta) mixture of independent-edge
// graphs, via rising factorials over edge and non-edge counts.
double beta_fidi_prob(double alpha, double beta, const FiniteGraph& F);

double rising_factorial(double x, int k);

}  // namespace graphdyn

#endif
