#include "stat_verify.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include <boost/math/distributions/chi_squared.hpp>

#include "continuous_process.hpp"
#include "discrete_chain.hpp"
#include "kernels.hpp"
#include "rewiring.hpp"

namespace graphdyn {

namespace {

constexpr double kExactTolerance = 1e-12;
constexpr double kSignificance = 0.01;

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << std::scientific << x;
  return out.str();
}

std::vector<double> transition_matrix(double alpha, double beta, int n) {
  std::size_t states = std::size_t{1} << pair_count(n);
  std::vector<double> P(states * states, 0.0);
  for (std::uint64_t a = 0; a < states; ++a) {
    FiniteGraph from = FiniteGraph::from_code(n, a);
    for (std::uint64_t b = 0; b < states; ++b)
      P[a * states + b] = reversible_transition_prob(alpha, beta, from, FiniteGraph::from_code(n, b));
  }
  return P;
}

// Pools bins whose combined count falls below 10, then computes the
// two-sample statistic with equal-allocation expectations.
std::pair<double, int> two_sample_chi_square(std::span<const std::int64_t> a,
                                             std::span<const std::int64_t> b) {
  double stat = 0.0;
  int bins = 0;
  std::int64_t pool_a = 0;
  std::int64_t pool_b = 0;
  auto add_bin = [&](double oa, double ob) {
    double e = (oa + ob) / 2.0;
    if (e <= 0.0) return;
    stat += (oa - e) * (oa - e) / e + (ob - e) * (ob - e) / e;
    ++bins;
  };
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (a[k] + b[k] < 10) {
      pool_a += a[k];
      pool_b += b[k];
    } else {
      add_bin(static_cast<double>(a[k]), static_cast<double>(b[k]));
    }
  }
  if (pool_a + pool_b > 0) add_bin(static_cast<double>(pool_a), static_cast<double>(pool_b));
  return {stat, std::max(bins - 1, 0)};
}

// One-sample goodness of fit; bins with expected count below 5 are pooled.
std::pair<double, int> gof_chi_square(std::span<const std::int64_t> observed,
                                      std::span<const double> probs, std::int64_t total) {
  double stat = 0.0;
  int bins = 0;
  double pool_p = 0.0;
  std::int64_t pool_o = 0;
  auto add_bin = [&](double o, double e) {
    if (e <= 0.0) return;
    stat += (o - e) * (o - e) / e;
    ++bins;
  };
  for (std::size_t k = 0; k < observed.size(); ++k) {
    double e = probs[k] * static_cast<double>(total);
    if (e < 5.0) {
      pool_p += probs[k];
      pool_o += observed[k];
    } else {
      add_bin(static_cast<double>(observed[k]), e);
    }
  }
  if (pool_p > 0.0) add_bin(static_cast<double>(pool_o), pool_p * static_cast<double>(total));
  return {stat, std::max(bins - 1, 0)};
}

}  // namespace

double chi_square_pvalue(double statistic, int df) {
  if (df <= 0) return 1.0;
  boost::math::chi_squared dist(df);
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

nlohmann::json TestReport::to_json() const {
  return nlohmann::json{{"name", name},       {"statistic", statistic},
                        {"threshold", threshold}, {"passed", passed},
                        {"sample_sizes", sample_sizes}, {"seed", seed},
                        {"details", details}};
}

std::string report_table(std::span<const TestReport> reports) {
  std::ostringstream out;
  std::size_t width = 28;
  for (const auto& r : reports) width = std::max(width, r.name.size() + 2);
  for (const auto& r : reports) {
    out << (r.passed ? "[PASS] " : "[FAIL] ") << std::left << std::setw(static_cast<int>(width))
        << r.name << " statistic=" << format_double(r.statistic)
        << " threshold=" << format_double(r.threshold);
    if (!r.details.empty()) out << "  (" << r.details << ")";
    out << "\n";
  }
  return out.str();
}

TestReport check_detailed_balance(double alpha, double beta, int n, double perturbation) {
  if (n != 2 && n != 3) throw std::invalid_argument("check_detailed_balance: n must be 2 or 3");
  std::size_t states = std::size_t{1} << pair_count(n);
  auto P = transition_matrix(alpha, beta, n);
  P[1] += perturbation;
  std::vector<double> pi(states);
  for (std::uint64_t a = 0; a < states; ++a)
    pi[a] = reversible_stationary_prob(alpha, beta, FiniteGraph::from_code(n, a));
  double residual = 0.0;
  for (std::uint64_t a = 0; a < states; ++a)
    for (std::uint64_t b = 0; b < states; ++b)
      residual = std::max(residual, std::abs(pi[a] * P[a * states + b] - pi[b] * P[b * states + a]));
  TestReport r;
  r.name = "detailed-balance(n=" + std::to_string(n) + ",alpha=" + std::to_string(alpha) +
           ",beta=" + std::to_string(beta) + ")";
  r.statistic = residual;
  r.threshold = kExactTolerance;
  r.passed = residual <= r.threshold;
  r.sample_sizes = {static_cast<std::int64_t>(states * states)};
  r.details = "max |pi(F)P(F,F') - pi(F')P(F',F)|";
  return r;
}

TestReport check_consistency(double alpha, double beta, double perturbation) {
  constexpr int n = 3;
  constexpr int m = 2;
  std::size_t states_n = std::size_t{1} << pair_count(n);
  std::size_t states_m = std::size_t{1} << pair_count(m);
  auto P3 = transition_matrix(alpha, beta, n);
  P3[1] += perturbation;
  auto P2 = transition_matrix(alpha, beta, m);
  // restriction to [m] keeps the leading pair bits of the code
  const std::uint64_t mask = (std::uint64_t{1} << pair_count(m)) - 1;
  double residual = 0.0;
  for (std::uint64_t a = 0; a < states_n; ++a) {
    for (std::uint64_t b2 = 0; b2 < states_m; ++b2) {
      double sum = 0.0;
      for (std::uint64_t b = 0; b < states_n; ++b)
        if ((b & mask) == b2) sum += P3[a * states_n + b];
      residual = std::max(residual, std::abs(sum - P2[(a & mask) * states_m + b2]));
    }
  }
  TestReport r;
  r.name = "consistency(alpha=" + std::to_string(alpha) + ",beta=" + std::to_string(beta) + ")";
  r.statistic = residual;
  r.threshold = kExactTolerance;
  r.passed = residual <= r.threshold;
  r.sample_sizes = {static_cast<std::int64_t>(states_n * states_m)};
  r.details = "n=3 transition matrix marginalized to n=2";
  return r;
}

namespace {

FiniteGraph one_step(ExchangeabilityKind kind, const FiniteGraph& from, RngStream rng) {
  switch (kind) {
    case ExchangeabilityKind::kProductErKernel: {
      static const RewiringKernel kernel = RewiringKernel::product_er(0.3, 0.6);
      return apply(sample_rewiring(kernel, from.order(), rng), from);
    }
    case ExchangeabilityKind::kVertexUpdate: {
      LevyItoIntensity intensity;
      intensity.v = 1.0;
      intensity.sigma = SigmaMixture::single(StochasticMatrix2::rows(0.6, 0.4, 0.3, 0.7));
      return simulate(intensity, from, 1.0, rng).final_state();
    }
    case ExchangeabilityKind::kEdgeBiasedControl: {
      FiniteGraph out = from;
      if (rng.split(0).next_bernoulli(0.5)) out.set_edge(1, 2, !out.edge(1, 2));
      return out;
    }
  }
  throw std::invalid_argument("one_step: unknown sampler kind");
}

const char* exchangeability_kind_name(ExchangeabilityKind kind) {
  switch (kind) {
    case ExchangeabilityKind::kProductErKernel: return "product-er-kernel";
    case ExchangeabilityKind::kVertexUpdate: return "vertex-update";
    case ExchangeabilityKind::kEdgeBiasedControl: return "edge-biased-control";
  }
  return "unknown";
}

std::vector<int> inverse_permutation(std::span<const int> perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[static_cast<std::size_t>(perm[k] - 1)] = static_cast<int>(k + 1);
  return inv;
}

}  // namespace

TestReport check_exchangeability(ExchangeabilityKind kind, int replicates, std::uint64_t seed) {
  if (replicates < 10000)
    throw std::invalid_argument("check_exchangeability: need at least 10^4 replicates");
  constexpr int n = 3;
  const FiniteGraph reference(n, std::array<std::pair<int, int>, 1>{{{1, 3}}});
  const std::vector<std::vector<int>> perms = {{2, 1, 3}, {1, 3, 2}, {2, 3, 1}};
  const double level = kSignificance / static_cast<double>(perms.size());

  RngStream root(seed);
  double min_pvalue = 1.0;
  std::ostringstream detail;
  for (std::size_t s = 0; s < perms.size(); ++s) {
    const auto& sigma = perms[s];
    FiniteGraph relabeled_start = relabel(reference, inverse_permutation(sigma));
    std::vector<std::int64_t> direct(8, 0);
    std::vector<std::int64_t> conjugated(8, 0);
    auto sa = root.split(2 * s);
    auto sb = root.split(2 * s + 1);
    for (int r = 0; r < replicates; ++r) {
      FiniteGraph x = one_step(kind, reference, sa.split(static_cast<std::uint64_t>(r)));
      ++direct[static_cast<std::size_t>(x.code())];
      FiniteGraph y = one_step(kind, relabeled_start, sb.split(static_cast<std::uint64_t>(r)));
      ++conjugated[static_cast<std::size_t>(relabel(y, sigma).code())];
    }
    auto [stat, df] = two_sample_chi_square(direct, conjugated);
    double p = chi_square_pvalue(stat, df);
    min_pvalue = std::min(min_pvalue, p);
    if (s > 0) detail << " ";
    detail << "sigma" << s + 1 << ":p=" << format_double(p);
  }
  TestReport r;
  r.name = std::string("exchangeability(") + exchangeability_kind_name(kind) + ")";
  r.statistic = min_pvalue;
  r.threshold = level;
  r.passed = min_pvalue >= level;  // a p-value below the corrected level rejects
  r.sample_sizes = {replicates, static_cast<std::int64_t>(perms.size())};
  r.seed = seed;
  r.details = detail.str() + " bonferroni=" + format_double(level);
  return r;
}

TestReport check_er_stationarity(double p0, double p1, int n, int steps, int replicates,
                                 std::uint64_t seed) {
  if (!(p0 >= 0.0 && p0 < 1.0 && p1 >= 0.0 && p1 < 1.0))
    throw std::invalid_argument("check_er_stationarity: need p0, p1 in [0,1)");
  if (replicates < 2) throw std::invalid_argument("check_er_stationarity: need at least 2 replicates");
  const double q = p0 / (1.0 - p1 + p0);
  RngStream root(seed);
  std::vector<double> terminal(static_cast<std::size_t>(replicates));
  for (int r = 0; r < replicates; ++r) {
    DiscreteChainConfig config;
    config.n = n;
    config.steps = steps;
    config.mixture = KernelMixture::single(RewiringKernel::product_er(p0, p1));
    config.seed = root.split(static_cast<std::uint64_t>(r)).seed();
    Trajectory traj = run_chain(config, FiniteGraph(n));
    terminal[static_cast<std::size_t>(r)] =
        static_cast<double>(traj.state(steps).edge_count()) / static_cast<double>(pair_count(n));
  }
  double mean = 0.0;
  for (double x : terminal) mean += x;
  mean /= static_cast<double>(replicates);
  double var = 0.0;
  for (double x : terminal) var += (x - mean) * (x - mean);
  var /= static_cast<double>(replicates - 1);
  double se = std::sqrt(var / static_cast<double>(replicates));

  TestReport r;
  r.name = "er-stationarity(p0=" + std::to_string(p0) + ",p1=" + std::to_string(p1) + ")";
  r.statistic = std::abs(mean - q);
  r.threshold = 4.0 * se;
  r.passed = r.statistic <= r.threshold;
  r.sample_sizes = {replicates, steps, n};
  r.seed = seed;
  r.details = "mean=" + format_double(mean) + " q=" + format_double(q) + " se=" + format_double(se);
  return r;
}

TestReport check_er_law(double p_sample, double p_null, int samples, std::uint64_t seed) {
  constexpr int n = 3;
  RngStream root(seed);
  Graphon phi = Graphon::constant(p_sample);
  std::vector<std::int64_t> observed(8, 0);
  for (int s = 0; s < samples; ++s)
    ++observed[static_cast<std::size_t>(sample_graph(phi, n, root.split(static_cast<std::uint64_t>(s))).code())];
  std::vector<double> probs(8, 0.0);
  for (std::uint64_t c = 0; c < 8; ++c)
    probs[static_cast<std::size_t>(c)] = er_fidi_prob(p_null, FiniteGraph::from_code(n, c));
  auto [stat, df] = gof_chi_square(observed, probs, samples);
  double p = chi_square_pvalue(stat, df);
  TestReport r;
  r.name = "er-law(p=" + std::to_string(p_null) + ")";
  r.statistic = p;
  r.threshold = kSignificance;
  r.passed = p >= kSignificance;
  r.sample_sizes = {samples};
  r.seed = seed;
  r.details = "chi2=" + format_double(stat) + " df=" + std::to_string(df) +
              (p_sample == p_null ? "" : " sampled-at=" + std::to_string(p_sample));
  return r;
}

TestReport check_beta_law(double alpha_sample, double beta_sample, double alpha_null,
                          double beta_null, int samples, std::uint64_t seed) {
  constexpr int n = 3;
  RngStream root(seed);
  std::vector<std::int64_t> observed(8, 0);
  for (int s = 0; s < samples; ++s) {
    auto rs = root.split(static_cast<std::uint64_t>(s));
    double p = rs.split(0).next_beta(alpha_sample, beta_sample);
    FiniteGraph g = sample_graph(Graphon::constant(p), n, rs.split(1));
    ++observed[static_cast<std::size_t>(g.code())];
  }
  std::vector<double> probs(8, 0.0);
  for (std::uint64_t c = 0; c < 8; ++c)
    probs[static_cast<std::size_t>(c)] = beta_fidi_prob(alpha_null, beta_null, FiniteGraph::from_code(n, c));
  auto [stat, df] = gof_chi_square(observed, probs, samples);
  double p = chi_square_pvalue(stat, df);
  TestReport r;
  r.name = "beta-law(alpha=" + std::to_string(alpha_null) + ",beta=" + std::to_string(beta_null) + ")";
  r.statistic = p;
  r.threshold = kSignificance;
  r.passed = p >= kSignificance;
  r.sample_sizes = {samples};
  r.seed = seed;
  r.details = "chi2=" + format_double(stat) + " df=" + std::to_string(df);
  return r;
}

}  // namespace graphdyn
