#include <doctest.h>

#include <cmath>

#include "core/kernels.hpp"
#include "test_support.hpp"

using namespace graphdyn;
using namespace gdtest;

TEST_CASE("sample_graph: degenerate graphons") {
  CHECK(sample_graph(Graphon::constant(1.0), 8, RngStream(1)) == FiniteGraph::complete(8));
  CHECK(sample_graph(Graphon::constant(0.0), 8, RngStream(2)) == FiniteGraph(8));
}

TEST_CASE("sample_graph: edge density concentrates") {
  // C(1000,2) independent p=1/2 coins: SD of the mean is ~7.1e-4, so 0.01 is
  // a ~14-sigma corridor.
  FiniteGraph g = sample_graph(Graphon::constant(0.5), 1000, RngStream(3));
  double dens = static_cast<double>(g.edge_count()) / static_cast<double>(pair_count(1000));
  CHECK(std::abs(dens - 0.5) < 0.01);
}

TEST_CASE("sample_graph: restriction consistency of the sampler") {
  Graphon phi(2, {0.1, 0.7, 0.7, 0.9});
  FiniteGraph big = sample_graph(phi, 9, RngStream(5));
  FiniteGraph small = sample_graph(phi, 4, RngStream(5));
  CHECK(restrict_to(big, 4) == small);
}

TEST_CASE("sample_graph is deterministic in the seed") {
  Graphon phi(2, {0.2, 0.6, 0.6, 0.4});
  CHECK(sample_graph(phi, 20, RngStream(77)) == sample_graph(phi, 20, RngStream(77)));
  CHECK(sample_graph(phi, 20, RngStream(77)) != sample_graph(phi, 20, RngStream(78)));
}

TEST_CASE("er_fidi_prob: examples and normalization") {
  CHECK(er_fidi_prob(0.5, triangle()) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK(er_fidi_prob(1.0, FiniteGraph::complete(4)) == 1.0);
  double sum = 0.0;
  for (std::uint64_t c = 0; c < 8; ++c) sum += er_fidi_prob(0.37, FiniteGraph::from_code(3, c));
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("beta_fidi_prob: examples, normalization, exchangeability") {
  CHECK(beta_fidi_prob(1.0, 1.0, edge2()) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(beta_fidi_prob(1.0, 1.0, triangle()) == doctest::Approx(0.25).epsilon(1e-12));
  double sum = 0.0;
  for (std::uint64_t c = 0; c < 2; ++c) sum += beta_fidi_prob(2.5, 0.5, FiniteGraph::from_code(2, c));
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));

  // depends only on the edge count, hence invariant under relabeling
  RngStream rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph f = random_graph(4, 0.5, s.split(0));
    auto sigma = random_permutation(4, s.split(1));
    CHECK(beta_fidi_prob(1.7, 0.4, f) == doctest::Approx(beta_fidi_prob(1.7, 0.4, relabel(f, sigma))).epsilon(1e-14));
  }
  CHECK_THROWS_AS(beta_fidi_prob(0.0, 1.0, edge2()), std::invalid_argument);
}

TEST_CASE("sample_rewiring: identity kernel and marginal coins") {
  CHECK(sample_rewiring(RewiringKernel::identity_concentrated(), 7, RngStream(11)) ==
        RewiringMap::identity(7));

  // product kernel marginals: P{from0=1}=p0, P{from1=1}=p1
  const double p0 = 0.3;
  const double p1 = 0.7;
  RewiringKernel kernel = RewiringKernel::product_er(p0, p1);
  const int n = 120;  // 7140 pairs per draw
  RngStream rng(13);
  std::int64_t c0 = 0;
  std::int64_t c1 = 0;
  std::int64_t total = 0;
  for (int rep = 0; rep < 3; ++rep) {
    RewiringMap w = sample_rewiring(kernel, n, rng.split(static_cast<std::uint64_t>(rep)));
    for (std::size_t idx = 0; idx < pair_count(n); ++idx) {
      c0 += w.bits0()[idx];
      c1 += w.bits1()[idx];
      ++total;
    }
  }
  double se0 = std::sqrt(p0 * (1 - p0) / static_cast<double>(total));
  double se1 = std::sqrt(p1 * (1 - p1) / static_cast<double>(total));
  CHECK(std::abs(static_cast<double>(c0) / static_cast<double>(total) - p0) < 4 * se0);
  CHECK(std::abs(static_cast<double>(c1) / static_cast<double>(total) - p1) < 4 * se1);
}

TEST_CASE("sample_rewiring: restriction consistency") {
  RewiringKernel kernel(2, {RuleDistribution{0.4, 0.3, 0.2, 0.1}, RuleDistribution{0.1, 0.2, 0.3, 0.4},
                            RuleDistribution{0.1, 0.2, 0.3, 0.4}, RuleDistribution{0.25, 0.25, 0.25, 0.25}});
  RewiringMap big = sample_rewiring(kernel, 9, RngStream(17));
  RewiringMap small = sample_rewiring(kernel, 5, RngStream(17));
  CHECK(restrict_to(big, 5) == small);
}

TEST_CASE("sample_rewiring: pattern density obeys the law of large numbers") {
  // with a constant kernel the level-2 pattern density converges to the
  // cell probability of that pattern
  RuleDistribution q{0.15, 0.35, 0.2, 0.3};
  RewiringKernel kernel = RewiringKernel::constant(q);
  RewiringMap w = sample_rewiring(kernel, 500, RngStream(19));
  for (std::size_t outcome = 0; outcome < 4; ++outcome) {
    RewiringMap pattern(2);
    pattern.set_rule(1, 2, rule_from_outcome_index(outcome));
    Density d = rewiring_density(pattern, w);
    double se = std::sqrt(q[outcome] * (1 - q[outcome]) / static_cast<double>(pair_count(500)));
    CHECK(std::abs(d.value - q[outcome]) < 5 * se);
  }
}

TEST_CASE("sample_vertex_update: identity and all-join rows") {
  SigmaMixture keep = SigmaMixture::single(StochasticMatrix2::identity());
  RngStream rng(23);
  for (int rep = 0; rep < 5; ++rep) {
    RewiringMap w = sample_vertex_update(keep, 2, 6, rng.split(static_cast<std::uint64_t>(rep)));
    FiniteGraph g = random_graph(6, 0.5, rng.split(100 + static_cast<std::uint64_t>(rep)));
    CHECK(apply(w, g) == g);
  }

  SigmaMixture join = SigmaMixture::single(StochasticMatrix2::rows(0.0, 1.0, 0.0, 1.0));
  RewiringMap w = sample_vertex_update(join, 3, 6, rng.split(999));
  FiniteGraph g = random_graph(6, 0.5, rng.split(1000));
  FiniteGraph out = apply(w, g);
  for (int j = 1; j <= 6; ++j)
    if (j != 3) CHECK(out.edge(3, j));

  CHECK_THROWS_AS(sample_vertex_update(keep, 0, 6, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_vertex_update(keep, 7, 6, rng), std::invalid_argument);
}

TEST_CASE("sample_vertex_update: empirical row frequencies match the matrix") {
  const double s01 = 0.35;
  const double s11 = 0.8;
  SigmaMixture mix = SigmaMixture::single(StochasticMatrix2::rows(1 - s01, s01, 1 - s11, s11));
  const int n = 10000;
  RewiringMap w = sample_vertex_update(mix, 1, n, RngStream(29));
  std::int64_t ones0 = 0;
  std::int64_t ones1 = 0;
  for (int j = 2; j <= n; ++j) {
    EdgeRule r = w.rule(1, j);
    ones0 += r.from0;
    ones1 += r.from1;
  }
  double se0 = std::sqrt(s01 * (1 - s01) / (n - 1));
  double se1 = std::sqrt(s11 * (1 - s11) / (n - 1));
  CHECK(std::abs(static_cast<double>(ones0) / (n - 1) - s01) < 3 * se0);
  CHECK(std::abs(static_cast<double>(ones1) / (n - 1) - s11) < 3 * se1);
}

TEST_CASE("constant-graphon samples match the independent-edge law cell by cell") {
  // frequencies of all 8 graphs on [3] within 4 sigma of the product law
  const double p = 0.5;
  const int samples = 100000;
  RngStream rng(31);
  Graphon phi = Graphon::constant(p);
  std::vector<std::int64_t> counts(8, 0);
  for (int s = 0; s < samples; ++s)
    ++counts[static_cast<std::size_t>(sample_graph(phi, 3, rng.split(static_cast<std::uint64_t>(s))).code())];
  for (std::uint64_t c = 0; c < 8; ++c) {
    double expect = er_fidi_prob(p, FiniteGraph::from_code(3, c));
    double se = std::sqrt(expect * (1 - expect) / samples);
    CHECK(std::abs(static_cast<double>(counts[static_cast<std::size_t>(c)]) / samples - expect) < 4 * se);
  }
}

TEST_CASE("dissociation: disjoint restrictions of kernel samples are uncorrelated") {
  // edge {1,2} indicator vs edge {3,4} indicator over independent samples
  const int samples = 20000;
  RngStream rng(37);
  Graphon phi = Graphon::constant(0.4);
  double sum_a = 0.0;
  double sum_b = 0.0;
  double sum_ab = 0.0;
  for (int s = 0; s < samples; ++s) {
    FiniteGraph g = sample_graph(phi, 4, rng.split(static_cast<std::uint64_t>(s)));
    double a = g.edge(1, 2) ? 1.0 : 0.0;
    double b = g.edge(3, 4) ? 1.0 : 0.0;
    sum_a += a;
    sum_b += b;
    sum_ab += a * b;
  }
  double ma = sum_a / samples;
  double mb = sum_b / samples;
  double cov = sum_ab / samples - ma * mb;
  double corr = cov / std::sqrt(ma * (1 - ma) * mb * (1 - mb));
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(samples)));
}

TEST_CASE("kernel and graphon validation") {
  CHECK_THROWS_AS(Graphon(2, {0.1, 0.2, 0.3, 0.4}), std::invalid_argument);      // asymmetric
  CHECK_THROWS_AS(Graphon(1, {1.5}), std::invalid_argument);                     // out of range
  CHECK_THROWS_AS(RewiringKernel::constant({0.5, 0.5, 0.1, 0.0}), std::invalid_argument);  // not a simplex
  CHECK_THROWS_AS(StochasticMatrix2::rows(0.5, 0.6, 0.5, 0.5), std::invalid_argument);
  LevyItoIntensity bad;
  bad.e0 = -1.0;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}
