#include <doctest.h>

#include <numeric>

#include "core/graph.hpp"
#include "test_support.hpp"

using namespace graphdyn;
using namespace gdtest;

TEST_CASE("pair layout is colex and restriction-stable") {
  CHECK(pair_index(1, 2) == 0);
  CHECK(pair_index(1, 3) == 1);
  CHECK(pair_index(2, 3) == 2);
  CHECK(pair_index(1, 4) == 3);
  CHECK(pair_index(3, 4) == 5);
  for (std::size_t idx = 0; idx < 200; ++idx) {
    auto [i, j] = unrank_pair(idx);
    CHECK(i < j);
    CHECK(pair_index(i, j) == idx);
  }
}

TEST_CASE("restrict: examples") {
  CHECK(restrict_to(triangle(), 2) == edge2());
  FiniteGraph g = random_graph(7, 0.4, RngStream(11));
  CHECK(restrict_to(g, g.order()) == g);
  // path 1-2-3 keeps edge {1,2}
  CHECK(restrict_to(path3(), 2) == edge2());
  CHECK_THROWS_AS(restrict_to(g, 0), std::invalid_argument);
  CHECK_THROWS_AS(restrict_to(g, 8), std::invalid_argument);
}

TEST_CASE("restrict: tower property") {
  RngStream rng(5);
  for (int rep = 0; rep < 20; ++rep) {
    FiniteGraph g = random_graph(8, 0.5, rng.split(static_cast<std::uint64_t>(rep)));
    CHECK(restrict_to(restrict_to(g, 5), 3) == restrict_to(g, 3));
  }
}

TEST_CASE("relabel: examples and group action") {
  FiniteGraph g = random_graph(6, 0.5, RngStream(3));
  std::vector<int> id(6);
  std::iota(id.begin(), id.end(), 1);
  CHECK(relabel(g, id) == g);

  // edge {1,2} on [3], swapping labels 2 and 3 moves it to {1,3}
  FiniteGraph e12 = make_graph(3, {{1, 2}});
  std::vector<int> swap23{1, 3, 2};
  CHECK(relabel(e12, swap23) == make_graph(3, {{1, 3}}));

  RngStream rng(17);
  for (int rep = 0; rep < 20; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph h = random_graph(7, 0.5, s.split(0));
    auto sigma = random_permutation(7, s.split(1));
    std::vector<int> inverse(7);
    for (int i = 0; i < 7; ++i) inverse[static_cast<std::size_t>(sigma[static_cast<std::size_t>(i)] - 1)] = i + 1;
    CHECK(relabel(relabel(h, sigma), inverse) == h);
  }

  std::vector<int> bad{1, 1, 3};
  CHECK_THROWS_AS(relabel(e12, bad), std::invalid_argument);
}

TEST_CASE("project: examples") {
  FiniteGraph g = random_graph(6, 0.5, RngStream(23));
  CHECK(project(g, Injection{1, 2, 3, 4}) == restrict_to(g, 4));
  CHECK(project(triangle(), Injection{3, 1}) == edge2());
  CHECK(project(FiniteGraph(4), Injection{4, 2, 1}) == FiniteGraph(3));
  CHECK_THROWS_AS(project(g, Injection{1, 7}), std::invalid_argument);
  CHECK_THROWS_AS(project(g, Injection{2, 2}), std::invalid_argument);
}

TEST_CASE("subgraph_count: frozen examples") {
  CHECK(subgraph_count(edge2(), triangle()) == 6);
  CHECK(subgraph_count(edge2(), path3()) == 4);
  CHECK(subgraph_count(empty2(), triangle()) == 0);
  CHECK_THROWS_AS(subgraph_count(triangle(), edge2()), std::invalid_argument);
}

TEST_CASE("subgraph_count agrees with the brute-force oracle") {
  RngStream rng(41);
  for (int rep = 0; rep < 60; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    int m = 2 + static_cast<int>(s.split(0).next_below(2));  // motifs on 2..3 vertices
    int n = m + static_cast<int>(s.split(1).next_below(5));
    FiniteGraph motif = random_graph(m, 0.5, s.split(2));
    FiniteGraph host = random_graph(n, 0.5, s.split(3));
    CHECK(subgraph_count(motif, host) == brute_force_count(motif, host));
  }
}

TEST_CASE("subgraph_count is permutation invariant") {
  RngStream rng(43);
  for (int rep = 0; rep < 20; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph motif = random_graph(3, 0.5, s.split(0));
    FiniteGraph host = random_graph(6, 0.5, s.split(1));
    auto tau = random_permutation(3, s.split(2));
    auto sigma = random_permutation(6, s.split(3));
    CHECK(subgraph_count(motif, host) == subgraph_count(relabel(motif, tau), relabel(host, sigma)));
  }
}

TEST_CASE("density: exact rationals") {
  Density d1 = density(edge2(), triangle());
  CHECK(d1.exact);
  CHECK(d1.num == 6);
  CHECK(d1.den == 6);
  CHECK(d1.value == 1.0);

  Density d2 = density(edge2(), path3());
  CHECK(d2.num == 4);
  CHECK(d2.den == 6);
  CHECK(d2.value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("density: level-2 densities partition the injections") {
  RngStream rng(47);
  for (int rep = 0; rep < 10; ++rep) {
    FiniteGraph g = random_graph(6, 0.35, rng.split(static_cast<std::uint64_t>(rep)));
    Density on = density(edge2(), g);
    Density off = density(empty2(), g);
    CHECK(on.num + off.num == on.den);
  }
}

TEST_CASE("density consistency across levels") {
  // summing level-3 densities over extensions of a level-2 motif recovers
  // the level-2 density exactly
  RngStream rng(53);
  FiniteGraph g = random_graph(7, 0.5, rng);
  for (std::uint64_t code2 = 0; code2 < 2; ++code2) {
    FiniteGraph f2 = FiniteGraph::from_code(2, code2);
    std::uint64_t num_sum = 0;
    std::uint64_t den3 = 0;
    for (std::uint64_t code3 = 0; code3 < 8; ++code3) {
      FiniteGraph f3 = FiniteGraph::from_code(3, code3);
      if (!(restrict_to(f3, 2) == f2)) continue;
      Density d = density(f3, g);
      num_sum += d.num;
      den3 = d.den;
    }
    Density d2 = density(f2, g);
    // num_sum/den3 == d2.num/d2.den exactly
    CHECK(num_sum * d2.den == d2.num * den3);
  }
}

TEST_CASE("estimate_density tracks the exact value") {
  FiniteGraph g = random_graph(30, 0.4, RngStream(59));
  Density exact = density(path3(), g);
  Density est = estimate_density(path3(), g, 20000, RngStream(61));
  CHECK(!est.exact);
  CHECK(est.std_error > 0.0);
  CHECK(std::abs(est.value - exact.value) < 5.0 * est.std_error);
}

TEST_CASE("graph_metric: examples and ultrametric") {
  FiniteGraph g = random_graph(5, 0.5, RngStream(67));
  CHECK(graph_metric(g, g) == 0.0);

  FiniteGraph a(4);
  FiniteGraph b(4);
  b.set_edge(1, 2, true);  // differ at {1,2}: agreement only on [1]
  CHECK(graph_metric(a, b) == 1.0);

  FiniteGraph c(4);
  c.set_edge(1, 4, true);  // agree on [3], differ at {1,4}
  CHECK(graph_metric(a, c) == doctest::Approx(1.0 / 3.0));

  FiniteGraph other(6);
  CHECK_THROWS_AS(graph_metric(g, other), std::invalid_argument);

  RngStream rng(71);
  for (int rep = 0; rep < 40; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph x = random_graph(6, 0.5, s.split(0));
    FiniteGraph y = random_graph(6, 0.5, s.split(1));
    FiniteGraph z = random_graph(6, 0.5, s.split(2));
    CHECK(graph_metric(x, z) <= std::max(graph_metric(x, y), graph_metric(y, z)));
  }
}

TEST_CASE("relabel then restrict factors through an injection") {
  RngStream rng(73);
  for (int rep = 0; rep < 20; ++rep) {
    auto s = rng.split(static_cast<std::uint64_t>(rep));
    FiniteGraph g = random_graph(6, 0.5, s.split(0));
    auto sigma = random_permutation(6, s.split(1));
    int m = 3;
    Injection phi(std::vector<int>(sigma.begin(), sigma.begin() + m));
    CHECK(restrict_to(relabel(g, sigma), m) == project(g, phi));
  }
}

TEST_CASE("codes round-trip") {
  for (std::uint64_t code = 0; code < 64; ++code)
    CHECK(FiniteGraph::from_code(4, code).code() == code);
}
