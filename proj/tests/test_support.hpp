#ifndef GRAPHDYN_TESTS_SUPPORT_HPP
#define GRAPHDYN_TESTS_SUPPORT_HPP

#include <utility>
#include <vector>

#include "core/graph.hpp"
#include "core/rewiring.hpp"
#include "core/rng.hpp"

namespace gdtest {

using graphdyn::FiniteGraph;
using graphdyn::RewiringMap;
using graphdyn::RngStream;

inline FiniteGraph make_graph(int n, std::vector<std::pair<int, int>> edges) {
  return FiniteGraph(n, edges);
}

inline FiniteGraph triangle() { return make_graph(3, {{1, 2}, {1, 3}, {2, 3}}); }
inline FiniteGraph path3() { return make_graph(3, {{1, 2}, {2, 3}}); }
inline FiniteGraph edge2() { return make_graph(2, {{1, 2}}); }
inline FiniteGraph empty2() { return FiniteGraph(2); }

inline FiniteGraph random_graph(int n, double p, RngStream rng) {
  FiniteGraph g(n);
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i)
      if (rng.next_bernoulli(p)) g.set_edge(i, j, true);
  return g;
}

inline RewiringMap random_rewiring(int n, RngStream rng) {
  RewiringMap w(n);
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i)
      w.set_rule(i, j, graphdyn::EdgeRule{static_cast<std::uint8_t>(rng.next_below(2)),
                                          static_cast<std::uint8_t>(rng.next_below(2))});
  return w;
}

inline std::vector<int> random_permutation(int n, RngStream rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i + 1;
  for (int i = n - 1; i > 0; --i) {
    auto j = static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(i + 1)));
    std::swap(perm[static_cast<std::size_t>(i)], perm[j]);
  }
  return perm;
}

// Reference counter used as the independent oracle: plain recursion, no
// shared machinery with the library's enumerator.
inline std::uint64_t brute_force_count(const FiniteGraph& motif, const FiniteGraph& host) {
  const int m = motif.order();
  const int n = host.order();
  std::vector<int> phi;
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::uint64_t hits = 0;
  auto rec = [&](auto&& self, int depth) -> void {
    if (depth == m) {
      for (int a = 1; a <= m; ++a)
        for (int b = a + 1; b <= m; ++b)
          if (host.edge(phi[static_cast<std::size_t>(a - 1)], phi[static_cast<std::size_t>(b - 1)]) !=
              motif.edge(a, b))
            return;
      ++hits;
      return;
    }
    for (int v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      phi.push_back(v);
      self(self, depth + 1);
      phi.pop_back();
      used[static_cast<std::size_t>(v)] = false;
    }
  };
  rec(rec, 0);
  return hits;
}

}  // namespace gdtest

#endif
