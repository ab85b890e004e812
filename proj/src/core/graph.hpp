#ifndef GRAPHDYN_CORE_GRAPH_HPP
#define GRAPHDYN_CORE_GRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace graphdyn {

// Unordered pairs {i,j}, 1 <= i < j, are laid out in colex order:
// {1,2},{1,3},{2,3},{1,4},{2,4},{3,4},{1,5},...
// Pairs inside [m] occupy a prefix of the layout, so restriction to [m]
// is a prefix copy and the pair index of {i,j} does not depend on the
// ambient vertex count.
inline std::size_t pair_index(int i, int j) {
  return static_cast<std::size_t>(j - 1) * (j - 2) / 2 + (i - 1);
}

inline std::size_t pair_count(int n) {
  return static_cast<std::size_t>(n) * (n - 1) / 2;
}

// Inverse of pair_index.
std::pair<int, int> unrank_pair(std::size_t index);

// Simple, loop-free, undirected graph on vertices 1..n. Symmetry and
// anti-reflexivity are structural: only the upper triangle is stored, and
// querying (i,j), (j,i), or (i,i) never touches invalid state.
class FiniteGraph {
 public:
  explicit FiniteGraph(int n);
  FiniteGraph(int n, std::span<const std::pair<int, int>> edges);

  static FiniteGraph complete(int n);
  // Decodes a level-n adjacency code: bit b of `code` is the status of the
  // pair with pair_index b. Requires pair_count(n) <= 64.
  static FiniteGraph from_code(int n, std::uint64_t code);
  static FiniteGraph from_bits(int n, std::vector<std::uint8_t> bits);

  [[nodiscard]] int order() const { return n_; }
  [[nodiscard]] bool edge(int i, int j) const;
  void set_edge(int i, int j, bool present);

  [[nodiscard]] std::size_t edge_count() const;
  [[nodiscard]] std::vector<std::pair<int, int>> edges() const;
  [[nodiscard]] std::uint64_t code() const;

  bool operator==(const FiniteGraph&) const = default;

  [[nodiscard]] const std::vector<std::uint8_t>& bits() const { return bits_; }

 private:
  void check_pair(int i, int j) const;

  int n_;
  std::vector<std::uint8_t> bits_;  // colex upper triangle
};

// Injective map [m] -> [1..n]; image[k] is the host vertex of k+1.
struct Injection {
  int m = 0;
  std::vector<int> image;

  Injection() = default;
  Injection(std::initializer_list<int> img);
  explicit Injection(std::vector<int> img);

  void validate(int host_order) const;
};

FiniteGraph restrict_to(const FiniteGraph& g, int m);
FiniteGraph relabel(const FiniteGraph& g, std::span<const int> perm);
FiniteGraph project(const FiniteGraph& g, const Injection& phi);

// Number of injections phi:[m]->[n] with projected image equal to `motif`,
// by exhaustive enumeration. Requires motif.order() <= 5 and an enumeration
// cost n^(n-1)...(n-m+1) below ~2e9; use estimate_density beyond that.
std::uint64_t subgraph_count(const FiniteGraph& motif, const FiniteGraph& host);

// Falling factorial n(n-1)...(n-m+1); throws on overflow.
std::uint64_t falling_factorial(int n, int m);

struct Density {
  double value = 0.0;
  bool exact = false;
  std::uint64_t num = 0;  // valid when exact
  std::uint64_t den = 0;  // valid when exact
  double std_error = 0.0;  // valid when estimated
};

Density density(const FiniteGraph& motif, const FiniteGraph& host);

// Uniform-random-injection estimator with binomial standard error.
Density estimate_density(const FiniteGraph& motif, const FiniteGraph& host,
                         int samples, RngStream rng);

// Exact when feasible, estimated otherwise.
Density density_auto(const FiniteGraph& motif, const FiniteGraph& host,
                     int samples, RngStream rng);

// 1/max{m : the graphs agree on [m]}, and 0 when they agree everywhere.
double graph_metric(const FiniteGraph& a, const FiniteGraph& b);

// Calls fn(phi) for every injection phi:[m]->[n], phi given as m 1-based
// vertices. Enumeration order is fixed (odometer over images).
template <typename Fn>
void for_each_injection(int m, int n, Fn&& fn) {
  std::vector<int> phi(static_cast<std::size_t>(m), 0);
  std::vector<std::uint8_t> used(static_cast<std::size_t>(n) + 1, 0);
  int depth = 0;
  int next = 1;
  while (depth >= 0) {
    int v = next;
    while (v <= n && used[static_cast<std::size_t>(v)]) ++v;
    if (v > n) {
      --depth;
      if (depth < 0) break;
      used[static_cast<std::size_t>(phi[static_cast<std::size_t>(depth)])] = 0;
      next = phi[static_cast<std::size_t>(depth)] + 1;
      continue;
    }
    phi[static_cast<std::size_t>(depth)] = v;
    used[static_cast<std::size_t>(v)] = 1;
    if (depth == m - 1) {
      fn(std::span<const int>(phi));
      used[static_cast<std::size_t>(v)] = 0;
      next = v + 1;
    } else {
      ++depth;
      next = 1;
    }
  }
}

}  // namespace graphdyn

#endif
