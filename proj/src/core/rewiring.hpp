#ifndef GRAPHDYN_CORE_REWIRING_HPP
#define GRAPHDYN_CORE_REWIRING_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "graph.hpp"

namespace graphdyn {

// Per-pair relay: the new edge status is read from `from0` where the edge is
// currently absent and from `from1` where it is present.
struct EdgeRule {
  std::uint8_t from0 = 0;
  std::uint8_t from1 = 1;

  bool operator==(const EdgeRule&) const = default;
};

inline constexpr EdgeRule kIdentityRule{0, 1};

// Rules enumerate as (from0, from1) = (0,0), (0,1), (1,0), (1,1); this
// ordering is fixed project-wide and matches the serialized kernel format.
inline constexpr std::size_t rule_outcome_index(EdgeRule r) {
  return static_cast<std::size_t>(r.from0) * 2 + r.from1;
}
EdgeRule rule_from_outcome_index(std::size_t idx);

// Edgewise map on graphs of a fixed order. Stored as two upper-triangular
// bit arrays in the same colex layout as FiniteGraph; the diagonal is
// structurally (0,0). A default-constructed map of order n is the identity:
// every off-diagonal rule is (0,1).
class RewiringMap {
 public:
  explicit RewiringMap(int n);

  static RewiringMap identity(int n) { return RewiringMap(n); }

  [[nodiscard]] int order() const { return n_; }
  [[nodiscard]] EdgeRule rule(int i, int j) const;
  void set_rule(int i, int j, EdgeRule r);

  [[nodiscard]] bool is_identity() const;
  // Rules that differ from (0,1), as (i, j, rule) with i < j.
  [[nodiscard]] std::vector<std::pair<std::pair<int, int>, EdgeRule>> non_identity_rules() const;

  bool operator==(const RewiringMap&) const = default;

  [[nodiscard]] const std::vector<std::uint8_t>& bits0() const { return from0_; }
  [[nodiscard]] const std::vector<std::uint8_t>& bits1() const { return from1_; }

 private:
  void check_pair(int i, int j) const;

  int n_;
  std::vector<std::uint8_t> from0_;
  std::vector<std::uint8_t> from1_;
};

FiniteGraph apply(const RewiringMap& w, const FiniteGraph& g);

// Returns the map acting as outer-after-inner: apply(compose(outer, inner), g)
// equals apply(outer, apply(inner, g)) for every g.
RewiringMap compose(const RewiringMap& outer, const RewiringMap& inner);

// Forces the status of pair {i,j} to `bit`, leaving every other pair alone.
RewiringMap single_edge_map(int n, int i, int j, int bit);

// Rewrites only the edges incident to vertex i: pair {i,j} gets the rule
// (x0[j-1], x1[j-1]); entries at position i itself are ignored.
RewiringMap vertex_update_map(int n, int i, std::span<const std::uint8_t> x0,
                              std::span<const std::uint8_t> x1);

RewiringMap restrict_to(const RewiringMap& w, int m);
RewiringMap relabel(const RewiringMap& w, std::span<const int> perm);
RewiringMap project(const RewiringMap& w, const Injection& phi);

// Number of injections phi with projected map equal to `pattern`; exact
// enumeration, pattern.order() <= 3.
std::uint64_t rewiring_count(const RewiringMap& pattern, const RewiringMap& host);

Density rewiring_density(const RewiringMap& pattern, const RewiringMap& host);
Density estimate_rewiring_density(const RewiringMap& pattern, const RewiringMap& host,
                                  int samples, RngStream rng);

double rewiring_metric(const RewiringMap& a, const RewiringMap& b);

}  // namespace graphdyn

#endif
