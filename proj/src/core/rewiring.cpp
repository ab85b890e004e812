#include "rewiring.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace graphdyn {

EdgeRule rule_from_outcome_index(std::size_t idx) {
  if (idx > 3) throw std::invalid_argument("rule_from_outcome_index: index out of range");
  return EdgeRule{static_cast<std::uint8_t>(idx >> 1), static_cast<std::uint8_t>(idx & 1)};
}

RewiringMap::RewiringMap(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("RewiringMap: vertex count must be positive");
  from0_.assign(pair_count(n), 0);
  from1_.assign(pair_count(n), 1);
}

void RewiringMap::check_pair(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_)
    throw std::invalid_argument("vertex index out of range [1," + std::to_string(n_) + "]");
}

EdgeRule RewiringMap::rule(int i, int j) const {
  check_pair(i, j);
  if (i == j) return EdgeRule{0, 0};
  if (i > j) std::swap(i, j);
  std::size_t idx = pair_index(i, j);
  return EdgeRule{from0_[idx], from1_[idx]};
}

void RewiringMap::set_rule(int i, int j, EdgeRule r) {
  check_pair(i, j);
  if (i == j) throw std::invalid_argument("set_rule: diagonal is fixed at (0,0)");
  if (i > j) std::swap(i, j);
  std::size_t idx = pair_index(i, j);
  from0_[idx] = r.from0 ? 1 : 0;
  from1_[idx] = r.from1 ? 1 : 0;
}

bool RewiringMap::is_identity() const {
  return std::all_of(from0_.begin(), from0_.end(), [](std::uint8_t b) { return b == 0; }) &&
         std::all_of(from1_.begin(), from1_.end(), [](std::uint8_t b) { return b == 1; });
}

std::vector<std::pair<std::pair<int, int>, EdgeRule>> RewiringMap::non_identity_rules() const {
  std::vector<std::pair<std::pair<int, int>, EdgeRule>> out;
  for (std::size_t idx = 0; idx < from0_.size(); ++idx) {
    if (from0_[idx] != 0 || from1_[idx] != 1)
      out.push_back({unrank_pair(idx), EdgeRule{from0_[idx], from1_[idx]}});
  }
  return out;
}

FiniteGraph apply(const RewiringMap& w, const FiniteGraph& g) {
  if (w.order() != g.order()) throw std::invalid_argument("apply: map and graph order mismatch");
  std::vector<std::uint8_t> out(g.bits().size());
  const auto& b0 = w.bits0();
  const auto& b1 = w.bits1();
  const auto& gb = g.bits();
  for (std::size_t idx = 0; idx < out.size(); ++idx)
    out[idx] = gb[idx] ? b1[idx] : b0[idx];
  return FiniteGraph::from_bits(g.order(), std::move(out));
}

RewiringMap compose(const RewiringMap& outer, const RewiringMap& inner) {
  if (outer.order() != inner.order()) throw std::invalid_argument("compose: order mismatch");
  RewiringMap out(inner.order());
  const auto& i0 = inner.bits0();
  const auto& i1 = inner.bits1();
  const auto& o0 = outer.bits0();
  const auto& o1 = outer.bits1();
  for (std::size_t idx = 0; idx < i0.size(); ++idx) {
    auto [i, j] = unrank_pair(idx);
    // relay through the inner result: outer reads from the bit inner wrote
    out.set_rule(i, j, EdgeRule{i0[idx] ? o1[idx] : o0[idx], i1[idx] ? o1[idx] : o0[idx]});
  }
  return out;
}

RewiringMap single_edge_map(int n, int i, int j, int bit) {
  if (i < 1 || j < 1 || i > n || j > n || i == j)
    throw std::invalid_argument("single_edge_map: need distinct vertices in [1,n]");
  if (bit != 0 && bit != 1) throw std::invalid_argument("single_edge_map: bit must be 0 or 1");
  RewiringMap w(n);
  auto b = static_cast<std::uint8_t>(bit);
  w.set_rule(i, j, EdgeRule{b, b});
  return w;
}

RewiringMap vertex_update_map(int n, int i, std::span<const std::uint8_t> x0,
                              std::span<const std::uint8_t> x1) {
  if (i < 1 || i > n) throw std::invalid_argument("vertex_update_map: vertex out of range");
  if (static_cast<int>(x0.size()) != n || static_cast<int>(x1.size()) != n)
    throw std::invalid_argument("vertex_update_map: bit sequences must have length n");
  RewiringMap w(n);
  for (int j = 1; j <= n; ++j) {
    if (j == i) continue;
    w.set_rule(i, j, EdgeRule{x0[static_cast<std::size_t>(j - 1)], x1[static_cast<std::size_t>(j - 1)]});
  }
  return w;
}

RewiringMap restrict_to(const RewiringMap& w, int m) {
  if (m < 1 || m > w.order()) throw std::invalid_argument("restrict_to: size out of range");
  RewiringMap out(m);
  for (std::size_t idx = 0; idx < pair_count(m); ++idx) {
    auto [i, j] = unrank_pair(idx);
    out.set_rule(i, j, EdgeRule{w.bits0()[idx], w.bits1()[idx]});
  }
  return out;
}

RewiringMap relabel(const RewiringMap& w, std::span<const int> perm) {
  const int n = w.order();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("relabel: not a permutation of [n]");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  RewiringMap out(n);
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i)
      out.set_rule(i, j, w.rule(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]));
  return out;
}

RewiringMap project(const RewiringMap& w, const Injection& phi) {
  phi.validate(w.order());
  RewiringMap out(phi.m);
  for (int j = 2; j <= phi.m; ++j)
    for (int i = 1; i < j; ++i)
      out.set_rule(i, j, w.rule(phi.image[static_cast<std::size_t>(i - 1)],
                                phi.image[static_cast<std::size_t>(j - 1)]));
  return out;
}

namespace {

bool projection_matches(const RewiringMap& pattern, const RewiringMap& host,
                        std::span<const int> phi) {
  const int m = pattern.order();
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i)
      if (!(host.rule(phi[static_cast<std::size_t>(i - 1)], phi[static_cast<std::size_t>(j - 1)]) ==
            pattern.rule(i, j)))
        return false;
  return true;
}

}  // namespace

std::uint64_t rewiring_count(const RewiringMap& pattern, const RewiringMap& host) {
  if (pattern.order() > host.order())
    throw std::invalid_argument("rewiring_count: pattern order exceeds host order");
  if (pattern.order() > 3)
    throw std::invalid_argument("rewiring_count: exact enumeration limited to patterns on <= 3 vertices");
  std::uint64_t hits = 0;
  for_each_injection(pattern.order(), host.order(), [&](std::span<const int> phi) {
    if (projection_matches(pattern, host, phi)) ++hits;
  });
  return hits;
}

Density rewiring_density(const RewiringMap& pattern, const RewiringMap& host) {
  std::uint64_t hits = rewiring_count(pattern, host);
  std::uint64_t total = falling_factorial(host.order(), pattern.order());
  return Density{static_cast<double>(hits) / static_cast<double>(total), true, hits, total, 0.0};
}

Density estimate_rewiring_density(const RewiringMap& pattern, const RewiringMap& host,
                                  int samples, RngStream rng) {
  if (pattern.order() > host.order())
    throw std::invalid_argument("estimate_rewiring_density: pattern order exceeds host order");
  if (samples < 1) throw std::invalid_argument("estimate_rewiring_density: need at least one sample");
  const int m = pattern.order();
  const int n = host.order();
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::vector<int> phi(static_cast<std::size_t>(m));
  std::uint64_t hits = 0;
  for (int s = 0; s < samples; ++s) {
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v + 1;
    for (int k = 0; k < m; ++k) {
      auto r = static_cast<std::size_t>(k) + static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(n - k)));
      std::swap(pool[static_cast<std::size_t>(k)], pool[r]);
      phi[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(k)];
    }
    if (projection_matches(pattern, host, phi)) ++hits;
  }
  double p = static_cast<double>(hits) / samples;
  double se = std::sqrt(p * (1.0 - p) / samples);
  return Density{p, false, 0, 0, se};
}

double rewiring_metric(const RewiringMap& a, const RewiringMap& b) {
  if (a.order() != b.order()) throw std::invalid_argument("rewiring_metric: maps must have equal order");
  const int n = a.order();
  for (int m = 2; m <= n; ++m) {
    for (std::size_t idx = pair_count(m - 1); idx < pair_count(m); ++idx) {
      if (a.bits0()[idx] != b.bits0()[idx] || a.bits1()[idx] != b.bits1()[idx])
        return 1.0 / static_cast<double>(m - 1);
    }
  }
  return 0.0;
}

}  // namespace graphdyn
