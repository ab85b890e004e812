#include "graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace graphdyn {

std::pair<int, int> unrank_pair(std::size_t index) {
  // smallest j with (j-1)(j-2)/2 > index
  auto j = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0) + 1;
  while (pair_index(1, j) > index) --j;
  while (pair_index(1, j + 1) <= index) ++j;
  int i = static_cast<int>(index - pair_index(1, j)) + 1;
  return {i, j};
}

FiniteGraph::FiniteGraph(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("FiniteGraph: vertex count must be positive");
  bits_.assign(pair_count(n), 0);
}

FiniteGraph::FiniteGraph(int n, std::span<const std::pair<int, int>> edges) : FiniteGraph(n) {
  for (auto [i, j] : edges) set_edge(i, j, true);
}

FiniteGraph FiniteGraph::complete(int n) {
  FiniteGraph g(n);
  std::fill(g.bits_.begin(), g.bits_.end(), std::uint8_t{1});
  return g;
}

FiniteGraph FiniteGraph::from_code(int n, std::uint64_t code) {
  FiniteGraph g(n);
  if (pair_count(n) > 64) throw std::invalid_argument("from_code: graph too large for a 64-bit code");
  for (std::size_t b = 0; b < g.bits_.size(); ++b) g.bits_[b] = (code >> b) & 1u;
  return g;
}

FiniteGraph FiniteGraph::from_bits(int n, std::vector<std::uint8_t> bits) {
  FiniteGraph g(n);
  if (bits.size() != pair_count(n)) throw std::invalid_argument("from_bits: bit vector size mismatch");
  for (auto& b : bits) b = b ? 1 : 0;
  g.bits_ = std::move(bits);
  return g;
}

void FiniteGraph::check_pair(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_)
    throw std::invalid_argument("vertex index out of range [1," + std::to_string(n_) + "]");
}

bool FiniteGraph::edge(int i, int j) const {
  check_pair(i, j);
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return bits_[pair_index(i, j)] != 0;
}

void FiniteGraph::set_edge(int i, int j, bool present) {
  check_pair(i, j);
  if (i == j) throw std::invalid_argument("set_edge: loops are not representable");
  if (i > j) std::swap(i, j);
  bits_[pair_index(i, j)] = present ? 1 : 0;
}

std::size_t FiniteGraph::edge_count() const {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

std::vector<std::pair<int, int>> FiniteGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t b = 0; b < bits_.size(); ++b)
    if (bits_[b]) out.push_back(unrank_pair(b));
  return out;
}

std::uint64_t FiniteGraph::code() const {
  if (bits_.size() > 64) throw std::invalid_argument("code: graph too large for a 64-bit code");
  std::uint64_t c = 0;
  for (std::size_t b = 0; b < bits_.size(); ++b)
    if (bits_[b]) c |= (std::uint64_t{1} << b);
  return c;
}

Injection::Injection(std::initializer_list<int> img) : m(static_cast<int>(img.size())), image(img) {}
Injection::Injection(std::vector<int> img) : m(static_cast<int>(img.size())), image(std::move(img)) {}

void Injection::validate(int host_order) const {
  if (m < 1 || static_cast<std::size_t>(m) != image.size())
    throw std::invalid_argument("Injection: inconsistent domain size");
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(host_order) + 1, 0);
  for (int v : image) {
    if (v < 1 || v > host_order)
      throw std::invalid_argument("Injection: image entry out of range");
    if (seen[static_cast<std::size_t>(v)]) throw std::invalid_argument("Injection: image entries must be distinct");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

FiniteGraph restrict_to(const FiniteGraph& g, int m) {
  if (m < 1 || m > g.order()) throw std::invalid_argument("restrict_to: size out of range");
  // colex layout: the [m] pairs are the leading prefix
  std::vector<std::uint8_t> head(g.bits().begin(), g.bits().begin() + static_cast<std::ptrdiff_t>(pair_count(m)));
  return FiniteGraph::from_bits(m, std::move(head));
}

FiniteGraph relabel(const FiniteGraph& g, std::span<const int> perm) {
  const int n = g.order();
  if (static_cast<int>(perm.size()) != n) throw std::invalid_argument("relabel: permutation size mismatch");
  std::vector<std::uint8_t> seen(static_cast<std::size_t>(n) + 1, 0);
  for (int v : perm) {
    if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
      throw std::invalid_argument("relabel: not a permutation of [n]");
    seen[static_cast<std::size_t>(v)] = 1;
  }
  FiniteGraph out(n);
  for (int j = 2; j <= n; ++j)
    for (int i = 1; i < j; ++i)
      out.set_edge(i, j, g.edge(perm[static_cast<std::size_t>(i - 1)], perm[static_cast<std::size_t>(j - 1)]));
  return out;
}

FiniteGraph project(const FiniteGraph& g, const Injection& phi) {
  phi.validate(g.order());
  FiniteGraph out(phi.m);
  for (int j = 2; j <= phi.m; ++j)
    for (int i = 1; i < j; ++i)
      out.set_edge(i, j, g.edge(phi.image[static_cast<std::size_t>(i - 1)],
                                phi.image[static_cast<std::size_t>(j - 1)]));
  return out;
}

std::uint64_t falling_factorial(int n, int m) {
  if (m < 0 || m > n) throw std::invalid_argument("falling_factorial: need 0 <= m <= n");
  std::uint64_t r = 1;
  for (int t = 0; t < m; ++t) {
    std::uint64_t f = static_cast<std::uint64_t>(n - t);
    if (r > std::numeric_limits<std::uint64_t>::max() / f)
      throw std::overflow_error("falling_factorial: result exceeds 64 bits");
    r *= f;
  }
  return r;
}

namespace {

constexpr std::uint64_t kMaxExactInjections = 2'000'000'000ULL;

void check_motif_host(const FiniteGraph& motif, const FiniteGraph& host) {
  if (motif.order() > host.order())
    throw std::invalid_argument("motif order exceeds host order");
}

bool projection_matches(const FiniteGraph& motif, const FiniteGraph& host,
                        std::span<const int> phi) {
  const int m = motif.order();
  for (int j = 2; j <= m; ++j)
    for (int i = 1; i < j; ++i)
      if (host.edge(phi[static_cast<std::size_t>(i - 1)], phi[static_cast<std::size_t>(j - 1)]) !=
          motif.edge(i, j))
        return false;
  return true;
}

}  // namespace

std::uint64_t subgraph_count(const FiniteGraph& motif, const FiniteGraph& host) {
  check_motif_host(motif, host);
  if (motif.order() > 5)
    throw std::invalid_argument("subgraph_count: exact enumeration limited to motifs on <= 5 vertices");
  const std::uint64_t total = falling_factorial(host.order(), motif.order());
  if (total > kMaxExactInjections)
    throw std::invalid_argument("subgraph_count: enumeration too large; use estimate_density");
  std::uint64_t hits = 0;
  for_each_injection(motif.order(), host.order(), [&](std::span<const int> phi) {
    if (projection_matches(motif, host, phi)) ++hits;
  });
  return hits;
}

Density density(const FiniteGraph& motif, const FiniteGraph& host) {
  std::uint64_t hits = subgraph_count(motif, host);
  std::uint64_t total = falling_factorial(host.order(), motif.order());
  return Density{static_cast<double>(hits) / static_cast<double>(total), true, hits, total, 0.0};
}

Density estimate_density(const FiniteGraph& motif, const FiniteGraph& host,
                         int samples, RngStream rng) {
  check_motif_host(motif, host);
  if (samples < 1) throw std::invalid_argument("estimate_density: need at least one sample");
  const int m = motif.order();
  const int n = host.order();
  std::vector<int> pool(static_cast<std::size_t>(n));
  std::vector<int> phi(static_cast<std::size_t>(m));
  std::uint64_t hits = 0;
  for (int s = 0; s < samples; ++s) {
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v + 1;
    for (int k = 0; k < m; ++k) {  // partial Fisher-Yates: uniform injection
      auto r = static_cast<std::size_t>(k) + static_cast<std::size_t>(rng.next_below(static_cast<std::uint64_t>(n - k)));
      std::swap(pool[static_cast<std::size_t>(k)], pool[r]);
      phi[static_cast<std::size_t>(k)] = pool[static_cast<std::size_t>(k)];
    }
    if (projection_matches(motif, host, phi)) ++hits;
  }
  double p = static_cast<double>(hits) / samples;
  double se = std::sqrt(p * (1.0 - p) / samples);
  return Density{p, false, 0, 0, se};
}

Density density_auto(const FiniteGraph& motif, const FiniteGraph& host,
                     int samples, RngStream rng) {
  if (motif.order() <= 5) {
    std::uint64_t total = falling_factorial(host.order(), motif.order());
    if (total <= kMaxExactInjections) return density(motif, host);
  }
  return estimate_density(motif, host, samples, rng);
}

double graph_metric(const FiniteGraph& a, const FiniteGraph& b) {
  if (a.order() != b.order()) throw std::invalid_argument("graph_metric: graphs must have equal order");
  const int n = a.order();
  for (int m = 2; m <= n; ++m) {
    for (std::size_t idx = pair_count(m - 1); idx < pair_count(m); ++idx) {
      if (a.bits()[idx] != b.bits()[idx]) return 1.0 / static_cast<double>(m - 1);
    }
  }
  return 0.0;
}

}  // namespace graphdyn
