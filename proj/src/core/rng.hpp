#ifndef GRAPHDYN_CORE_RNG_HPP
#define GRAPHDYN_CORE_RNG_HPP

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>

namespace graphdyn {

// Deterministic splittable random stream.
//
// Sequential draws advance a splitmix64 state; split(key) derives an
// independent child stream from the stream's identity (not its position),
// so the same (seed, key path) always names the same stream no matter how
// much the parent has been consumed. All output is integer-arithmetic only
// and therefore bit-identical across platforms and runs.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool next_bernoulli(double p) { return next_double() < p; }

  // Unbiased integer in [0, bound) via 128-bit multiply rejection.
  std::uint64_t next_below(std::uint64_t bound) {
    if (bound == 0) throw std::invalid_argument("next_below: bound must be positive");
    while (true) {
      std::uint64_t x = next_u64();
      unsigned __int128 m = static_cast<unsigned __int128>(x) * bound;
      auto lo = static_cast<std::uint64_t>(m);
      if (lo >= bound || lo >= (-bound) % bound) return static_cast<std::uint64_t>(m >> 64);
    }
  }

  double next_exponential(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("next_exponential: rate must be positive");
    return -std::log(1.0 - next_double()) / rate;
  }

  double next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    return std::sqrt(-2.0 * std::log(1.0 - u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Marsaglia-Tsang; shapes below 1 go through the boost identity
  // gamma(a) = gamma(a+1) * U^{1/a}.
  double next_gamma(double shape) {
    if (!(shape > 0.0)) throw std::invalid_argument("next_gamma: shape must be positive");
    if (shape < 1.0) {
      double u = next_double();
      return next_gamma(shape + 1.0) * std::pow(1.0 - u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    while (true) {
      double x = next_normal();
      double v = 1.0 + c * x;
      if (v <= 0.0) continue;
      v = v * v * v;
      double u = next_double();
      if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
      if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double next_beta(double a, double b) {
    double x = next_gamma(a);
    double y = next_gamma(b);
    return x / (x + y);
  }

  // Index into a cumulative race over `weights`; weights need not be
  // normalized. Returns the last index if rounding pushes u past the total.
  std::size_t next_index(std::span<const double> weights) {
    if (weights.empty()) throw std::invalid_argument("next_index: empty weight vector");
    double total = 0.0;
    for (double w : weights) total += w;
    double u = next_double() * total;
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < weights.size(); ++k) {
      acc += weights[k];
      if (u < acc) return k;
    }
    return weights.size() - 1;
  }

  // Independent child stream named by `key`. Deterministic in (seed, key).
  [[nodiscard]] RngStream split(std::uint64_t key) const {
    return RngStream(mix(seed_ ^ mix(key + 0x632BE59BD9B4E019ULL)));
  }

  [[nodiscard]] std::uint64_t seed() const { return seed_; }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t seed_;
  std::uint64_t state_;
};

}  // namespace graphdyn

#endif
