#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace ivcheck {

/// Counter-based random stream.
///
/// Output i of a stream with key k is splitmix64(k + (i + 1) * 0x9e3779b97f4a7c15),
/// so a stream is fully determined by its key and position and never by the
/// platform's standard-library distributions. Keys are derived from
/// (seed, stream) and child streams from (parent key, index) through the
/// same finalizer. Everything built on top (uniform doubles, bounded
/// integers, normals) uses only the arithmetic below, so draws are
/// bit-identical across compilers.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(seed ^ mix(stream + kStreamSalt))) {}

  /// Independent child stream; depends only on this stream's key and `index`.
  [[nodiscard]] CounterRng split(std::uint64_t index) const {
    return CounterRng(Key{mix(key_ ^ mix(index + kSplitSalt))});
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    ++counter_;
    return mix(key_ + counter_ * kGamma);
  }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

  /// Uniform integer on [0, n), rejection-sampled so there is no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t r = (*this)();
      if (r >= threshold) return r % n;
    }
  }

  /// Standard normal via Box-Muller (one variate per call, no cached state).
  double normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  /// Exponential(1).
  double exponential() { return -std::log(1.0 - uniform()); }

  /// Symmetric Dirichlet(1, ..., 1) of the given dimension.
  std::vector<double> flat_dirichlet(std::size_t dim) {
    std::vector<double> w(dim);
    double total = 0.0;
    for (auto& v : w) {
      v = exponential();
      total += v;
    }
    for (auto& v : w) v /= total;
    return w;
  }

 private:
  struct Key {
    std::uint64_t value;
  };
  explicit CounterRng(Key key) : key_(key.value) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0xd1b54a32d192ed03ULL;
  static constexpr std::uint64_t kSplitSalt = 0x632be59bd9b4e019ULL;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Draws indices from a fixed probability vector by inverse-CDF lookup.
class DiscreteSampler {
 public:
  explicit DiscreteSampler(std::span<const double> weights) : cumulative_(weights.size()) {
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      cumulative_[i] = acc;
    }
  }

  std::size_t operator()(CounterRng& rng) const {
    const double r = rng.uniform() * cumulative_.back();
    std::size_t lo = 0;
    std::size_t hi = cumulative_.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (r < cumulative_[mid]) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    return lo;
  }

 private:
  std::vector<double> cumulative_;
};

}  // namespace ivcheck
