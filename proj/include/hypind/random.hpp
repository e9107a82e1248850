#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <span>
#include <vector>

namespace hypind {

/// SplitMix64 finalizer; used to derive independent stream seeds.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Stateless seed derivation: the seed for (master, a, b) never depends on
/// how many other streams were drawn before it.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0) {
  return splitmix64(splitmix64(splitmix64(master) ^ (a * 0xd1b54a32d192ed03ULL)) ^
                    (b * 0x8cb92ba72f3d8dd7ULL + 0x632be59bd9b4e019ULL));
}

/// Portable random source. The engine output of mt19937_64 is fixed by the
/// standard; all derived quantities are computed here rather than through
/// <random> distributions, whose algorithms differ across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    // Lemire's multiply-shift with rejection.
    __extension__ using u128 = unsigned __int128;
    u128 m = static_cast<u128>(next()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        m = static_cast<u128>(next()) * bound;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  /// Uniform real in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Uniform real in (0, 1].
  double uniform_open0() { return (static_cast<double>(next() >> 11) + 1.0) * 0x1.0p-53; }

  bool bernoulli(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return uniform01() < p;
  }

  /// Number of failures before the first success of a Bernoulli(p) sequence.
  std::uint64_t geometric(double p) {
    if (p >= 1.0) return 0;
    const double g = std::floor(std::log(uniform_open0()) / std::log1p(-p));
    if (!(g < 1.8e19)) return std::numeric_limits<std::uint64_t>::max();
    return static_cast<std::uint64_t>(g);
  }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[below(i)]);
    }
  }

  template <typename T>
  void shuffle(std::vector<T>& items) {
    shuffle(std::span<T>(items));
  }

  /// `count` distinct values from [0, n), in the order drawn. Rejection for
  /// sparse draws, partial Fisher-Yates otherwise.
  std::vector<std::uint32_t> distinct(std::uint32_t n, std::uint32_t count) {
    std::vector<std::uint32_t> out;
    out.reserve(count);
    if (count == 0) return out;
    if (static_cast<std::uint64_t>(count) * 16 < n) {
      while (out.size() < count) {
        const auto v = static_cast<std::uint32_t>(below(n));
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      }
      return out;
    }
    std::vector<std::uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0U);
    for (std::uint32_t i = 0; i < count; ++i) {
      std::swap(pool[i], pool[i + below(n - i)]);
      out.push_back(pool[i]);
    }
    return out;
  }

  /// Every element of [0, n) independently with probability p, ascending.
  /// Uses geometric skips, so the cost is proportional to the output size.
  std::vector<std::uint32_t> bernoulli_subset(std::uint32_t n, double p) {
    std::vector<std::uint32_t> out;
    if (p <= 0.0 || n == 0) return out;
    if (p >= 1.0) {
      out.resize(n);
      std::iota(out.begin(), out.end(), 0U);
      return out;
    }
    out.reserve(static_cast<std::size_t>(p * n * 1.1) + 8);
    std::uint64_t pos = geometric(p);
    while (pos < n) {
      out.push_back(static_cast<std::uint32_t>(pos));
      const std::uint64_t gap = geometric(p);
      if (gap >= n) break;
      pos += gap + 1;
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace hypind
