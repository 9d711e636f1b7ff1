#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace fld {

// Deterministic random source. Every random choice in the pipeline goes
// through this wrapper instead of <random> distributions, whose output is
// implementation-defined; corpus bytes must not depend on the standard
// library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Unbiased uniform draw in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    std::uint64_t r = next();
    while (r < threshold) r = next();
    return r % n;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(below(n)); }

  // Uniform in [lo, hi], inclusive.
  std::int64_t range(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool chance(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return static_cast<double>(below(1u << 30)) < p * static_cast<double>(1u << 30);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

  // Index into a nonnegative weight vector; at least one weight must be > 0.
  std::size_t pick_weighted(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double x = (static_cast<double>(below(1u << 30)) / static_cast<double>(1u << 30)) * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      x -= weights[i];
      if (x < 0.0) return i;
    }
    return weights.size() - 1;
  }

  // Fisher-Yates, driven by below() so element order is reproducible.
  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
  }

  // Independent per-item stream so items can be produced in any order or in
  // parallel without changing their content.
  static std::uint64_t derive(std::uint64_t master, std::uint64_t stream) {
    return splitmix(master + 0x9E3779B97F4A7C15ull * (stream + 1));
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace fld
