#pragma once

#include <cstdint>
#include <random>

namespace omnideblur {

/// Deterministic random source: identical seeds give identical draw
/// sequences, independent of platform (the [0,1) and normal draws avoid
/// std::distribution implementations, which are not portable).
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), gen_(seed) {}

  std::uint64_t seed() const { return seed_; }

  /// Uniform on [0,1) with 53 random bits.
  double uniform01() {
    return double(gen_() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller.
  double normal();

  /// Derived generator for an independent stream (bench corpus entries).
  SeededRng fork(std::uint64_t stream) const;

 private:
  std::uint64_t seed_;
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace omnideblur
