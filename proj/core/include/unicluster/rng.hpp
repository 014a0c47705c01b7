#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace unicluster {

/// Deterministic random source.
///
/// The bit stream is std::mt19937_64, whose output sequence is fixed by the
/// C++ standard. All derived draws are computed here rather than through
/// <random> distributions, whose algorithms are implementation-defined:
///   - uniform():   top 53 bits of one draw scaled by 2^-53, in [0, 1).
///   - normal():    Box-Muller on two uniforms, both outputs used in turn.
///   - below(m):    rejection sampling on the largest multiple of m.
/// Identical seeds therefore produce identical streams on every platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform();
  double normal();
  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Fisher-Yates shuffle of 0..n-1.
  std::vector<std::size_t> permutation(std::size_t n);
  /// count distinct indices from 0..n-1, in draw order.
  std::vector<std::size_t> sample_without_replacement(std::size_t n, std::size_t count);

 private:
  std::mt19937_64 engine_;
  double spare_normal_ = 0.0;
  bool has_spare_ = false;
};

inline Rng rng_stream(std::uint64_t seed) { return Rng(seed); }

}  // namespace unicluster
