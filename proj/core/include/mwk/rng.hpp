#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace mwk {

/// Seedable generator with output that is identical on every conforming
/// standard library.
///
/// The engine is std::mt19937_64 seeded through std::seed_seq with the
/// 32-bit words {seed_lo, seed_hi, stream_lo, stream_hi}; both are fully
/// specified by the standard. Distributions are implemented here rather than
/// taken from <random>, whose distribution algorithms are
/// implementation-defined:
///   uniform01  = (next() >> 11) * 2^-53
///   below(n)   = rejection sampling on next() against the largest multiple of n
///   normal     = Box-Muller on (1 - uniform01(), uniform01()), both outputs used
///
/// Distinct `stream` values give independent substreams for the same seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next() { return engine_(); }
  double uniform01();
  double uniform(double lo, double hi);
  double normal();
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
  double cached_normal_ = 0.0;
  bool has_cached_normal_ = false;
};

}  // namespace mwk
