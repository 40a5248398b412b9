#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace ordmatch {

/// Reproducible random source keyed by (seed, stream id).
///
/// Identical keys produce identical draw sequences on every platform. The
/// generator is xoshiro256** with its state expanded from the key through
/// std::seed_seq, so neighbouring stream ids give unrelated sequences. Monte
/// Carlo trial t of a run with seed s draws from RandomStream(s, t).
///
/// Satisfies UniformRandomBitGenerator, so it can drive std::shuffle.
class RandomStream {
 public:
  using result_type = std::uint64_t;

  RandomStream(std::uint64_t seed, std::uint64_t stream_id);

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()();

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform01();

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_index(std::uint64_t bound);

  /// True with probability p (p <= 0 never, p >= 1 always).
  bool bernoulli(double p);

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::array<std::uint64_t, 4> state_{};
};

}  // namespace ordmatch
