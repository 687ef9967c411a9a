#pragma once

#include <cstdint>
#include <random>

#include "confint/error.hpp"

namespace confint {

/// Deterministic random stream keyed by (seed, stream id). Identical keys give
/// identical sequences within one build; distinct stream ids are seeded
/// through std::seed_seq so parallel tasks can each own an independent stream.
/// Single owner: never share one stream between threads.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream_id),
                      static_cast<std::uint32_t>(stream_id >> 32), 0x636f6e66u};
    engine_.seed(seq);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n) without modulo bias.
  std::uint64_t choose(std::uint64_t n) {
    if (n == 0) throw DomainError("RngStream::choose: n must be >= 1");
    return std::uniform_int_distribution<std::uint64_t>(0, n - 1)(engine_);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::mt19937_64 engine_;
};

}  // namespace confint
