#pragma once

#include <cmath>
#include <cstdint>

namespace projwalk {

// Counter-based generator (Philox-2x64-10). Each (seed, stream) pair owns a
// disjoint sequence, so replicas can be keyed by index without coordination
// and replay is exact for a fixed pair.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream)
      : key_(seed), stream_(stream), counter_(0), have_spare_(false), spare_(0) {}

  std::uint64_t next_u64() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    std::uint64_t x0 = counter_++;
    std::uint64_t x1 = stream_;
    std::uint64_t k = key_;
    for (int round = 0; round < 10; ++round) {
      const auto prod = static_cast<__uint128_t>(kMultiplier) * x0;
      const auto lo = static_cast<std::uint64_t>(prod);
      const auto hi = static_cast<std::uint64_t>(prod >> 64);
      x0 = hi ^ x1 ^ k;
      x1 = lo;
      k += kWeyl;
    }
    spare_ = x1;
    have_spare_ = true;
    return x0;
  }

  // Uniform in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller (no state beyond the counter).
  double next_normal() {
    double u1 = next_double();
    double u2 = next_double();
    while (u1 <= 0.0) u1 = next_double();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

  std::uint64_t seed() const { return key_; }
  std::uint64_t stream() const { return stream_; }

 private:
  static constexpr std::uint64_t kMultiplier = 0xD2B74407B1CE6E93ULL;
  static constexpr std::uint64_t kWeyl = 0x9E3779B97F4A7C15ULL;
  static constexpr double kPi = 3.14159265358979323846;

  std::uint64_t key_;
  std::uint64_t stream_;
  std::uint64_t counter_;
  bool have_spare_;
  std::uint64_t spare_;
};

// Stream-id layout: high bits tag the consumer so different operations never
// share a stream even for equal replica indices.
namespace stream_domain {
inline constexpr std::uint64_t kPath = 1ULL << 56;
inline constexpr std::uint64_t kStationary = 2ULL << 56;
inline constexpr std::uint64_t kTail = 3ULL << 56;
inline constexpr std::uint64_t kLltCount = 4ULL << 56;
inline constexpr std::uint64_t kTilted = 5ULL << 56;
inline constexpr std::uint64_t kDiagnostic = 6ULL << 56;
inline constexpr std::uint64_t kVariance = 7ULL << 56;
}  // namespace stream_domain

}  // namespace projwalk
