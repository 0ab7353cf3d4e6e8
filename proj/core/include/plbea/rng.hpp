#pragma once

#include <cstdint>
#include <limits>
#include <string_view>

namespace plbea {

// Counter-based SplitMix64. Draw i of a stream is mix(key + i * gamma), so a
// stream is fully described by (key, counter) and can be split into
// statistically independent child streams by re-keying.
class Rng {
 public:
  using result_type = std::uint64_t;

  // Recorded in every generated artifact; bump the suffix if the output
  // sequence for a given seed ever changes.
  static constexpr std::string_view kGeneratorId = "splitmix64-ctr/1";

  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
      : key_(Mix(seed ^ Mix(stream + kStreamSalt))) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept { return Next(); }

  std::uint64_t Next() noexcept { return Mix(key_ + (++counter_) * kGamma); }

  // Uniform in [0, 1) with 53 bits of precision.
  double Uniform01() noexcept {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  // Uniform integer in [0, bound); bound must be positive. Lemire's method
  // with rejection, so the result is exactly uniform.
  std::uint64_t Below(std::uint64_t bound) noexcept {
    using u128 = unsigned __int128;
    u128 product = static_cast<u128>(Next()) * bound;
    auto low = static_cast<std::uint64_t>(product);
    if (low < bound) {
      const std::uint64_t threshold = (0 - bound) % bound;
      while (low < threshold) {
        product = static_cast<u128>(Next()) * bound;
        low = static_cast<std::uint64_t>(product);
      }
    }
    return static_cast<std::uint64_t>(product >> 64);
  }

  // Child stream; does not advance this stream.
  [[nodiscard]] Rng Split(std::uint64_t stream) const noexcept {
    return Rng(key_, stream);
  }

  [[nodiscard]] std::uint64_t draws() const noexcept { return counter_; }

  static constexpr std::uint64_t Mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kStreamSalt = 0x632be59bd9b4e019ULL;

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace plbea
