#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>

namespace dualslope {

inline constexpr std::uint64_t splitmix64(std::uint64_t& state) noexcept {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256++; satisfies UniformRandomBitGenerator.
class Xoshiro256pp {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256pp(std::uint64_t seed) noexcept {
    for (auto& word : s_) word = splitmix64(seed);
  }

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept {
    const std::uint64_t out = std::rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = std::rotl(s_[3], 45);
    return out;
  }

  /// Uniform on (0, 1].
  double uniform_pos() noexcept { return static_cast<double>(((*this)() >> 11) + 1) * 0x1.0p-53; }

  double exponential() noexcept { return -std::log(uniform_pos()); }

 private:
  std::uint64_t s_[4];
};

/// Independent stream for one trial, keyed on (master seed, trial index) so a
/// trial's draws do not depend on which worker runs it.
inline Xoshiro256pp trial_stream(std::uint64_t master_seed, std::uint64_t trial) noexcept {
  std::uint64_t key = master_seed;
  const std::uint64_t a = splitmix64(key);
  std::uint64_t mixed = a ^ (trial * 0xD1B54A32D192ED03ULL);
  return Xoshiro256pp(splitmix64(mixed));
}

}  // namespace dualslope
