#pragma once

// Philox4x32-10 keyed counter-based pseudorandom function (Salmon et al.,
// "Parallel random numbers: as easy as 1, 2, 3", SC 2011).
//
// Every random quantity in the library is a pure function of a 64-bit key
// and a 128-bit counter, so results never depend on call order, thread
// count or platform <random> implementations.

#include <array>
#include <cstdint>

namespace nkcloud {

class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  constexpr Philox4x32() = default;
  constexpr explicit Philox4x32(Key key) : key_(key) {}
  constexpr explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  constexpr Counter operator()(Counter ctr) const {
    Key key = key_;
    for (int round = 0; round < 10; ++round) {
      if (round > 0) {
        key[0] += kWeyl0;
        key[1] += kWeyl1;
      }
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
      const auto lo0 = static_cast<std::uint32_t>(p0);
      const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
      const auto lo1 = static_cast<std::uint32_t>(p1);
      ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
  }

  constexpr Key key() const { return key_; }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53u;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

  Key key_{0, 0};
};

// Counter word 2 carries a domain tag so independent uses of one seed never
// share counters.
enum class Stream : std::uint32_t {
  contribution = 0x636f6e74u,  // "cont"
  links = 0x6c696e6bu,         // "link"
  sample = 0x73616d70u,        // "samp"
  run_start = 0x72756e73u,     // "runs"
};

// Uniform double in [0, 1) from the top 53 bits of two output words.
constexpr double to_unit_interval(std::uint32_t hi, std::uint32_t lo) {
  const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
  return static_cast<double>(bits) * 0x1.0p-53;
}

// Unbiased integer in [0, bound) by rejection; `attempt` walks counter word 3.
inline std::uint32_t uniform_below(const Philox4x32& prf, Philox4x32::Counter ctr,
                                   std::uint32_t bound) {
  const std::uint32_t limit = static_cast<std::uint32_t>(-bound) % bound;  // 2^32 mod bound
  for (std::uint32_t attempt = 0;; ++attempt) {
    ctr[3] = attempt;
    const auto out = prf(ctr);
    for (const std::uint32_t r : out) {
      const std::uint64_t m = std::uint64_t{r} * bound;
      if (static_cast<std::uint32_t>(m) >= limit) return static_cast<std::uint32_t>(m >> 32);
    }
  }
}

}  // namespace nkcloud
