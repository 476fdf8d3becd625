#pragma once

// Counter-based random streams for the simulator.
//
// Every trial owns its own stream, derived only from (seed, trial, lane), so
// results do not depend on how trials are split across workers. The
// algorithm is SplitMix64 and is pinned here bit-for-bit:
//
//   mix(z)   = z ^= z >> 30; z *= 0xBF58476D1CE4E5B9;
//              z ^= z >> 27; z *= 0x94D049BB133111EB; z ^ (z >> 31)
//   state0   = mix(mix(seed ^ lane_tag[lane]) + trial * 0x9E3779B97F4A7C15)
//   next()   = state += 0x9E3779B97F4A7C15; return mix(state)
//   unit53() = next() >> 11            (uniform integer in [0, 2^53))
//
// lane_tag = {0x0, 0xD1B54A32D192ED03}; lane 0 drives strategy choices and
// packet reception, lane 1 drives packet payloads.

#include <cstdint>

namespace wss::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
inline constexpr std::uint64_t kUnitBits = 53;
inline constexpr std::uint64_t kUnitScale = std::uint64_t{1} << kUnitBits;

enum class Lane : unsigned { Decisions = 0, Payloads = 1 };

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class TrialStream {
 public:
  constexpr TrialStream(std::uint64_t seed, std::uint64_t trial, Lane lane)
      : state_(mix64(mix64(seed ^ lane_tag(lane)) + trial * kGolden)) {}

  constexpr std::uint64_t next() {
    state_ += kGolden;
    return mix64(state_);
  }

  constexpr std::uint64_t unit53() { return next() >> (64 - kUnitBits); }

 private:
  static constexpr std::uint64_t lane_tag(Lane lane) {
    return lane == Lane::Decisions ? 0x0ULL : 0xD1B54A32D192ED03ULL;
  }

  std::uint64_t state_;
};

}  // namespace wss::rng
