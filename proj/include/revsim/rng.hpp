#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace revsim {

// SplitMix64 mixer (Steele, Lea & Flood). Used only to derive seeds for the
// per-episode mt19937_64 streams; all simulation draws come from those.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

inline std::uint64_t mix64(std::uint64_t x) { return SplitMix64(x).next(); }

// FNV-1a over the bytes of a string; stable across platforms.
inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

// Episode seed from (base_seed, policy name, horizon, replicate index).
// Reproducible across machines without storing seed tables.
inline std::uint64_t episode_seed(std::uint64_t base_seed, std::string_view policy,
                                  std::uint64_t horizon, std::uint64_t replicate) {
  std::uint64_t h = mix64(base_seed);
  h = mix64(h ^ fnv1a(policy));
  h = mix64(h ^ horizon);
  h = mix64(h ^ replicate);
  return h;
}

// Uniform double in [0,1) from the top 53 bits of one 64-bit draw.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Per-episode RNG streams. Buyer-type draws and ex-post value draws come
// from separate streams so that two policies sharing a seed face the same
// type sequence even when their purchase patterns differ.
struct EpisodeStreams {
  std::mt19937_64 type_rng;
  std::mt19937_64 value_rng;

  explicit EpisodeStreams(std::uint64_t seed) {
    SplitMix64 s(seed);
    type_rng.seed(s.next());
    value_rng.seed(s.next());
  }
};

}  // namespace revsim
