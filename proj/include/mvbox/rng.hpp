#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <numbers>

namespace mvbox::rng {

// Counter-based generator: draw i of a stream is a pure function of
// (key, i), so replay is bit-exact under any evaluation order or thread
// count. Core mixer is splitmix64.

inline constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t at(std::uint64_t key, std::uint64_t i) {
  return mix64(key + (i + 1) * kGamma);
}

// Derives an independent stream key from a parent key and a word.
inline std::uint64_t derive(std::uint64_t key, std::uint64_t word) {
  return mix64(key ^ (mix64(word + kGamma) + kGamma));
}

inline std::uint64_t hash_double(std::uint64_t h, double d) {
  std::uint64_t bits;
  std::memcpy(&bits, &d, sizeof bits);
  return mix64(h ^ (bits + kGamma));
}

class Stream {
 public:
  explicit Stream(std::uint64_t key) : key_(key) {}

  std::uint64_t u64() { return at(key_, n_++); }

  // [0, 1)
  double uniform01() { return static_cast<double>(u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  // [-1, 1)
  double symmetric() { return 2.0 * uniform01() - 1.0; }

  // Standard normal via Box-Muller; second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 1.0 - uniform01();  // (0, 1], keeps log finite
    double u2 = uniform01();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t key_;
  std::uint64_t n_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace mvbox::rng
