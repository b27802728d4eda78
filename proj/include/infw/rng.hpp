#pragma once

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <string_view>

#include "infw/common.hpp"

namespace infw {

namespace detail {

// SplitMix64 output function (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline std::uint64_t combine(std::uint64_t key, std::uint64_t word) {
  return mix64(key ^ (word + 0x9E3779B97F4A7C15ULL + (key << 6) + (key >> 2)));
}

inline std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

}  // namespace detail

// Counter-based pseudo-random stream (SplitMix64). A stream is identified by
// a 64-bit seed plus a label (task / fold / grid-cell words); identical
// (seed, label) pairs replay the same byte stream, distinct labels give
// independent streams. See docs/formats.md for the exact derivation.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed,
                     std::initializer_list<std::uint64_t> label = {})
      : key_(detail::mix64(seed)) {
    for (std::uint64_t w : label) key_ = detail::combine(key_, w);
    counter_ = key_;
  }

  // New independent stream derived from this stream's identity.
  RngStream derive(std::uint64_t word) const {
    RngStream s(0);
    s.key_ = detail::combine(key_, word);
    s.counter_ = s.key_;
    s.have_spare_ = false;
    return s;
  }

  RngStream derive(std::string_view name) const {
    return derive(detail::fnv1a(name));
  }

  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ULL; }
  result_type operator()() { return next_u64(); }

  std::uint64_t next_u64() {
    counter_ += 0x9E3779B97F4A7C15ULL;
    return detail::mix64(counter_);
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Uniform integer in [0, n), unbiased via rejection.
  std::uint64_t uniform_int(std::uint64_t n) {
    require(n > 0, "uniform_int: n must be positive");
    const std::uint64_t limit = ~0ULL - ~0ULL % n;
    std::uint64_t v;
    do {
      v = next_u64();
    } while (v >= limit);
    return v % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal, Box-Muller; the second deviate of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform01();  // (0, 1]
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * 3.14159265358979323846 * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace infw
