#pragma once

#include <cmath>
#include <cstdint>

namespace escapelab {

// Splittable counter-based random stream. Output i of stream (seed, id)
// is a pure function of (seed, id, i), so any consumer is reproducible
// from the pair regardless of how many workers share the job: give each
// worker its own split() child and reduce results in stream-id order.
//
// The output function is the SplitMix64 finalizer over key + i * gamma,
// the same construction as java.util.SplittableRandom.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(mix(mix(seed + kGolden) ^ mix(stream + kLeaf))) {}

  // Child stream derived from (this stream, id); independent of the
  // counter position, so splits commute with draws.
  Rng split(std::uint64_t id) const {
    Rng child = *this;
    child.key_ = mix(key_ ^ mix(id + kLeaf));
    child.counter_ = 0;
    child.have_cached_normal_ = false;
    return child;
  }

  std::uint64_t next_u64() { return mix(key_ + (++counter_) * kGolden); }

  // uniform in [0, 1)
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // uniform in (0, 1]
  double next_open_double() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  double next_uniform(double a, double b) { return a + (b - a) * next_double(); }

  // standard normal via Box-Muller; the paired deviate is cached
  double next_normal() {
    if (have_cached_normal_) {
      have_cached_normal_ = false;
      return cached_normal_;
    }
    const double u1 = next_open_double();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * kPi * u2;
    cached_normal_ = radius * std::sin(angle);
    have_cached_normal_ = true;
    return radius * std::cos(angle);
  }

  // uniform in {0, 1, ..., n-1}; bias is negligible for the small n used here
  std::uint64_t next_below(std::uint64_t n) {
    return static_cast<std::uint64_t>(next_double() * static_cast<double>(n)) % n;
  }

 private:
  static constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;
  static constexpr std::uint64_t kLeaf = 0xbb67ae8584caa73bULL;
  static constexpr double kPi = 3.14159265358979323846;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace escapelab
