#include "escapelab/measures.hpp"

#include <cmath>

#include "escapelab/errors.hpp"

namespace escapelab::geom {

namespace {
constexpr double kLogPi = 1.1447298858494001741;
}

double log_ball_volume(std::size_t n) {
  if (n < 1) throw InvalidDimension("ball_volume: n must be >= 1");
  const double half = 0.5 * static_cast<double>(n);
  return half * kLogPi - std::lgamma(half + 1.0);
}

double ball_volume(std::size_t n) { return std::exp(log_ball_volume(n)); }

double log_sphere_surface(std::size_t m) {
  const double half = 0.5 * static_cast<double>(m + 1);
  return std::log(2.0) + half * kLogPi - std::lgamma(half);
}

double sphere_surface(std::size_t m) { return std::exp(log_sphere_surface(m)); }

}  // namespace escapelab::geom
