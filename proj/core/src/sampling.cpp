#include "escapelab/sampling.hpp"

#include <cmath>

#include "escapelab/errors.hpp"

namespace escapelab::geom {

VecN uniform_sphere_sample(std::size_t n, Rng& rng) {
  if (n < 1) throw InvalidDimension("uniform_sphere_sample: n must be >= 1");
  VecN v(n);
  double norm = 0.0;
  do {
    for (std::size_t i = 0; i < n; ++i) v[i] = rng.next_normal();
    norm = v.norm();
  } while (norm < 1e-8);
  return v * (1.0 / norm);
}

VecN uniform_ball_sample(std::size_t n, Rng& rng) {
  VecN dir = uniform_sphere_sample(n, rng);
  const double radius =
      std::pow(rng.next_double(), 1.0 / static_cast<double>(n));
  return dir * radius;
}

}  // namespace escapelab::geom
