#pragma once

#include <cstddef>

#include "escapelab/rng.hpp"
#include "escapelab/vec.hpp"

namespace escapelab::geom {

// Uniform point in the closed unit n-ball: spherically symmetric direction
// scaled by U^(1/n).
VecN uniform_ball_sample(std::size_t n, Rng& rng);

// Uniform unit vector on S^(n-1).
VecN uniform_sphere_sample(std::size_t n, Rng& rng);

}  // namespace escapelab::geom
