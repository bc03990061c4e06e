#pragma once

#include <cstddef>

namespace escapelab::geom {

// Volume of the unit n-ball, pi^(n/2) / Gamma(n/2 + 1), evaluated in log space.
double ball_volume(std::size_t n);

// Surface measure of the unit m-sphere S^m (the boundary of the (m+1)-ball),
// 2 pi^((m+1)/2) / Gamma((m+1)/2). m = 0 gives the two-point sphere, measure 2.
double sphere_surface(std::size_t m);

double log_ball_volume(std::size_t n);
double log_sphere_surface(std::size_t m);

}  // namespace escapelab::geom
