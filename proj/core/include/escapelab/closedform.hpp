#pragma once

#include <cstddef>

namespace escapelab::closedform {

// Expected linear distance to the boundary of the unit n-ball from a uniform
// interior point: (2/sqrt(pi)) * Gamma((n+2)/2) / Gamma((n+3)/2). Evaluated
// via log-gamma differences, stable up to very large n.
double expected_linear_escape(std::size_t n);

// Half chord length at offset r: sqrt(1 - r^2), |r| <= 1.
double half_chord_length(double r);

// Marginal density of the chord offset in the disk: (2/pi) sqrt(1 - r^2).
double chord_marginal_density(double r);

// Integral of r^(n-2) - r^n over [0, 1]: 2 / (n^2 - 1), n >= 2.
double radial_integral(std::size_t n);

// The same expectation assembled from measure identities:
// (4 / ball_volume(n)) * sphere_surface(n-2) / (n^2 - 1), n >= 2.
// Agrees with expected_linear_escape by construction of the closed form.
double assemble_expectation(std::size_t n);

}  // namespace escapelab::closedform
