#include "escapelab/closedform.hpp"

#include <cmath>

#include "escapelab/errors.hpp"
#include "escapelab/measures.hpp"

namespace escapelab::closedform {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLogTwoOverSqrtPi = 0.12078223763524522235;  // log(2/sqrt(pi))
}  // namespace

double expected_linear_escape(std::size_t n) {
  if (n < 1) throw InvalidDimension("expected_linear_escape: n must be >= 1");
  const double nn = static_cast<double>(n);
  const double log_ratio =
      std::lgamma(0.5 * (nn + 2.0)) - std::lgamma(0.5 * (nn + 3.0));
  return std::exp(kLogTwoOverSqrtPi + log_ratio);
}

double half_chord_length(double r) {
  if (std::abs(r) > 1.0) throw OutOfRange("half_chord_length: |r| must be <= 1");
  return std::sqrt(1.0 - r * r);
}

double chord_marginal_density(double r) {
  if (std::abs(r) > 1.0) throw OutOfRange("chord_marginal_density: |r| must be <= 1");
  return (2.0 / kPi) * std::sqrt(1.0 - r * r);
}

double radial_integral(std::size_t n) {
  if (n < 2) throw InvalidDimension("radial_integral: n must be >= 2");
  const double nn = static_cast<double>(n);
  return 2.0 / (nn * nn - 1.0);
}

double assemble_expectation(std::size_t n) {
  if (n < 2) throw InvalidDimension("assemble_expectation: n must be >= 2");
  const double nn = static_cast<double>(n);
  const double log_value = std::log(4.0) + geom::log_sphere_surface(n - 2) -
                           geom::log_ball_volume(n) - std::log(nn * nn - 1.0);
  return std::exp(log_value);
}

}  // namespace escapelab::closedform
