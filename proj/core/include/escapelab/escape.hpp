#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "escapelab/disk_area.hpp"
#include "escapelab/paths.hpp"
#include "escapelab/rng.hpp"
#include "escapelab/vec.hpp"

namespace escapelab::escape {

struct QuadratureSettings {
  double h = 0.005;        // grid spacing of the area integral
  double t_cap = 16.0;     // give up past this time and flag truncation
  double eps_area = 1e-10; // stop once the non-escape area falls below this
};

// Step size for bracketing boundary crossings of curved paths.
inline constexpr double kCurvedStep = 1e-3;

// Discrete approximant of a non-escape region: intersection of unit disks
// centered at -path(t_i) over a finite partition ending at t.
struct NonEscapeApprox {
  double t = 0.0;
  std::vector<double> partition_times;
  std::optional<geom::ArcRegion> region;  // 2D exact variant only
  double area_or_volume = 0.0;
  bool exact = true;
  double stderr_value = 0.0;  // Monte Carlo variant only
};

enum class Method { quadrature, monte_carlo, closed_form };

std::string method_name(Method m);

struct AreaSample {
  double t = 0.0;
  double area = 0.0;
  double cumulative = 0.0;  // running estimate of the mean escape time
};

struct MeanEscapeEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  bool truncated = false;  // value is a lower bound when set
  Method method = Method::quadrature;
  std::vector<AreaSample> diagnostics;
};

// Exact area of the discrete non-escape region for a 2D path.
NonEscapeApprox non_escape_area(const paths::UnitSpeedPath& path, double t,
                                const paths::Partition& partition);

// Monte Carlo volume of the discrete non-escape region in any dimension.
NonEscapeApprox non_escape_volume_mc(const paths::UnitSpeedPath& path, double t,
                                     const paths::Partition& partition,
                                     std::size_t samples, Rng& rng);

// area(S_line(t)): the two-endpoint lens, since intermediate disks of a
// straight line contain it.
double line_nonescape_area(double t);

// Mean escape time of a 2D path as the left-Riemann sum of non-escape areas
// over a uniform grid, each term the exact area of the intersection of all
// grid disks so far. The sum upper-bounds the true mean and decreases as the
// grid refines.
MeanEscapeEstimate mean_escape_quadrature(const paths::UnitSpeedPath& path,
                                          const QuadratureSettings& settings = {});

// Mean escape time of the straight line by adaptive quadrature of the lens
// area, to the requested absolute tolerance.
MeanEscapeEstimate mean_escape_line_quadrature(double tolerance);

// First time t >= 0 with |x + t u| = 1, for |x| <= 1 and unit u.
double line_escape_time(const VecN& x, const VecN& u);

struct EscapeTime {
  double t = 0.0;
  bool escaped = true;  // false: still inside at t_cap
};

// First time the translated path x + path(t) leaves the open unit ball.
// Segment paths solve the ray-sphere quadratic per segment; curved paths
// step by `step` and bisect the bracketed crossing down to 1e-12.
EscapeTime path_escape_time(const paths::UnitSpeedPath& path, const VecN& x,
                            double t_cap = 16.0, double step = kCurvedStep);

// Sample mean of path_escape_time over uniform starting points in the unit
// n-ball. Non-escaping samples are counted at t_cap and flag truncation, so
// the reported value is a lower bound in that case.
MeanEscapeEstimate mean_escape_monte_carlo(const paths::UnitSpeedPath& path,
                                           std::size_t n, std::size_t samples,
                                           Rng& rng, double t_cap = 16.0);

}  // namespace escapelab::escape
