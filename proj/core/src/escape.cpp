#include "escapelab/escape.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "escapelab/errors.hpp"
#include "escapelab/measures.hpp"
#include "escapelab/parallel.hpp"
#include "escapelab/quadrature.hpp"
#include "escapelab/sampling.hpp"

namespace escapelab::escape {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kBisectTol = 1e-12;
}  // namespace

std::string method_name(Method m) {
  switch (m) {
    case Method::quadrature:
      return "quadrature";
    case Method::monte_carlo:
      return "monte_carlo";
    case Method::closed_form:
      return "closed_form";
  }
  return "unknown";
}

double line_nonescape_area(double t) {
  if (t < 0.0) throw NegativeTime("line_nonescape_area: negative time");
  return geom::lens_area(t, 1.0, 1.0);
}

namespace {

void require_partition_ends_at(const paths::Partition& partition, double t) {
  if (std::abs(partition.end() - t) > 1e-9)
    throw InvalidPartition("partition does not end at the requested time");
}

}  // namespace

NonEscapeApprox non_escape_area(const paths::UnitSpeedPath& path, double t,
                                const paths::Partition& partition) {
  require_partition_ends_at(partition, t);
  const geom::DiskConfig config = paths::centers_for_partition(path, partition);
  const geom::IntersectionResult res = geom::intersection_area_2d(config);
  NonEscapeApprox out;
  out.t = t;
  out.partition_times = partition.times();
  out.region = res.region;
  out.area_or_volume = res.area;
  out.exact = true;
  return out;
}

NonEscapeApprox non_escape_volume_mc(const paths::UnitSpeedPath& path, double t,
                                     const paths::Partition& partition,
                                     std::size_t samples, Rng& rng) {
  require_partition_ends_at(partition, t);
  const geom::DiskConfig config = paths::centers_for_partition(path, partition);
  const std::size_t n = config.dim();
  // The region lies inside the first ball (the unit ball at the origin).
  const double r0 = config.radii[0];
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const VecN p = config.centers[0] + geom::uniform_ball_sample(n, rng) * r0;
    bool inside = true;
    for (std::size_t i = 1; i < config.size() && inside; ++i) {
      inside = distance(p, config.centers[i]) <= config.radii[i];
    }
    if (inside) ++hits;
  }
  const double ball = geom::ball_volume(n) * std::pow(r0, static_cast<double>(n));
  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  NonEscapeApprox out;
  out.t = t;
  out.partition_times = partition.times();
  out.area_or_volume = ball * p_hat;
  out.exact = false;
  out.stderr_value = ball * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
  return out;
}

MeanEscapeEstimate mean_escape_quadrature(const paths::UnitSpeedPath& path,
                                          const QuadratureSettings& settings) {
  if (path.dim() != 2)
    throw DimensionMismatch("mean_escape_quadrature: exact areas require a 2D path");
  if (!(settings.h > 0.0) || settings.t_cap < settings.h)
    throw InvalidSpacing("mean_escape_quadrature: need 0 < h <= t_cap");

  geom::DiskIntersectionAccumulator acc(1.0);
  acc.add_disk(path.eval(0.0).to2() * -1.0);

  MeanEscapeEstimate est;
  est.method = Method::quadrature;
  double cumulative = 0.0;
  const double first_area = acc.area();
  double last_area = first_area;

  for (std::size_t i = 0;; ++i) {
    const double t_i = static_cast<double>(i) * settings.h;
    const double area_i = acc.area();
    last_area = area_i;
    if (area_i < settings.eps_area) {
      est.truncated = false;
      est.diagnostics.push_back({t_i, area_i, cumulative});
      break;
    }
    const double t_next = std::min(t_i + settings.h, settings.t_cap);
    cumulative += area_i * (t_next - t_i) / kPi;
    est.diagnostics.push_back({t_i, area_i, cumulative});
    acc.add_disk(path.eval(t_next).to2() * -1.0);
    if (t_next >= settings.t_cap) {
      const double area_cap = acc.area();
      last_area = area_cap;
      est.truncated = area_cap >= settings.eps_area;
      est.diagnostics.push_back({t_next, area_cap, cumulative});
      break;
    }
  }
  est.value = cumulative;
  est.error_bound = (first_area - last_area) * settings.h / kPi;
  return est;
}

MeanEscapeEstimate mean_escape_line_quadrature(double tolerance) {
  if (!(tolerance > 0.0)) throw Error("mean_escape_line_quadrature: tolerance must be positive");
  const auto lens = [](double t) { return geom::lens_area(t, 1.0, 1.0); };
  const double integral = adaptive_simpson(lens, 0.0, 2.0, tolerance * kPi);
  MeanEscapeEstimate est;
  est.value = integral / kPi;
  est.error_bound = tolerance;
  est.truncated = false;
  est.method = Method::quadrature;
  return est;
}

double line_escape_time(const VecN& x, const VecN& u) {
  if (x.dim() != u.dim()) throw DimensionMismatch("line_escape_time: dimension mismatch");
  const double r2 = x.norm2();
  if (r2 > (1.0 + geom::kEpsGeom) * (1.0 + geom::kEpsGeom))
    throw OutsideBall("line_escape_time: start outside the unit ball");
  const double b = x.dot(u);
  const double disc = std::max(1.0 - r2 + b * b, 0.0);
  return std::max(-b + std::sqrt(disc), 0.0);
}

namespace {

// First s in [0, limit] with |c + s u| = 1, assuming |c| <= 1. The inside
// set along the ray is an interval, so the exit root is the larger one.
struct RaySolve {
  double s = 0.0;
  bool hit = false;
};

RaySolve ray_exit(const VecN& c, const VecN& u, double limit) {
  const double b = c.dot(u);
  const double disc = std::max(1.0 - c.norm2() + b * b, 0.0);
  const double s = -b + std::sqrt(disc);
  if (s <= limit) return {std::max(s, 0.0), true};
  return {limit, false};
}

EscapeTime chain_escape(const paths::PolyChain& chain, const VecN& x, double t_cap) {
  VecN pos = x;
  double elapsed = 0.0;
  const std::size_t m = chain.lengths.size();
  for (std::size_t j = 0; j < m; ++j) {
    const bool last = (j + 1 == m);
    const double len = last ? std::numeric_limits<double>::infinity() : chain.lengths[j];
    const RaySolve sol = ray_exit(pos, chain.directions[j], len);
    if (sol.hit) {
      const double t = elapsed + sol.s;
      if (t > t_cap) return {t_cap, false};
      return {t, true};
    }
    pos += chain.directions[j] * chain.lengths[j];
    elapsed += chain.lengths[j];
    if (elapsed > t_cap) return {t_cap, false};
  }
  return {t_cap, false};  // unreachable: the terminal ray always exits
}

EscapeTime arc_escape(const paths::ConstantCurvature2D& arc, const VecN& x,
                      double t_cap, double step) {
  const auto norm_at = [&](double t) {
    Vec2 p = x.to2();
    if (arc.curvature == 0.0) {
      p.x += t;
    } else if (t <= arc.arc_length) {
      const double k = arc.curvature;
      p.x += std::sin(k * t) / k;
      p.y += 2.0 * std::pow(std::sin(0.5 * k * t), 2) / k;
    } else {
      const double k = arc.curvature;
      const double a = arc.arc_length;
      p.x += std::sin(k * a) / k + (t - a) * std::cos(k * a);
      p.y += 2.0 * std::pow(std::sin(0.5 * k * a), 2) / k + (t - a) * std::sin(k * a);
    }
    return p.norm();
  };

  if (norm_at(0.0) >= 1.0) return {0.0, true};

  const double curved_end = std::min(arc.arc_length, t_cap);
  double prev = 0.0;
  while (prev < curved_end) {
    const double next = std::min(prev + step, curved_end);
    if (norm_at(next) >= 1.0) {
      double lo = prev, hi = next;
      while (hi - lo > kBisectTol) {
        const double mid = 0.5 * (lo + hi);
        (norm_at(mid) >= 1.0 ? hi : lo) = mid;
      }
      return {hi, true};
    }
    prev = next;
  }
  if (curved_end >= t_cap) return {t_cap, false};

  // straight continuation, solved exactly
  const double k = arc.curvature;
  const double a = arc.arc_length;
  VecN start{x[0], x[1]};
  VecN dir{1.0, 0.0};
  if (k != 0.0) {
    start = VecN{x[0] + std::sin(k * a) / k,
                 x[1] + 2.0 * std::pow(std::sin(0.5 * k * a), 2) / k};
    dir = VecN{std::cos(k * a), std::sin(k * a)};
  } else {
    start = VecN{x[0] + a, x[1]};
  }
  const RaySolve sol = ray_exit(start, dir, std::numeric_limits<double>::infinity());
  const double t = a + sol.s;
  if (t > t_cap) return {t_cap, false};
  return {t, true};
}

}  // namespace

EscapeTime path_escape_time(const paths::UnitSpeedPath& path, const VecN& x,
                            double t_cap, double step) {
  if (x.norm() > 1.0 + geom::kEpsGeom)
    throw OutsideBall("path_escape_time: start outside the unit ball");
  if (x.dim() != path.dim())
    throw DimensionMismatch("path_escape_time: point/path dimension mismatch");
  if (x.norm() >= 1.0) return {0.0, true};

  if (const auto* line = path.get_if<paths::Line>()) {
    const double t = line_escape_time(x, line->direction);
    if (t > t_cap) return {t_cap, false};
    return {t, true};
  }
  if (const auto* chain = path.get_if<paths::PolyChain>()) {
    return chain_escape(*chain, x, t_cap);
  }
  const auto* arc = path.get_if<paths::ConstantCurvature2D>();
  return arc_escape(*arc, x, t_cap, step);
}

MeanEscapeEstimate mean_escape_monte_carlo(const paths::UnitSpeedPath& path,
                                           std::size_t n, std::size_t samples,
                                           Rng& rng, double t_cap) {
  if (samples < 1) throw Error("mean_escape_monte_carlo: need at least one sample");
  if (path.dim() != n)
    throw DimensionMismatch("mean_escape_monte_carlo: path dimension != n");

  constexpr std::size_t kBlock = 1 << 16;
  const std::size_t blocks = (samples + kBlock - 1) / kBlock;
  struct Partial {
    double sum = 0.0;
    double sum_sq = 0.0;
    std::size_t capped = 0;
  };
  std::vector<Partial> partials(blocks);

  parallel_blocks(blocks, [&](std::size_t b) {
    Rng block_rng = rng.split(b);
    const std::size_t begin = b * kBlock;
    const std::size_t end = std::min(begin + kBlock, samples);
    Partial p;
    for (std::size_t s = begin; s < end; ++s) {
      const VecN start = geom::uniform_ball_sample(n, block_rng);
      const EscapeTime et = path_escape_time(path, start, t_cap);
      const double t = et.escaped ? et.t : t_cap;
      if (!et.escaped) ++p.capped;
      p.sum += t;
      p.sum_sq += t * t;
    }
    partials[b] = p;
  });

  double sum = 0.0, sum_sq = 0.0;
  std::size_t capped = 0;
  for (const Partial& p : partials) {
    sum += p.sum;
    sum_sq += p.sum_sq;
    capped += p.capped;
  }
  const double count = static_cast<double>(samples);
  const double mean = sum / count;
  const double variance =
      samples > 1 ? std::max(sum_sq - count * mean * mean, 0.0) / (count - 1.0) : 0.0;

  MeanEscapeEstimate est;
  est.value = mean;
  est.error_bound = std::sqrt(variance / count);
  est.truncated = capped > 0;
  est.method = Method::monte_carlo;
  return est;
}

}  // namespace escapelab::escape
