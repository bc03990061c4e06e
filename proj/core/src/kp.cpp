#include "escapelab/kp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "escapelab/errors.hpp"
#include "escapelab/measures.hpp"
#include "escapelab/sampling.hpp"

namespace escapelab::kp {

namespace {

constexpr double kAreaSlack = 1e-9;
constexpr double kExpansionSlack = 1e-12;

VecN centroid(const geom::DiskConfig& config) {
  VecN c(config.dim());
  for (const VecN& p : config.centers) c += p;
  return c * (1.0 / static_cast<double>(config.size()));
}

}  // namespace

ConfigPair::ConfigPair(geom::DiskConfig p_, geom::DiskConfig q_)
    : p(std::move(p_)), q(std::move(q_)) {
  if (p.size() != q.size())
    throw LengthMismatch("ConfigPair: configurations differ in size");
  if (p.dim() != q.dim())
    throw DimensionMismatch("ConfigPair: configurations differ in dimension");
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p.radii[i] != q.radii[i])
      throw LengthMismatch("ConfigPair: radii lists differ");
  }
}

ExpansionCheck is_expansion(const ConfigPair& pair, double slack) {
  ExpansionCheck out;
  for (std::size_t i = 0; i < pair.p.size(); ++i) {
    for (std::size_t j = i + 1; j < pair.p.size(); ++j) {
      const double dp = distance(pair.p.centers[i], pair.p.centers[j]);
      const double dq = distance(pair.q.centers[i], pair.q.centers[j]);
      if (dq < dp - slack) {
        out.ok = false;
        out.i = i;
        out.j = j;
        out.dist_p = dp;
        out.dist_q = dq;
        return out;
      }
    }
  }
  return out;
}

ConfigPair contract_by_scaling(const geom::DiskConfig& q, double lambda) {
  if (!(lambda > 0.0) || lambda > 1.0)
    throw InvalidLambda("contract_by_scaling: lambda must be in (0, 1]");
  const VecN mid = centroid(q);
  std::vector<VecN> centers;
  centers.reserve(q.size());
  for (const VecN& c : q.centers) centers.push_back(mid + (c - mid) * lambda);
  return ConfigPair(geom::DiskConfig(std::move(centers), q.radii), q);
}

ConfigPair contract_by_projection(const geom::DiskConfig& q, const VecN& axis) {
  if (axis.dim() != q.dim())
    throw DimensionMismatch("contract_by_projection: axis dimension mismatch");
  if (std::abs(axis.norm() - 1.0) > 1e-9)
    throw Error("contract_by_projection: axis must be a unit vector");
  const VecN mid = centroid(q);
  std::vector<VecN> centers;
  centers.reserve(q.size());
  for (const VecN& c : q.centers) centers.push_back(mid + axis * axis.dot(c - mid));
  return ConfigPair(geom::DiskConfig(std::move(centers), q.radii), q);
}

Kp2dReport verify_kp_2d(const ConfigPair& pair) {
  if (pair.p.dim() != 2) throw DimensionMismatch("verify_kp_2d: pair is not 2D");
  const ExpansionCheck exp = is_expansion(pair, kExpansionSlack);
  if (!exp.ok) throw NotAnExpansion("verify_kp_2d: q is not an expansion of p");

  Kp2dReport rep;
  rep.intersection_p = geom::intersection_area_2d(pair.p).area;
  rep.intersection_q = geom::intersection_area_2d(pair.q).area;
  rep.union_p = geom::union_area_2d(pair.p).value;
  rep.union_q = geom::union_area_2d(pair.q).value;
  rep.intersection_ok = rep.intersection_p >= rep.intersection_q - kAreaSlack;
  rep.union_ok = rep.union_p <= rep.union_q + kAreaSlack;
  return rep;
}

namespace {

struct McVolume {
  double value = 0.0;
  double se = 0.0;
};

McVolume mc_intersection_volume(const geom::DiskConfig& config, std::size_t samples,
                                Rng& rng) {
  // Sample inside the smallest ball; the intersection lies within it.
  std::size_t smallest = 0;
  for (std::size_t i = 1; i < config.size(); ++i) {
    if (config.radii[i] < config.radii[smallest]) smallest = i;
  }
  const std::size_t n = config.dim();
  const double r0 = config.radii[smallest];
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const VecN p =
        config.centers[smallest] + geom::uniform_ball_sample(n, rng) * r0;
    bool inside = true;
    for (std::size_t i = 0; i < config.size() && inside; ++i) {
      if (i == smallest) continue;
      inside = distance(p, config.centers[i]) <= config.radii[i];
    }
    if (inside) ++hits;
  }
  const double domain = geom::ball_volume(n) * std::pow(r0, static_cast<double>(n));
  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  return {domain * p_hat,
          domain * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples))};
}

McVolume mc_union_volume(const geom::DiskConfig& config, std::size_t samples,
                         Rng& rng) {
  const std::size_t n = config.dim();
  std::vector<double> lo(n, std::numeric_limits<double>::infinity());
  std::vector<double> hi(n, -std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < config.size(); ++i) {
    for (std::size_t d = 0; d < n; ++d) {
      lo[d] = std::min(lo[d], config.centers[i][d] - config.radii[i]);
      hi[d] = std::max(hi[d], config.centers[i][d] + config.radii[i]);
    }
  }
  double box = 1.0;
  for (std::size_t d = 0; d < n; ++d) box *= hi[d] - lo[d];
  std::size_t hits = 0;
  VecN p(n);
  for (std::size_t s = 0; s < samples; ++s) {
    for (std::size_t d = 0; d < n; ++d) p[d] = rng.next_uniform(lo[d], hi[d]);
    for (std::size_t i = 0; i < config.size(); ++i) {
      if (distance(p, config.centers[i]) <= config.radii[i]) {
        ++hits;
        break;
      }
    }
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  return {box * p_hat,
          box * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples))};
}

}  // namespace

KpMcReport verify_kp_mc(const ConfigPair& pair, std::size_t samples, Rng& rng) {
  const ExpansionCheck exp = is_expansion(pair, kExpansionSlack);
  if (!exp.ok) throw NotAnExpansion("verify_kp_mc: q is not an expansion of p");

  Rng rng_ip = rng.split(0);
  Rng rng_iq = rng.split(1);
  Rng rng_up = rng.split(2);
  Rng rng_uq = rng.split(3);
  const McVolume ip = mc_intersection_volume(pair.p, samples, rng_ip);
  const McVolume iq = mc_intersection_volume(pair.q, samples, rng_iq);
  const McVolume up = mc_union_volume(pair.p, samples, rng_up);
  const McVolume uq = mc_union_volume(pair.q, samples, rng_uq);

  KpMcReport rep;
  rep.intersection_p = ip.value;
  rep.intersection_q = iq.value;
  rep.union_p = up.value;
  rep.union_q = uq.value;
  rep.se_intersection = std::hypot(ip.se, iq.se);
  rep.se_union = std::hypot(up.se, uq.se);
  rep.intersection_ok = ip.value >= iq.value - 4.0 * rep.se_intersection;
  rep.union_ok = up.value <= uq.value + 4.0 * rep.se_union;
  return rep;
}

StretchMotion::StretchMotion(std::vector<double> chain_lengths,
                             std::vector<double> target_lengths)
    : chain_lengths_(std::move(chain_lengths)),
      target_lengths_(std::move(target_lengths)) {
  if (chain_lengths_.size() != target_lengths_.size())
    throw LengthMismatch("StretchMotion: gap lists differ in length");
  if (chain_lengths_.empty()) throw InvalidMotion("StretchMotion: no gaps");
  for (std::size_t j = 0; j < chain_lengths_.size(); ++j) {
    if (!(chain_lengths_[j] >= 0.0) || chain_lengths_[j] > target_lengths_[j] + 1e-12)
      throw InvalidMotion("StretchMotion: need 0 <= l_j <= L_j");
  }
}

StretchMotion StretchMotion::from_chain(const paths::UnitSpeedPath& path,
                                        const paths::Partition& partition) {
  const auto& times = partition.times();
  std::vector<double> l, L;
  l.reserve(times.size() - 1);
  L.reserve(times.size() - 1);
  for (std::size_t j = 0; j + 1 < times.size(); ++j) {
    const double chord = distance(path.eval(times[j + 1]), path.eval(times[j]));
    const double gap = times[j + 1] - times[j];
    // unit speed: chord <= gap up to roundoff
    l.push_back(std::min(chord, gap));
    L.push_back(gap);
  }
  return StretchMotion(std::move(l), std::move(L));
}

std::vector<VecN> StretchMotion::eval(double tau) const {
  if (tau < 0.0 || tau > 1.0) throw InvalidTau("StretchMotion::eval: tau must be in [0, 1]");
  std::vector<VecN> points;
  points.reserve(point_count());
  double coord = 0.0;
  points.push_back(VecN{coord, 0.0});
  for (std::size_t j = 0; j < chain_lengths_.size(); ++j) {
    coord += tau * target_lengths_[j] + (1.0 - tau) * chain_lengths_[j];
    points.push_back(VecN{coord, 0.0});
  }
  return points;
}

MotionCheck verify_motion_expansive(const StretchMotion& motion, std::size_t grid) {
  if (grid < 2) throw Error("verify_motion_expansive: grid must be >= 2");
  MotionCheck out;
  const std::size_t count = motion.point_count();
  std::vector<std::vector<double>> prev_dist(count, std::vector<double>(count, 0.0));
  double prev_tau = 0.0;
  for (std::size_t g = 0; g < grid; ++g) {
    const double tau = static_cast<double>(g) / static_cast<double>(grid - 1);
    const std::vector<VecN> pts = motion.eval(tau);
    for (std::size_t i = 0; i < count; ++i) {
      for (std::size_t j = i + 1; j < count; ++j) {
        const double d = distance(pts[i], pts[j]);
        if (g > 0) {
          const double decrease = prev_dist[i][j] - d;
          if (decrease > 1e-12 && decrease > out.decrease) {
            out.ok = false;
            out.i = i;
            out.j = j;
            out.tau_before = prev_tau;
            out.tau_after = tau;
            out.decrease = decrease;
          }
        }
        prev_dist[i][j] = d;
      }
    }
    prev_tau = tau;
  }
  return out;
}

}  // namespace escapelab::kp
