#include "escapelab/paths.hpp"

#include <cmath>
#include <limits>

#include "escapelab/errors.hpp"

namespace escapelab::paths {

namespace {

VecN require_unit(VecN v, const char* what) {
  const double n = v.norm();
  if (!v.all_finite() || std::abs(n - 1.0) > 1e-9)
    throw Error(std::string(what) + ": direction must be a unit vector");
  return v * (1.0 / n);
}

}  // namespace

Line::Line(VecN direction_) : direction(require_unit(std::move(direction_), "Line")) {}

Line Line::axis(std::size_t dim) { return Line(VecN::unit(dim, 0)); }

PolyChain::PolyChain(std::vector<double> lengths_, std::vector<VecN> directions_)
    : lengths(std::move(lengths_)), directions(std::move(directions_)) {
  if (lengths.empty()) throw Error("PolyChain: no segments");
  if (lengths.size() != directions.size())
    throw LengthMismatch("PolyChain: lengths/directions length mismatch");
  const std::size_t d = directions[0].dim();
  for (auto& dir : directions) {
    if (dir.dim() != d) throw DimensionMismatch("PolyChain: mixed dimensions");
    dir = require_unit(dir, "PolyChain");
  }
  for (const double len : lengths) {
    if (!(len > 0.0) || !std::isfinite(len))
      throw Error("PolyChain: segment lengths must be positive");
  }
}

double PolyChain::defined_length() const {
  double total = 0.0;
  for (const double len : lengths) total += len;
  return total;
}

ConstantCurvature2D::ConstantCurvature2D(double curvature_, double arc_length_)
    : curvature(curvature_), arc_length(arc_length_) {
  if (!std::isfinite(curvature)) throw Error("ConstantCurvature2D: curvature must be finite");
  if (std::isnan(arc_length) || arc_length < 0.0)
    throw Error("ConstantCurvature2D: arc length must be nonnegative");
}

namespace {

VecN eval_line(const Line& line, double t) { return line.direction * t; }

VecN eval_chain(const PolyChain& chain, double t) {
  VecN pos(chain.directions[0].dim());
  double remaining = t;
  for (std::size_t j = 0; j < chain.lengths.size(); ++j) {
    const bool last = (j + 1 == chain.lengths.size());
    if (remaining <= chain.lengths[j] || last) {
      return pos + chain.directions[j] * remaining;
    }
    pos += chain.directions[j] * chain.lengths[j];
    remaining -= chain.lengths[j];
  }
  return pos;  // unreachable
}

// (sin(kt)/k, 2 sin^2(kt/2)/k) is the stable form of the circle through the
// origin tangent to e1 with signed curvature k.
Vec2 circle_point(double k, double t) {
  return {std::sin(k * t) / k, 2.0 * std::pow(std::sin(0.5 * k * t), 2) / k};
}

VecN eval_arc(const ConstantCurvature2D& arc, double t) {
  if (arc.curvature == 0.0) return VecN{t, 0.0};
  const double k = arc.curvature;
  if (t <= arc.arc_length) {
    const Vec2 p = circle_point(k, t);
    return VecN::from2(p);
  }
  const double a = arc.arc_length;
  const Vec2 end = circle_point(k, a);
  const Vec2 tangent{std::cos(k * a), std::sin(k * a)};
  return VecN::from2(end + (t - a) * tangent);
}

}  // namespace

VecN UnitSpeedPath::eval(double t) const {
  if (t < 0.0) throw NegativeTime("UnitSpeedPath::eval: negative time");
  return std::visit(
      [t](const auto& p) -> VecN {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Line>) return eval_line(p, t);
        if constexpr (std::is_same_v<T, PolyChain>) return eval_chain(p, t);
        if constexpr (std::is_same_v<T, ConstantCurvature2D>) return eval_arc(p, t);
      },
      v_);
}

std::size_t UnitSpeedPath::dim() const {
  return std::visit(
      [](const auto& p) -> std::size_t {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, Line>) return p.direction.dim();
        if constexpr (std::is_same_v<T, PolyChain>) return p.directions[0].dim();
        if constexpr (std::is_same_v<T, ConstantCurvature2D>) return 2;
      },
      v_);
}

Partition::Partition(std::vector<double> times) : times_(std::move(times)) {
  if (times_.empty()) throw InvalidPartition("Partition: empty");
  if (times_[0] != 0.0) throw InvalidPartition("Partition: must start at 0");
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i] > times_[i - 1]))
      throw InvalidPartition("Partition: times must be strictly increasing");
  }
}

Partition uniform_partition(double t, double h) {
  if (!(h > 0.0) || !(t > 0.0) || h > t)
    throw InvalidSpacing("uniform_partition: need 0 < h <= t");
  std::vector<double> times{0.0};
  for (std::size_t i = 1;; ++i) {
    const double next = static_cast<double>(i) * h;
    if (next >= t - 1e-12 * std::max(1.0, t)) break;
    times.push_back(next);
  }
  times.push_back(t);
  return Partition(std::move(times));
}

geom::DiskConfig centers_for_partition(const UnitSpeedPath& path,
                                       const Partition& partition) {
  std::vector<VecN> centers;
  centers.reserve(partition.size());
  for (const double t : partition.times()) {
    centers.push_back(path.eval(t) * -1.0);
  }
  return geom::DiskConfig::unit(std::move(centers));
}

}  // namespace escapelab::paths
