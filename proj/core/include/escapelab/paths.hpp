#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "escapelab/disk_area.hpp"
#include "escapelab/vec.hpp"

namespace escapelab::paths {

// Straight ray from the origin along a unit direction.
struct Line {
  VecN direction;

  explicit Line(VecN direction_);
  // along the first axis
  static Line axis(std::size_t dim);
};

// Piecewise-linear unit-speed curve: segment j has length lengths[j] and unit
// direction directions[j]; past the total length the path continues straight
// along the last direction.
struct PolyChain {
  std::vector<double> lengths;
  std::vector<VecN> directions;

  PolyChain(std::vector<double> lengths_, std::vector<VecN> directions_);

  double defined_length() const;
};

// Planar arc of constant signed curvature starting at the origin tangent to
// the first axis, continuing straight after arc_length. An infinite
// arc_length keeps circling forever (a looping path that never straightens).
struct ConstantCurvature2D {
  double curvature = 0.0;
  double arc_length = 0.0;

  ConstantCurvature2D(double curvature_, double arc_length_);
};

// Arc-length-parametrised curve with eval(0) = origin; 1-Lipschitz by
// construction for every variant.
class UnitSpeedPath {
 public:
  using Variant = std::variant<Line, PolyChain, ConstantCurvature2D>;

  UnitSpeedPath(Line line) : v_(std::move(line)) {}          // NOLINT(google-explicit-constructor)
  UnitSpeedPath(PolyChain chain) : v_(std::move(chain)) {}   // NOLINT(google-explicit-constructor)
  UnitSpeedPath(ConstantCurvature2D arc) : v_(arc) {}        // NOLINT(google-explicit-constructor)

  // position at arc length t; throws NegativeTime for t < 0
  VecN eval(double t) const;
  std::size_t dim() const;

  const Variant& variant() const { return v_; }
  template <class T>
  const T* get_if() const {
    return std::get_if<T>(&v_);
  }

 private:
  Variant v_;
};

// Strictly increasing times with t_0 = 0.
class Partition {
 public:
  explicit Partition(std::vector<double> times);

  const std::vector<double>& times() const { return times_; }
  double end() const { return times_.back(); }
  std::size_t size() const { return times_.size(); }

 private:
  std::vector<double> times_;
};

// {0, h, 2h, ..., t}; the final step may be shorter so the partition ends
// exactly at t. Requires 0 < h <= t.
Partition uniform_partition(double t, double h);

// Unit disks centered at -path(t_i), in partition order.
geom::DiskConfig centers_for_partition(const UnitSpeedPath& path,
                                       const Partition& partition);

}  // namespace escapelab::paths
