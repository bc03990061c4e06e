#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "escapelab/errors.hpp"

namespace escapelab {

// Plain 2D vector used by the planar geometry kernel.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) {
    x += o.x;
    y += o.y;
    return *this;
  }

  double dot(Vec2 o) const { return x * o.x + y * o.y; }
  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  // counterclockwise quarter turn
  Vec2 perp() const { return {-y, x}; }
};

inline Vec2 operator*(double s, Vec2 v) { return v * s; }

inline double distance(Vec2 a, Vec2 b) { return (a - b).norm(); }

// Point or direction in R^n with explicit dimension.
class VecN {
 public:
  VecN() = default;
  explicit VecN(std::size_t dim) : c_(dim, 0.0) {}
  VecN(std::initializer_list<double> coords) : c_(coords) {}
  explicit VecN(std::vector<double> coords) : c_(std::move(coords)) {}

  static VecN unit(std::size_t dim, std::size_t axis) {
    VecN v(dim);
    v.c_[axis] = 1.0;
    return v;
  }
  static VecN from2(Vec2 v) { return VecN{v.x, v.y}; }

  std::size_t dim() const { return c_.size(); }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  const std::vector<double>& coords() const { return c_; }

  VecN operator+(const VecN& o) const {
    VecN r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] += o.c_[i];
    return r;
  }
  VecN operator-(const VecN& o) const {
    VecN r = *this;
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
    return r;
  }
  VecN operator*(double s) const {
    VecN r = *this;
    for (double& v : r.c_) v *= s;
    return r;
  }
  VecN& operator+=(const VecN& o) {
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }

  double dot(const VecN& o) const {
    double s = 0.0;
    for (std::size_t i = 0; i < c_.size(); ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  bool all_finite() const {
    for (double v : c_)
      if (!std::isfinite(v)) return false;
    return true;
  }

  Vec2 to2() const {
    if (c_.size() != 2) throw DimensionMismatch("VecN::to2: dimension is not 2");
    return {c_[0], c_[1]};
  }

 private:
  std::vector<double> c_;
};

inline VecN operator*(double s, const VecN& v) { return v * s; }

inline double distance(const VecN& a, const VecN& b) { return (a - b).norm(); }

}  // namespace escapelab
