#include "escapelab/disk_area.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "escapelab/errors.hpp"

namespace escapelab::geom {

namespace {

constexpr double kPi = 3.14159265358979323846;
// Vertices move by up to kEpsGeom during dedup, so membership of a vertex on
// its defining circles is tested with a looser band than point-in-disk.
constexpr double kOnCircleTol = 1e-7;

double clamp_unit(double x) { return std::clamp(x, -1.0, 1.0); }

struct WDisk {
  Vec2 c;
  double r;
  std::size_t idx;  // index into the original configuration
};

// B_inner inside B_outer, up to tolerance (internal tangency counts).
bool disk_contains_disk(const WDisk& outer, const WDisk& inner) {
  return distance(outer.c, inner.c) + inner.r <= outer.r + kEpsGeom;
}

bool point_in_disk(Vec2 p, const WDisk& d, double tol = kEpsGeom) {
  return distance(p, d.c) <= d.r + tol;
}

std::vector<WDisk> dedup_and_eliminate(const std::vector<WDisk>& in) {
  std::vector<WDisk> kept;
  kept.reserve(in.size());
  for (const WDisk& d : in) {
    bool dup = false;
    for (const WDisk& k : kept) {
      if (distance(d.c, k.c) <= kEpsGeom && std::abs(d.r - k.r) <= kEpsGeom) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(d);
  }
  // A disk containing another is redundant for the intersection; on mutual
  // (near-identical) containment the later one goes.
  std::vector<bool> drop(kept.size(), false);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      if (i == j || drop[j]) continue;
      if (disk_contains_disk(kept[i], kept[j]) &&
          !(disk_contains_disk(kept[j], kept[i]) && j > i)) {
        drop[i] = true;
        break;
      }
    }
  }
  std::vector<WDisk> out;
  for (std::size_t i = 0; i < kept.size(); ++i)
    if (!drop[i]) out.push_back(kept[i]);
  return out;
}

// Intersection points of two circles, assuming a proper crossing (callers
// branch away separated and nested pairs first).
std::pair<Vec2, Vec2> circle_circle_points(const WDisk& a, const WDisk& b) {
  const Vec2 delta = b.c - a.c;
  const double d = delta.norm();
  const double along = (d * d + a.r * a.r - b.r * b.r) / (2.0 * d);
  const double h2 = a.r * a.r - along * along;
  const double h = std::sqrt(std::max(h2, 0.0));
  const Vec2 unit = delta / d;
  const Vec2 base = a.c + along * unit;
  const Vec2 off = h * unit.perp();
  return {base + off, base - off};
}

double wrap_ccw(double angle) {
  while (angle <= 0.0) angle += 2.0 * kPi;
  while (angle > 2.0 * kPi) angle -= 2.0 * kPi;
  return angle;
}

struct EngineResult {
  double area = 0.0;
  ArcRegion region;
};

EngineResult full_disk_result(const WDisk& d) {
  EngineResult res;
  res.area = kPi * d.r * d.r;
  res.region.arcs = {d.idx};
  return res;
}

EngineResult empty_result() {
  EngineResult res;
  res.region.empty_region = true;
  return res;
}

// Core arc-polygon intersection over working disks. Arc/vertex indices in
// the result refer to the original configuration via WDisk::idx.
EngineResult intersect_engine(const std::vector<WDisk>& input) {
  const std::vector<WDisk> ds = dedup_and_eliminate(input);
  if (ds.size() == 1) return full_disk_result(ds[0]);

  // Candidate vertices: pairwise circle crossings inside every other disk.
  std::vector<Vec2> verts;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = i + 1; j < ds.size(); ++j) {
      const double d = distance(ds[i].c, ds[j].c);
      if (d >= ds[i].r + ds[j].r - kEpsGeom) continue;  // separated or tangent
      if (d <= std::abs(ds[i].r - ds[j].r) + kEpsGeom) continue;  // nested
      const auto [p1, p2] = circle_circle_points(ds[i], ds[j]);
      for (const Vec2 p : {p1, p2}) {
        bool inside_all = true;
        for (std::size_t k = 0; k < ds.size() && inside_all; ++k) {
          if (k == i || k == j) continue;
          inside_all = point_in_disk(p, ds[k]);
        }
        if (inside_all) verts.push_back(p);
      }
    }
  }

  // Merge vertices closer than the geometric tolerance (triple points).
  std::vector<Vec2> unique_verts;
  for (const Vec2 v : verts) {
    bool seen = false;
    for (const Vec2 u : unique_verts) {
      if (distance(u, v) <= kEpsGeom) {
        seen = true;
        break;
      }
    }
    if (!seen) unique_verts.push_back(v);
  }

  if (unique_verts.empty()) {
    // Either the intersection is empty or one disk lies inside all others
    // (tangencies resolve to the measure-zero outcome).
    const WDisk* smallest = nullptr;
    for (const WDisk& d : ds) {
      bool inside_all = true;
      for (const WDisk& other : ds) {
        if (&other == &d) continue;
        if (!disk_contains_disk(other, d)) {
          inside_all = false;
          break;
        }
      }
      if (inside_all && (smallest == nullptr || d.r < smallest->r)) smallest = &d;
    }
    if (smallest != nullptr) return full_disk_result(*smallest);
    return empty_result();
  }

  if (unique_verts.size() == 1) {
    EngineResult res;
    res.region.degenerate = true;
    res.region.vertices = unique_verts;
    return res;
  }

  Vec2 interior{0.0, 0.0};
  for (const Vec2 v : unique_verts) interior += v;
  interior = interior / static_cast<double>(unique_verts.size());
  std::sort(unique_verts.begin(), unique_verts.end(), [&](Vec2 a, Vec2 b) {
    return std::atan2(a.y - interior.y, a.x - interior.x) <
           std::atan2(b.y - interior.y, b.x - interior.x);
  });

  // Polygon part.
  double area = 0.0;
  const std::size_t m = unique_verts.size();
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2 a = unique_verts[k];
    const Vec2 b = unique_verts[(k + 1) % m];
    area += 0.5 * (a.x * b.y - b.x * a.y);
  }

  // One circular segment per boundary edge. The carrying circle passes
  // through both endpoints and its counterclockwise arc stays inside every
  // disk; pick the candidate whose arc midpoint is deepest inside.
  EngineResult res;
  res.region.vertices = unique_verts;
  for (std::size_t k = 0; k < m; ++k) {
    const Vec2 a = unique_verts[k];
    const Vec2 b = unique_verts[(k + 1) % m];
    double best_score = std::numeric_limits<double>::infinity();
    double best_phi = 0.0;
    const WDisk* best = nullptr;
    for (const WDisk& d : ds) {
      if (std::abs(distance(a, d.c) - d.r) > kOnCircleTol) continue;
      if (std::abs(distance(b, d.c) - d.r) > kOnCircleTol) continue;
      const double theta_a = std::atan2(a.y - d.c.y, a.x - d.c.x);
      const double theta_b = std::atan2(b.y - d.c.y, b.x - d.c.x);
      const double phi = wrap_ccw(theta_b - theta_a);
      const double mid_angle = theta_a + 0.5 * phi;
      const Vec2 mid = d.c + Vec2{d.r * std::cos(mid_angle), d.r * std::sin(mid_angle)};
      double score = -std::numeric_limits<double>::infinity();
      for (const WDisk& other : ds) {
        if (&other == &d) continue;
        score = std::max(score, distance(mid, other.c) - other.r);
      }
      if (score < best_score) {
        best_score = score;
        best_phi = phi;
        best = &d;
      }
    }
    if (best == nullptr || best_score > kOnCircleTol) {
      throw std::logic_error("disk intersection: no carrying arc for edge");
    }
    area += 0.5 * best->r * best->r * (best_phi - std::sin(best_phi));
    res.region.arcs.push_back(best->idx);
  }

  if (area <= 0.0) {
    res.region.degenerate = true;
    res.area = 0.0;
    return res;
  }
  res.area = area;
  return res;
}

std::vector<WDisk> to_working(const DiskConfig& config) {
  if (config.dim() != 2)
    throw DimensionMismatch("intersection_area_2d: configuration is not 2D");
  std::vector<WDisk> ds(config.size());
  for (std::size_t i = 0; i < config.size(); ++i) {
    ds[i] = {config.centers[i].to2(), config.radii[i], i};
  }
  return ds;
}

}  // namespace

DiskConfig::DiskConfig(std::vector<VecN> centers_, std::vector<double> radii_)
    : centers(std::move(centers_)), radii(std::move(radii_)) {
  if (centers.empty()) throw Error("DiskConfig: empty configuration");
  if (centers.size() != radii.size())
    throw LengthMismatch("DiskConfig: centers/radii length mismatch");
  const std::size_t d = centers[0].dim();
  for (const VecN& c : centers) {
    if (c.dim() != d) throw DimensionMismatch("DiskConfig: mixed dimensions");
    if (!c.all_finite()) throw Error("DiskConfig: non-finite center");
  }
  for (double r : radii) {
    if (!(r > 0.0) || !std::isfinite(r)) throw Error("DiskConfig: radius must be positive");
  }
}

DiskConfig DiskConfig::unit(std::vector<VecN> centers_) {
  std::vector<double> radii_(centers_.size(), 1.0);
  return DiskConfig(std::move(centers_), std::move(radii_));
}

double lens_area(double d, double r1, double r2) {
  if (!(std::isfinite(d) && std::isfinite(r1) && std::isfinite(r2)))
    throw Error("lens_area: non-finite input");
  if (d < 0.0) throw Error("lens_area: negative distance");
  if (d >= r1 + r2) return 0.0;
  if (d <= std::abs(r1 - r2)) {
    const double r = std::min(r1, r2);
    return kPi * r * r;
  }
  const double alpha = clamp_unit((d * d + r1 * r1 - r2 * r2) / (2.0 * d * r1));
  const double beta = clamp_unit((d * d + r2 * r2 - r1 * r1) / (2.0 * d * r2));
  const double tri = std::max((-d + r1 + r2) * (d + r1 - r2) * (d - r1 + r2) * (d + r1 + r2), 0.0);
  return r1 * r1 * std::acos(alpha) + r2 * r2 * std::acos(beta) - 0.5 * std::sqrt(tri);
}

IntersectionResult intersection_area_2d(const DiskConfig& config) {
  const EngineResult res = intersect_engine(to_working(config));
  return {res.area, res.region};
}

namespace {

double exact_union(const std::vector<WDisk>& ds) {
  const std::size_t n = ds.size();
  const std::size_t total = std::size_t{1} << n;
  // Emptiness is monotone over subsets, so a mask with an empty parent is
  // empty without computing.
  std::vector<char> known_empty(total, 0);
  double area = 0.0;
  for (std::size_t mask = 1; mask < total; ++mask) {
    bool empty = false;
    for (std::size_t b = 0; b < n && !empty; ++b) {
      const std::size_t parent = mask & ~(std::size_t{1} << b);
      if (parent != mask && parent != 0 && known_empty[parent]) empty = true;
    }
    double term = 0.0;
    if (!empty) {
      std::vector<WDisk> subset;
      for (std::size_t b = 0; b < n; ++b) {
        if (mask & (std::size_t{1} << b)) subset.push_back(ds[b]);
      }
      const EngineResult r = intersect_engine(subset);
      term = r.area;
      empty = (term <= 0.0);
    }
    known_empty[mask] = empty ? 1 : 0;
    if (std::popcount(mask) % 2 == 1)
      area += term;
    else
      area -= term;
  }
  return std::max(area, 0.0);
}

AreaEstimate mc_union(const std::vector<WDisk>& ds, std::size_t samples, Rng& rng) {
  double lo_x = std::numeric_limits<double>::infinity(), hi_x = -lo_x;
  double lo_y = std::numeric_limits<double>::infinity(), hi_y = -lo_y;
  for (const WDisk& d : ds) {
    lo_x = std::min(lo_x, d.c.x - d.r);
    hi_x = std::max(hi_x, d.c.x + d.r);
    lo_y = std::min(lo_y, d.c.y - d.r);
    hi_y = std::max(hi_y, d.c.y + d.r);
  }
  const double box = (hi_x - lo_x) * (hi_y - lo_y);
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const Vec2 p{rng.next_uniform(lo_x, hi_x), rng.next_uniform(lo_y, hi_y)};
    for (const WDisk& d : ds) {
      if (distance(p, d.c) <= d.r) {
        ++hits;
        break;
      }
    }
  }
  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  AreaEstimate est;
  est.value = box * p_hat;
  est.stderr_value = box * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples));
  est.exact = false;
  return est;
}

}  // namespace

AreaEstimate union_area_2d(const DiskConfig& config) {
  const auto ds = to_working(config);
  if (ds.size() > kUnionInclusionCap)
    throw Error("union_area_2d: too many disks for inclusion-exclusion; "
                "use the Monte Carlo overload");
  return {exact_union(ds), 0.0, true};
}

AreaEstimate union_area_2d(const DiskConfig& config, std::size_t samples, Rng& rng) {
  const auto ds = to_working(config);
  if (ds.size() <= kUnionInclusionCap) return {exact_union(ds), 0.0, true};
  return mc_union(ds, samples, rng);
}

AreaEstimate union_area_mc_2d(const DiskConfig& config, std::size_t samples, Rng& rng) {
  return mc_union(to_working(config), samples, rng);
}

DiskIntersectionAccumulator::DiskIntersectionAccumulator(double radius)
    : radius_(radius) {
  if (!(radius > 0.0)) throw Error("DiskIntersectionAccumulator: radius must be positive");
}

namespace {

// Largest distance from p to the region boundary; used to decide whether a
// new disk already contains the running region.
bool disk_contains_region(Vec2 p, double r, const ArcRegion& region,
                          const std::vector<Vec2>& all, double disk_radius) {
  const double limit = r + kEpsGeom;
  for (const Vec2 v : region.vertices) {
    if (distance(p, v) > limit) return false;
  }
  for (std::size_t k = 0; k < region.arcs.size(); ++k) {
    const Vec2 c = all[region.arcs[k]];
    const double d = distance(p, c);
    if (region.vertices.empty()) {
      // full disk
      if (d + disk_radius > limit) return false;
      continue;
    }
    // Farthest point of the circle from p; only binding if it lies on the arc.
    if (d <= kEpsGeom) {
      if (disk_radius > limit) return false;
      continue;
    }
    const Vec2 a = region.vertices[k];
    const Vec2 b = region.vertices[(k + 1) % region.vertices.size()];
    const double theta_a = std::atan2(a.y - c.y, a.x - c.x);
    const double theta_b = std::atan2(b.y - c.y, b.x - c.x);
    const double span = wrap_ccw(theta_b - theta_a);
    const Vec2 dir = (c - p) / d;
    const double theta_far = std::atan2(dir.y, dir.x);
    if (wrap_ccw(theta_far - theta_a) <= span) {
      if (d + disk_radius > limit) return false;
    }
  }
  return true;
}

}  // namespace

void DiskIntersectionAccumulator::rebuild(const std::vector<std::size_t>& indices) {
  std::vector<WDisk> ds;
  ds.reserve(indices.size());
  for (const std::size_t i : indices) ds.push_back({all_[i], radius_, i});
  EngineResult res = intersect_engine(ds);
  region_ = std::move(res.region);
  area_ = res.area;
  active_.clear();
  if (region_.empty_region || region_.degenerate) return;
  active_ = region_.arcs;
  std::sort(active_.begin(), active_.end());
  active_.erase(std::unique(active_.begin(), active_.end()), active_.end());
}

void DiskIntersectionAccumulator::add_disk(Vec2 center) {
  all_.push_back(center);
  const std::size_t idx = all_.size() - 1;
  if (!started_) {
    started_ = true;
    region_ = ArcRegion{};
    region_.arcs = {idx};
    area_ = kPi * radius_ * radius_;
    active_ = {idx};
    return;
  }
  if (region_.empty_region || area_ <= 0.0) return;
  if (disk_contains_region(center, radius_, region_, all_, radius_)) return;

  const double prev_area = area_;
  std::vector<std::size_t> subset = active_;
  subset.push_back(idx);
  rebuild(subset);
  if (area_ > prev_area + kEpsGeom) {
    // Clipped region grew: active-set bookkeeping went stale, rebuild fully.
    ++full_rebuilds_;
    std::vector<std::size_t> everything(all_.size());
    for (std::size_t i = 0; i < everything.size(); ++i) everything[i] = i;
    rebuild(everything);
  }
}

}  // namespace escapelab::geom
