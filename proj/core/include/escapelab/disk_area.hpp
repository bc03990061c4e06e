#pragma once

#include <cstddef>
#include <vector>

#include "escapelab/rng.hpp"
#include "escapelab/vec.hpp"

namespace escapelab::geom {

// Tolerance for point-in-disk tests, vertex dedup and tangency resolution.
inline constexpr double kEpsGeom = 1e-9;

// Finite list of closed disks/balls: centers with per-disk radii.
struct DiskConfig {
  std::vector<VecN> centers;
  std::vector<double> radii;

  DiskConfig() = default;
  DiskConfig(std::vector<VecN> centers_, std::vector<double> radii_);

  // all radii 1
  static DiskConfig unit(std::vector<VecN> centers_);

  std::size_t size() const { return centers.size(); }
  std::size_t dim() const { return centers.empty() ? 0 : centers[0].dim(); }
};

// Convex region bounded by circular arcs: the shape of any intersection of
// disks. Boundary edge k runs counterclockwise from vertices[k] to
// vertices[(k+1) % size] along the circle of disk arcs[k] (indices refer to
// the generating DiskConfig). Special forms:
//   - empty_region:  the intersection is empty (area 0)
//   - degenerate:    a single point or segment (area 0); vertices kept
//   - no vertices, one arc entry: the full disk arcs[0]
struct ArcRegion {
  std::vector<Vec2> vertices;
  std::vector<std::size_t> arcs;
  bool empty_region = false;
  bool degenerate = false;

  bool is_full_disk() const {
    return !empty_region && !degenerate && vertices.empty() && arcs.size() == 1;
  }
};

struct IntersectionResult {
  double area = 0.0;
  ArcRegion region;
};

// Area of intersection of two disks with radii r1, r2 and center distance d.
// Closed form; total in d (0 once the disks separate).
double lens_area(double d, double r1, double r2);

// Exact area of the intersection of all disks in a 2D configuration, plus
// the bounding arc region. Throws DimensionMismatch unless dim == 2.
IntersectionResult intersection_area_2d(const DiskConfig& config);

struct AreaEstimate {
  double value = 0.0;
  double stderr_value = 0.0;  // 0 when exact
  bool exact = true;
};

// Subset cap for the inclusion-exclusion union path.
inline constexpr std::size_t kUnionInclusionCap = 12;

// Exact union area by inclusion-exclusion over non-empty subsets.
// Requires size <= kUnionInclusionCap.
AreaEstimate union_area_2d(const DiskConfig& config);

// Union area with a Monte Carlo fallback over the bounding box when the
// configuration exceeds the inclusion-exclusion cap.
AreaEstimate union_area_2d(const DiskConfig& config, std::size_t samples, Rng& rng);

// Monte Carlo union estimate regardless of size (crosscheck for the exact path).
AreaEstimate union_area_mc_2d(const DiskConfig& config, std::size_t samples, Rng& rng);

// Incremental intersection: feeds disks one at a time while maintaining the
// running region, its exact area, and the set of disks that carry boundary
// arcs. Adding a disk that already contains the region is O(boundary);
// otherwise the region is rebuilt from the active disks plus the new one,
// with a full rebuild from every disk seen so far if the clipped region
// fails its monotonicity invariant.
class DiskIntersectionAccumulator {
 public:
  // unit radii by default; radius applies to every disk added
  explicit DiskIntersectionAccumulator(double radius = 1.0);

  void add_disk(Vec2 center);

  double area() const { return area_; }
  const ArcRegion& region() const { return region_; }
  std::size_t disks_added() const { return all_.size(); }
  std::size_t active_count() const { return active_.size(); }
  std::size_t full_rebuilds() const { return full_rebuilds_; }

 private:
  void rebuild(const std::vector<std::size_t>& indices);

  double radius_;
  std::vector<Vec2> all_;
  std::vector<std::size_t> active_;  // indices into all_
  ArcRegion region_;                 // arc indices refer to all_
  double area_ = 0.0;
  bool started_ = false;
  std::size_t full_rebuilds_ = 0;
};

}  // namespace escapelab::geom
