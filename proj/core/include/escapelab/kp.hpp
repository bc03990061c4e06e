#pragma once

#include <cstddef>
#include <vector>

#include "escapelab/disk_area.hpp"
#include "escapelab/paths.hpp"
#include "escapelab/rng.hpp"
#include "escapelab/vec.hpp"

namespace escapelab::kp {

// Two configurations of the same balls; q is the candidate expansion of p.
struct ConfigPair {
  geom::DiskConfig p;
  geom::DiskConfig q;

  ConfigPair(geom::DiskConfig p_, geom::DiskConfig q_);
};

struct ExpansionCheck {
  bool ok = true;
  // violating index pair and the offending distances, when !ok
  std::size_t i = 0;
  std::size_t j = 0;
  double dist_p = 0.0;
  double dist_q = 0.0;
};

// True iff every pairwise distance in q is at least the matching distance in
// p minus slack.
ExpansionCheck is_expansion(const ConfigPair& pair, double slack);

// p = q scaled by lambda about the centroid; an exact contraction.
ConfigPair contract_by_scaling(const geom::DiskConfig& q, double lambda);

// p = orthogonal projection of q onto the line through the centroid along
// axis; projections are 1-Lipschitz so the pair is a contraction.
ConfigPair contract_by_projection(const geom::DiskConfig& q, const VecN& axis);

struct Kp2dReport {
  bool intersection_ok = false;
  bool union_ok = false;
  double intersection_p = 0.0;
  double intersection_q = 0.0;
  double union_p = 0.0;
  double union_q = 0.0;
};

// Checks both planar Kneser-Poulsen inequalities with exact areas:
// area(inter p) >= area(inter q) - slack and area(union p) <= area(union q)
// + slack, slack 1e-9. Throws NotAnExpansion unless the pair passes
// is_expansion.
Kp2dReport verify_kp_2d(const ConfigPair& pair);

struct KpMcReport {
  bool intersection_ok = false;
  bool union_ok = false;
  double intersection_p = 0.0;
  double intersection_q = 0.0;
  double union_p = 0.0;
  double union_q = 0.0;
  double se_intersection = 0.0;  // combined standard error of the difference
  double se_union = 0.0;
};

// Monte Carlo volume version for any dimension; inequality flags allow a
// 4-sigma statistical band.
KpMcReport verify_kp_mc(const ConfigPair& pair, std::size_t samples, Rng& rng);

// Collinear motion that interpolates consecutive gaps from the straightened
// chain lengths l_j at tau=0 to the target lengths L_j at tau=1. Expansive
// because every gap is affine nondecreasing in tau.
class StretchMotion {
 public:
  // requires 0 <= l_j <= L_j for all j
  StretchMotion(std::vector<double> chain_lengths, std::vector<double> target_lengths);

  // Chord lengths of the path over the partition as l_j, time gaps as L_j.
  static StretchMotion from_chain(const paths::UnitSpeedPath& path,
                                  const paths::Partition& partition);

  // Points on the first axis with gaps tau*L_j + (1-tau)*l_j; tau in [0, 1].
  std::vector<VecN> eval(double tau) const;

  std::size_t point_count() const { return chain_lengths_.size() + 1; }
  const std::vector<double>& chain_lengths() const { return chain_lengths_; }
  const std::vector<double>& target_lengths() const { return target_lengths_; }

 private:
  std::vector<double> chain_lengths_;
  std::vector<double> target_lengths_;
};

struct MotionCheck {
  bool ok = true;
  // witness of the worst decrease, when !ok
  std::size_t i = 0;
  std::size_t j = 0;
  double tau_before = 0.0;
  double tau_after = 0.0;
  double decrease = 0.0;
};

// True iff every pairwise distance is nondecreasing (within 1e-12) across a
// uniform tau grid of the given size.
MotionCheck verify_motion_expansive(const StretchMotion& motion, std::size_t grid);

}  // namespace escapelab::kp
