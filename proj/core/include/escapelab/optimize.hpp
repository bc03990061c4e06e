#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "escapelab/escape.hpp"
#include "escapelab/paths.hpp"
#include "escapelab/rng.hpp"

namespace escapelab::optimize {

// Planar chain with k equal-length segments parametrised by signed turn
// angles; all-zero angles give the straight line. Angles keep the induced
// chain unit-speed by construction.
struct ChainParams {
  std::vector<double> angles;
  double segment_length = 0.5;

  std::size_t joints() const { return angles.size(); }
};

// The induced path: starts along the first axis, turns by angles[j] after
// each segment, continues straight after the last turn.
paths::UnitSpeedPath induced_chain(const ChainParams& params);

// Penalty per unit of residual area when an evaluation hits the time cap;
// makes trapped candidates strictly worse than any escaping one.
inline constexpr double kTruncationPenalty = 8.0;

// Mean escape time of the induced chain under fixed quadrature settings.
double objective(const ChainParams& params, const escape::QuadratureSettings& settings);

struct TraceEntry {
  ChainParams params;
  double value = 0.0;
};

struct OptimizationTrace {
  std::vector<TraceEntry> iterations;  // every objective evaluation, in order
  ChainParams best;
  double best_value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Nelder-Mead simplex over the k turn angles (reflection 1, expansion 2,
// contraction 0.5, shrink 0.5), until the simplex diameter drops below 1e-4
// or the evaluation budget runs out. A missing init draws each angle
// uniformly from [-0.5, 0.5] using rng.
OptimizationTrace minimize(std::size_t k, double segment_length,
                           const std::optional<ChainParams>& init,
                           std::size_t budget,
                           const escape::QuadratureSettings& settings,
                           Rng* rng = nullptr);

}  // namespace escapelab::optimize
