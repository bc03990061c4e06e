#include "escapelab/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "escapelab/errors.hpp"

namespace escapelab::optimize {

namespace {
constexpr double kDiameterTol = 1e-4;
constexpr double kInitStep = 0.25;  // initial simplex spread per angle
}  // namespace

paths::UnitSpeedPath induced_chain(const ChainParams& params) {
  if (!(params.segment_length > 0.0))
    throw Error("induced_chain: segment length must be positive");
  const std::size_t k = params.joints();
  std::vector<double> lengths(k + 1, params.segment_length);
  std::vector<VecN> directions;
  directions.reserve(k + 1);
  double heading = 0.0;
  directions.push_back(VecN{1.0, 0.0});
  for (const double angle : params.angles) {
    heading += angle;
    directions.push_back(VecN{std::cos(heading), std::sin(heading)});
  }
  return paths::PolyChain(std::move(lengths), std::move(directions));
}

double objective(const ChainParams& params, const escape::QuadratureSettings& settings) {
  const escape::MeanEscapeEstimate est =
      escape::mean_escape_quadrature(induced_chain(params), settings);
  if (!est.truncated) return est.value;
  const double residual_area = est.diagnostics.empty() ? 0.0 : est.diagnostics.back().area;
  return est.value + kTruncationPenalty * residual_area;
}

namespace {

double simplex_diameter(const std::vector<std::vector<double>>& pts) {
  double diam = 0.0;
  for (std::size_t a = 0; a < pts.size(); ++a) {
    for (std::size_t b = a + 1; b < pts.size(); ++b) {
      double d2 = 0.0;
      for (std::size_t i = 0; i < pts[a].size(); ++i) {
        const double diff = pts[a][i] - pts[b][i];
        d2 += diff * diff;
      }
      diam = std::max(diam, std::sqrt(d2));
    }
  }
  return diam;
}

}  // namespace

OptimizationTrace minimize(std::size_t k, double segment_length,
                           const std::optional<ChainParams>& init,
                           std::size_t budget,
                           const escape::QuadratureSettings& settings,
                           Rng* rng) {
  if (k < 1) throw Error("minimize: need at least one joint");

  ChainParams start;
  start.segment_length = segment_length;
  if (init.has_value()) {
    start = *init;
    if (start.joints() != k) throw LengthMismatch("minimize: init has wrong joint count");
    start.segment_length = segment_length;
  } else {
    if (rng == nullptr) throw Error("minimize: random init requires an rng");
    start.angles.resize(k);
    for (double& a : start.angles) a = rng->next_uniform(-0.5, 0.5);
  }

  OptimizationTrace trace;
  trace.best = start;
  trace.best_value = std::numeric_limits<double>::infinity();

  const auto eval = [&](const std::vector<double>& angles) {
    ChainParams p;
    p.angles = angles;
    p.segment_length = segment_length;
    const double value = objective(p, settings);
    trace.iterations.push_back({p, value});
    if (value < trace.best_value) {
      trace.best_value = value;
      trace.best = p;
    }
    return value;
  };
  const auto budget_left = [&] { return trace.iterations.size() < budget; };

  // Always record the starting point, even on a zero budget.
  eval(start.angles);
  if (!budget_left()) {
    trace.evaluations = trace.iterations.size();
    return trace;
  }

  // initial simplex: start plus one step along each coordinate
  std::vector<std::vector<double>> pts(k + 1, start.angles);
  std::vector<double> vals(k + 1);
  vals[0] = trace.iterations.back().value;
  for (std::size_t i = 1; i <= k; ++i) {
    pts[i][i - 1] += kInitStep;
    if (!budget_left()) break;
    vals[i] = eval(pts[i]);
  }

  while (budget_left() && simplex_diameter(pts) >= kDiameterTol) {
    // order: best first, worst last
    std::vector<std::size_t> order(k + 1);
    for (std::size_t i = 0; i <= k; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t worst = order[k];
    const std::size_t second_worst = order[k - 1];
    const std::size_t best = order[0];

    std::vector<double> centroid(k, 0.0);
    for (std::size_t i = 0; i <= k; ++i) {
      if (i == worst) continue;
      for (std::size_t d = 0; d < k; ++d) centroid[d] += pts[i][d];
    }
    for (double& c : centroid) c /= static_cast<double>(k);

    const auto blend = [&](double coeff) {
      std::vector<double> x(k);
      for (std::size_t d = 0; d < k; ++d)
        x[d] = centroid[d] + coeff * (pts[worst][d] - centroid[d]);
      return x;
    };

    const std::vector<double> reflected = blend(-1.0);
    const double fr = eval(reflected);
    if (fr < vals[best] && budget_left()) {
      const std::vector<double> expanded = blend(-2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[second_worst]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    if (!budget_left()) break;
    const std::vector<double> contracted = blend(fr < vals[worst] ? -0.5 : 0.5);
    const double fc = eval(contracted);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    // shrink toward the best vertex
    for (std::size_t i = 0; i <= k && budget_left(); ++i) {
      if (i == best) continue;
      for (std::size_t d = 0; d < k; ++d)
        pts[i][d] = pts[best][d] + 0.5 * (pts[i][d] - pts[best][d]);
      vals[i] = eval(pts[i]);
    }
  }

  trace.converged = simplex_diameter(pts) < kDiameterTol;
  trace.evaluations = trace.iterations.size();
  return trace;
}

}  // namespace escapelab::optimize
