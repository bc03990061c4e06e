#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <vector>

#include "escapelab/closedform.hpp"
#include "escapelab/errors.hpp"
#include "escapelab/escape.hpp"
#include "escapelab/quadrature.hpp"
#include "escapelab/rng.hpp"
#include "escapelab/sampling.hpp"

using namespace escapelab;
using paths::ConstantCurvature2D;
using paths::Line;
using paths::Partition;
using paths::PolyChain;
using paths::UnitSpeedPath;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLineMean2D = 8.0 / (3.0 * kPi);

UnitSpeedPath random_chain(Rng& rng, std::size_t max_joints, double segment = 0.5) {
  const std::size_t joints = 1 + rng.next_below(max_joints);
  std::vector<double> lengths(joints + 1, segment);
  std::vector<VecN> dirs;
  double heading = 0.0;
  dirs.push_back(VecN{1.0, 0.0});
  for (std::size_t j = 0; j < joints; ++j) {
    heading += rng.next_uniform(-kPi, kPi);
    dirs.push_back(VecN{std::cos(heading), std::sin(heading)});
  }
  return PolyChain(std::move(lengths), std::move(dirs));
}

}  // namespace

TEST_CASE("line_nonescape_area") {
  CHECK(escape::line_nonescape_area(0.0) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(escape::line_nonescape_area(2.0) == 0.0);
  CHECK(escape::line_nonescape_area(5.0) == 0.0);
  CHECK(escape::line_nonescape_area(1.0) ==
        doctest::Approx(2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0).epsilon(1e-12));
  CHECK_THROWS_AS(escape::line_nonescape_area(-1.0), NegativeTime);
}

TEST_CASE("non_escape_area on discrete partitions") {
  const UnitSpeedPath line = Line::axis(2);
  SUBCASE("tangent endpoint disks vanish") {
    const auto approx = escape::non_escape_area(line, 2.0, Partition({0.0, 2.0}));
    CHECK(approx.area_or_volume == 0.0);
    CHECK(approx.exact);
  }
  SUBCASE("two-disk partition equals the lens") {
    const auto approx = escape::non_escape_area(line, 1.0, Partition({0.0, 1.0}));
    CHECK(approx.area_or_volume ==
          doctest::Approx(geom::lens_area(1, 1, 1)).epsilon(1e-12));
  }
  SUBCASE("trivial partition gives the whole disk") {
    const UnitSpeedPath bendy = ConstantCurvature2D(2.0, 4.0);
    const auto approx = escape::non_escape_area(bendy, 0.0, Partition({0.0}));
    CHECK(approx.area_or_volume == doctest::Approx(kPi).epsilon(1e-12));
  }
  SUBCASE("partition must end at t") {
    CHECK_THROWS_AS(escape::non_escape_area(line, 1.5, Partition({0.0, 1.0})),
                    InvalidPartition);
  }
}

TEST_CASE("non_escape_volume_mc agrees with the exact 2D area") {
  const UnitSpeedPath line = Line::axis(2);
  const Partition p = paths::uniform_partition(1.0, 0.25);
  const auto exact = escape::non_escape_area(line, 1.0, p);
  Rng rng(41205);
  const auto mc = escape::non_escape_volume_mc(line, 1.0, p, 400000, rng);
  CHECK_FALSE(mc.exact);
  CHECK(std::abs(mc.area_or_volume - exact.area_or_volume) <=
        4.0 * mc.stderr_value + 1e-6);
}

TEST_CASE("mean_escape_line_quadrature hits the closed form") {
  const auto est = escape::mean_escape_line_quadrature(1e-8);
  CHECK(std::abs(est.value - kLineMean2D) <= 1e-8);
  CHECK_FALSE(est.truncated);

  // The two pieces of the lens integrand, against their antiderivatives:
  // (1/pi) * int 2 acos(t/2) dt = 4/pi and (1/pi) * int (t/2) sqrt(4-t^2) dt
  // = 4/(3 pi).
  const double acos_part =
      adaptive_simpson([](double t) { return 2.0 * std::acos(0.5 * t); }, 0.0, 2.0,
                       1e-10) /
      kPi;
  const double sqrt_part =
      adaptive_simpson([](double t) { return 0.5 * t * std::sqrt(4.0 - t * t); }, 0.0,
                       2.0, 1e-10) /
      kPi;
  CHECK(acos_part == doctest::Approx(4.0 / kPi).epsilon(1e-9));
  CHECK(sqrt_part == doctest::Approx(4.0 / (3.0 * kPi)).epsilon(1e-9));
  CHECK(acos_part - sqrt_part == doctest::Approx(kLineMean2D).epsilon(1e-9));
}

TEST_CASE("mean_escape_quadrature for the line") {
  escape::QuadratureSettings settings;
  settings.h = 0.001;
  settings.t_cap = 3.0;
  const auto est = escape::mean_escape_quadrature(Line::axis(2), settings);
  CHECK_FALSE(est.truncated);
  CHECK(std::abs(est.value - kLineMean2D) <= 5e-3);
  // left-Riemann over-estimates a decreasing integrand
  CHECK(est.value >= kLineMean2D - 1e-9);
  CHECK(est.error_bound <= settings.h + 1e-12);

  // the per-step area table never increases
  for (std::size_t i = 1; i < est.diagnostics.size(); ++i) {
    CHECK(est.diagnostics[i].area <= est.diagnostics[i - 1].area + 1e-9);
  }
}

TEST_CASE("zero-curvature arc reproduces the line estimate") {
  escape::QuadratureSettings settings;
  settings.h = 0.01;
  settings.t_cap = 3.0;
  const auto line = escape::mean_escape_quadrature(Line::axis(2), settings);
  const auto arc = escape::mean_escape_quadrature(ConstantCurvature2D(0.0, 5.0), settings);
  CHECK(std::abs(line.value - arc.value) <= 1e-9);
}

TEST_CASE("trapped loop truncates at the cap") {
  // Radius-0.25 circle traversed forever: points near the loop center stay in.
  const UnitSpeedPath loop =
      ConstantCurvature2D(4.0, std::numeric_limits<double>::infinity());
  escape::QuadratureSettings settings;
  settings.h = 0.01;
  settings.t_cap = 4.0;
  const auto est = escape::mean_escape_quadrature(loop, settings);
  CHECK(est.truncated);
  // the residual region holds the disk of radius 0.5 around the loop center
  CHECK(est.diagnostics.back().area >= kPi * 0.5 * 0.5 - 1e-9);
}

TEST_CASE("line_escape_time closed form") {
  CHECK(escape::line_escape_time(VecN{0.0, 0.0}, VecN{1.0, 0.0}) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(escape::line_escape_time(VecN{-0.6, 0.0}, VecN{1.0, 0.0}) ==
        doctest::Approx(1.6).epsilon(1e-14));
  CHECK(escape::line_escape_time(VecN{0.0, 0.6}, VecN{1.0, 0.0}) ==
        doctest::Approx(0.8).epsilon(1e-14));
  CHECK_THROWS_AS(escape::line_escape_time(VecN{1.5, 0.0}, VecN{1.0, 0.0}),
                  OutsideBall);
}

TEST_CASE("path_escape_time") {
  SUBCASE("line from the origin") {
    const auto et = escape::path_escape_time(Line::axis(2), VecN{0.0, 0.0});
    CHECK(et.escaped);
    CHECK(et.t == doctest::Approx(1.0).epsilon(1e-14));
  }
  SUBCASE("line mid-ball") {
    const auto et = escape::path_escape_time(Line::axis(2), VecN{0.3, 0.0});
    CHECK(et.t == doctest::Approx(0.7).epsilon(1e-14));
  }
  SUBCASE("right-angle chain, exit on the first segment") {
    const PolyChain chain({1.0, 1.0}, {VecN{1.0, 0.0}, VecN{0.0, 1.0}});
    const auto et = escape::path_escape_time(chain, VecN{0.0, -0.9});
    CHECK(et.escaped);
    CHECK(et.t == doctest::Approx(std::sqrt(0.19)).epsilon(1e-12));
  }
  SUBCASE("right-angle chain, exit on the second segment") {
    const PolyChain chain({1.0, 1.0}, {VecN{1.0, 0.0}, VecN{0.0, 1.0}});
    // start far left so the first segment stays inside
    const auto et = escape::path_escape_time(chain, VecN{-0.9, 0.0});
    CHECK(et.escaped);
    CHECK(et.t > 1.0);
    // verify against dense sampling of the norm along the chain
    const UnitSpeedPath path = chain;
    const VecN x{-0.9, 0.0};
    double bracket = -1.0;
    for (double t = 0.0; t < 3.0; t += 1e-5) {
      if ((x + path.eval(t)).norm() >= 1.0) {
        bracket = t;
        break;
      }
    }
    CHECK(std::abs(et.t - bracket) <= 1e-4);
  }
  SUBCASE("agrees with line_escape_time on random starts and directions") {
    Rng rng(60601);
    for (int rep = 0; rep < 10000; ++rep) {
      const VecN x = geom::uniform_ball_sample(2, rng);
      const VecN u = geom::uniform_sphere_sample(2, rng);
      const double direct = escape::line_escape_time(x, u);
      const auto via_path = escape::path_escape_time(paths::Line(u), x);
      CHECK(std::abs(direct - via_path.t) <= 1e-12);
    }
  }
  SUBCASE("curved paths bisect the crossing") {
    const UnitSpeedPath arc = ConstantCurvature2D(1.0, 10.0);
    const auto et = escape::path_escape_time(arc, VecN{0.0, 0.0});
    // |gamma(t)| = 2 sin(t/2) reaches 1 at t = pi/3
    CHECK(et.escaped);
    CHECK(et.t == doctest::Approx(kPi / 3.0).epsilon(1e-9));
  }
  SUBCASE("looping arc never escapes from the loop center") {
    const UnitSpeedPath loop =
        ConstantCurvature2D(4.0, std::numeric_limits<double>::infinity());
    const auto et = escape::path_escape_time(loop, VecN{0.0, -0.25}, 8.0);
    CHECK_FALSE(et.escaped);
    CHECK(et.t == 8.0);
  }
  SUBCASE("boundary start escapes immediately") {
    const auto et = escape::path_escape_time(Line::axis(2), VecN{0.0, 1.0});
    CHECK(et.escaped);
    CHECK(et.t == 0.0);
  }
  SUBCASE("outside start is rejected") {
    CHECK_THROWS_AS(escape::path_escape_time(Line::axis(2), VecN{1.2, 0.0}),
                    OutsideBall);
  }
}

TEST_CASE("mean_escape_monte_carlo matches closed forms") {
  struct Case {
    std::size_t n;
    std::size_t samples;
    double expected;
  };
  const Case cases[] = {
      {1, 10000, 1.0},
      {2, 1000000, kLineMean2D},
      {3, 1000000, 0.75},
  };
  for (const Case& c : cases) {
    Rng rng(90210, c.n);
    const auto est =
        escape::mean_escape_monte_carlo(Line::axis(c.n), c.n, c.samples, rng);
    CHECK_FALSE(est.truncated);
    CHECK(std::abs(est.value - c.expected) <= 4.0 * est.error_bound);
    CHECK(est.error_bound > 0.0);
  }
}

TEST_CASE("monte carlo results are identical across worker counts") {
  const auto run = [](const char* threads) {
    setenv("ESCAPE_LAB_THREADS", threads, 1);
    Rng rng(5544332211ULL);
    const auto est = escape::mean_escape_monte_carlo(Line::axis(3), 3, 300000, rng);
    unsetenv("ESCAPE_LAB_THREADS");
    return est.value;
  };
  const double single = run("1");
  const double multi = run("8");
  CHECK(single == multi);
}

TEST_CASE("refining the partition never grows the region") {
  Rng rng(550011);
  for (int trial = 0; trial < 20; ++trial) {
    Rng gen = rng.split(trial);
    const UnitSpeedPath chain = random_chain(gen, 5);
    const double t = gen.next_uniform(0.5, 3.0);
    const auto coarse =
        escape::non_escape_area(chain, t, paths::uniform_partition(t, 0.2));
    const auto fine =
        escape::non_escape_area(chain, t, paths::uniform_partition(t, 0.1));
    CHECK(fine.area_or_volume <= coarse.area_or_volume + 1e-9);
  }
}

TEST_CASE("fixed and random escape directions agree for the line") {
  // Rotational symmetry makes the fixed-direction mean equal the
  // random-direction mean; check it instead of assuming it.
  const std::size_t samples = 400000;
  for (const std::size_t n : {2, 4}) {
    Rng fixed_rng(17, n);
    const auto fixed =
        escape::mean_escape_monte_carlo(paths::Line::axis(n), n, samples, fixed_rng);
    Rng free_rng(18, n);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
      const VecN x = geom::uniform_ball_sample(n, free_rng);
      const VecN u = geom::uniform_sphere_sample(n, free_rng);
      const double t = escape::line_escape_time(x, u);
      sum += t;
      sum_sq += t * t;
    }
    const double mean = sum / samples;
    const double var = (sum_sq - samples * mean * mean) / (samples - 1.0);
    const double se = std::sqrt(var / samples);
    const double band = 4.0 * std::hypot(se, fixed.error_bound);
    CHECK(std::abs(mean - fixed.value) <= band);
    CHECK(std::abs(mean - closedform::expected_linear_escape(n)) <= 4.0 * se);
  }
}

TEST_CASE("dominance: chain non-escape areas dominate the line") {
  Rng rng(700123);
  for (int trial = 0; trial < 50; ++trial) {
    Rng gen = rng.split(trial);
    const UnitSpeedPath chain = random_chain(gen, 6);
    for (int step = 1; step <= 10; ++step) {
      const double t = 0.3 * step;
      const Partition p = paths::uniform_partition(t, 0.1);
      const auto approx = escape::non_escape_area(chain, t, p);
      CHECK(approx.area_or_volume >= escape::line_nonescape_area(t) - 1e-9);
    }
  }
}

TEST_CASE("chain estimates never beat the line value") {
  Rng rng(88991);
  escape::QuadratureSettings settings;  // defaults: h = 0.005
  for (int trial = 0; trial < 25; ++trial) {
    Rng gen = rng.split(trial);
    const UnitSpeedPath chain = random_chain(gen, 6);
    const auto est = escape::mean_escape_quadrature(chain, settings);
    CHECK_FALSE(est.truncated);
    CHECK(est.value >= kLineMean2D - 1e-6);
  }
}

TEST_CASE("halving the grid never increases the estimate") {
  escape::QuadratureSettings coarse;
  coarse.h = 0.005;
  coarse.t_cap = 8.0;
  escape::QuadratureSettings fine = coarse;
  fine.h = 0.0025;

  const auto check_path = [&](const UnitSpeedPath& path) {
    const double a = escape::mean_escape_quadrature(path, coarse).value;
    const double b = escape::mean_escape_quadrature(path, fine).value;
    CHECK(b <= a + 1e-9);
  };
  check_path(Line::axis(2));
  Rng rng(112233);
  for (int trial = 0; trial < 10; ++trial) {
    Rng gen = rng.split(trial);
    check_path(random_chain(gen, 4));
  }
}

TEST_CASE("quadrature agrees with the adaptive line integral") {
  escape::QuadratureSettings settings;
  settings.h = 0.002;
  settings.t_cap = 3.0;
  const auto grid = escape::mean_escape_quadrature(Line::axis(2), settings);
  const auto adaptive = escape::mean_escape_line_quadrature(1e-10);
  CHECK(std::abs(grid.value - adaptive.value) <= grid.error_bound + 1e-10);
}
