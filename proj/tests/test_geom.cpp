#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "escapelab/disk_area.hpp"
#include "escapelab/errors.hpp"
#include "escapelab/measures.hpp"
#include "escapelab/rng.hpp"
#include "escapelab/sampling.hpp"

using namespace escapelab;
using geom::DiskConfig;

namespace {

constexpr double kPi = 3.14159265358979323846;

DiskConfig unit_disks_2d(std::vector<Vec2> centers) {
  std::vector<VecN> cs;
  for (const Vec2 c : centers) cs.push_back(VecN::from2(c));
  return DiskConfig::unit(std::move(cs));
}

// Hit-counting oracle: area of the intersection by uniform sampling inside
// the first disk. Independent of the arc-polygon path.
struct McArea {
  double value;
  double se;
};

McArea mc_intersection_area(const DiskConfig& config, std::size_t samples, Rng& rng) {
  const Vec2 c0 = config.centers[0].to2();
  const double r0 = config.radii[0];
  std::size_t hits = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const double angle = rng.next_uniform(0.0, 2.0 * kPi);
    const double radius = r0 * std::sqrt(rng.next_double());
    const Vec2 p = c0 + Vec2{radius * std::cos(angle), radius * std::sin(angle)};
    bool inside = true;
    for (std::size_t i = 1; i < config.size() && inside; ++i) {
      inside = distance(p, config.centers[i].to2()) <= config.radii[i];
    }
    if (inside) ++hits;
  }
  const double domain = kPi * r0 * r0;
  const double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  return {domain * p_hat,
          domain * std::sqrt(p_hat * (1.0 - p_hat) / static_cast<double>(samples))};
}

DiskConfig random_config(Rng& rng, std::size_t max_disks) {
  const std::size_t n = 1 + rng.next_below(max_disks);
  std::vector<VecN> centers;
  std::vector<double> radii;
  for (std::size_t i = 0; i < n; ++i) {
    centers.push_back(VecN{rng.next_uniform(-1.0, 1.0), rng.next_uniform(-1.0, 1.0)});
    radii.push_back(rng.next_uniform(0.5, 1.5));
  }
  return DiskConfig(std::move(centers), std::move(radii));
}

}  // namespace

TEST_CASE("lens_area closed forms") {
  CHECK(geom::lens_area(0.0, 1.0, 1.0) == doctest::Approx(kPi).epsilon(1e-12));
  CHECK(geom::lens_area(2.0, 1.0, 1.0) == 0.0);
  CHECK(geom::lens_area(3.0, 1.0, 1.0) == 0.0);
  const double expected = 2.0 * kPi / 3.0 - std::sqrt(3.0) / 2.0;
  CHECK(geom::lens_area(1.0, 1.0, 1.0) == doctest::Approx(expected).epsilon(1e-12));
  // unequal radii: containment branch
  CHECK(geom::lens_area(0.2, 0.5, 1.0) == doctest::Approx(kPi * 0.25).epsilon(1e-12));
}

TEST_CASE("lens_area agrees with Monte Carlo hit counting") {
  Rng rng(20240901);
  const std::size_t samples = 200000;
  for (int trial = 0; trial < 10; ++trial) {
    const double d = rng.next_uniform(0.0, 2.2);
    const auto cfg = unit_disks_2d({{0.0, 0.0}, {d, 0.0}});
    Rng mc_rng = rng.split(100 + trial);
    const McArea mc = mc_intersection_area(cfg, samples, mc_rng);
    const double exact = geom::lens_area(d, 1.0, 1.0);
    CHECK(std::abs(exact - mc.value) <= 4.0 * mc.se + 1e-6);
  }
}

TEST_CASE("intersection_area_2d basic cases") {
  SUBCASE("single disk") {
    const auto res = geom::intersection_area_2d(unit_disks_2d({{0.3, -0.2}}));
    CHECK(res.area == doctest::Approx(kPi).epsilon(1e-12));
    CHECK(res.region.is_full_disk());
  }
  SUBCASE("two unit disks at distance 1 equal the lens") {
    const auto res = geom::intersection_area_2d(unit_disks_2d({{0, 0}, {1, 0}}));
    CHECK(res.area == doctest::Approx(geom::lens_area(1, 1, 1)).epsilon(1e-12));
    CHECK(res.region.vertices.size() == 2);
    CHECK(res.region.arcs.size() == 2);
  }
  SUBCASE("tangent disks have zero area") {
    const auto res = geom::intersection_area_2d(unit_disks_2d({{0, 0}, {2, 0}}));
    CHECK(res.area == 0.0);
  }
  SUBCASE("disjoint disks are empty") {
    const auto res = geom::intersection_area_2d(unit_disks_2d({{0, 0}, {3, 0}}));
    CHECK(res.area == 0.0);
    CHECK(res.region.empty_region);
  }
  SUBCASE("Reuleaux triangle") {
    const double s = 1.0;
    const auto res = geom::intersection_area_2d(
        unit_disks_2d({{0, 0}, {s, 0}, {0.5 * s, std::sqrt(3.0) / 2.0 * s}}));
    CHECK(res.area == doctest::Approx(0.5 * (kPi - std::sqrt(3.0))).epsilon(1e-12));
    CHECK(res.region.vertices.size() == 3);
  }
  SUBCASE("duplicate disks collapse") {
    const auto res = geom::intersection_area_2d(unit_disks_2d({{0, 0}, {0, 0}, {1, 0}}));
    CHECK(res.area == doctest::Approx(geom::lens_area(1, 1, 1)).epsilon(1e-12));
  }
  SUBCASE("contained disk wins") {
    DiskConfig cfg({VecN{0.0, 0.0}, VecN{0.1, 0.0}}, {1.0, 0.25});
    const auto res = geom::intersection_area_2d(cfg);
    CHECK(res.area == doctest::Approx(kPi * 0.0625).epsilon(1e-12));
  }
  SUBCASE("dimension mismatch is rejected") {
    DiskConfig cfg({VecN{0.0, 0.0, 0.0}}, {1.0});
    CHECK_THROWS_AS(geom::intersection_area_2d(cfg), DimensionMismatch);
  }
}

TEST_CASE("intersection area matches Monte Carlo on random configurations") {
  Rng rng(77001);
  std::size_t nonempty = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Rng gen = rng.split(trial);
    const DiskConfig cfg = random_config(gen, 6);
    const double exact = geom::intersection_area_2d(cfg).area;
    Rng mc_rng = gen.split(1);
    const McArea mc = mc_intersection_area(cfg, 1000000, mc_rng);
    CHECK(std::abs(exact - mc.value) <= 4.0 * mc.se + 1e-6);
    if (exact > 0.0) ++nonempty;
  }
  CHECK(nonempty > 20);  // the campaign exercises real intersections
}

TEST_CASE("intersection area is invariant under rigid motions") {
  Rng rng(88112);
  for (int trial = 0; trial < 50; ++trial) {
    Rng gen = rng.split(trial);
    const DiskConfig cfg = random_config(gen, 6);
    const double angle = gen.next_uniform(0.0, 2.0 * kPi);
    const Vec2 shift{gen.next_uniform(-3.0, 3.0), gen.next_uniform(-3.0, 3.0)};
    std::vector<VecN> moved;
    for (const VecN& c : cfg.centers) {
      const Vec2 p = c.to2();
      moved.push_back(VecN{p.x * std::cos(angle) - p.y * std::sin(angle) + shift.x,
                           p.x * std::sin(angle) + p.y * std::cos(angle) + shift.y});
    }
    const DiskConfig rigid(std::move(moved), cfg.radii);
    const double a = geom::intersection_area_2d(cfg).area;
    const double b = geom::intersection_area_2d(rigid).area;
    CHECK(std::abs(a - b) <= 1e-9);
  }
}

TEST_CASE("adding a disk never increases the intersection area") {
  Rng rng(99223);
  for (int trial = 0; trial < 50; ++trial) {
    Rng gen = rng.split(trial);
    DiskConfig cfg = random_config(gen, 5);
    const double before = geom::intersection_area_2d(cfg).area;
    cfg.centers.push_back(VecN{gen.next_uniform(-1.0, 1.0), gen.next_uniform(-1.0, 1.0)});
    cfg.radii.push_back(gen.next_uniform(0.5, 1.5));
    const DiskConfig larger(cfg.centers, cfg.radii);
    const double after = geom::intersection_area_2d(larger).area;
    CHECK(after <= before + 1e-9);
  }
}

TEST_CASE("union_area_2d") {
  SUBCASE("one disk") {
    CHECK(geom::union_area_2d(unit_disks_2d({{0, 0}})).value ==
          doctest::Approx(kPi).epsilon(1e-12));
  }
  SUBCASE("disjoint disks add up") {
    CHECK(geom::union_area_2d(unit_disks_2d({{0, 0}, {5, 0}})).value ==
          doctest::Approx(2.0 * kPi).epsilon(1e-12));
  }
  SUBCASE("two unit disks at distance 1 by inclusion-exclusion") {
    const double expected = 2.0 * kPi - geom::lens_area(1, 1, 1);
    CHECK(geom::union_area_2d(unit_disks_2d({{0, 0}, {1, 0}})).value ==
          doctest::Approx(expected).epsilon(1e-12));
  }
  SUBCASE("bounds") {
    Rng rng(51420);
    for (int trial = 0; trial < 30; ++trial) {
      Rng gen = rng.split(trial);
      const DiskConfig cfg = random_config(gen, 6);
      const double u = geom::union_area_2d(cfg).value;
      double max_single = 0.0, total = 0.0;
      for (const double r : cfg.radii) {
        max_single = std::max(max_single, kPi * r * r);
        total += kPi * r * r;
      }
      CHECK(u >= max_single - 1e-9);
      CHECK(u <= total + 1e-9);
    }
  }
  SUBCASE("Monte Carlo fallback for large configurations") {
    Rng rng(61112);
    std::vector<VecN> centers;
    for (int i = 0; i < 14; ++i) {
      centers.push_back(VecN{rng.next_uniform(-1.5, 1.5), rng.next_uniform(-1.5, 1.5)});
    }
    const DiskConfig cfg = DiskConfig::unit(centers);
    Rng mc(61113);
    const auto est = geom::union_area_2d(cfg, 400000, mc);
    CHECK_FALSE(est.exact);
    CHECK(est.stderr_value > 0.0);
    // crosscheck the exact path on a truncated copy
    centers.resize(6);
    const DiskConfig small_cfg = DiskConfig::unit(centers);
    Rng mc2(61114);
    const auto exact = geom::union_area_2d(small_cfg);
    const auto approx = geom::union_area_mc_2d(small_cfg, 400000, mc2);
    CHECK(std::abs(exact.value - approx.value) <= 4.0 * approx.stderr_value + 1e-6);
  }
  SUBCASE("exact overload rejects oversized configurations") {
    std::vector<VecN> centers;
    for (int i = 0; i < 13; ++i) centers.push_back(VecN{0.1 * i, 0.0});
    CHECK_THROWS_AS(geom::union_area_2d(DiskConfig::unit(centers)), Error);
  }
}

TEST_CASE("incremental accumulator matches batch recomputation") {
  Rng rng(31337);
  for (int trial = 0; trial < 40; ++trial) {
    Rng gen = rng.split(trial);
    geom::DiskIntersectionAccumulator acc(1.0);
    std::vector<VecN> so_far;
    Vec2 pos{0.0, 0.0};
    const std::size_t steps = 2 + gen.next_below(20);
    for (std::size_t s = 0; s < steps; ++s) {
      acc.add_disk(pos);
      so_far.push_back(VecN::from2(pos));
      const auto batch = geom::intersection_area_2d(DiskConfig::unit(so_far));
      CHECK(acc.area() == doctest::Approx(batch.area).epsilon(1e-10));
      const double angle = gen.next_uniform(0.0, 2.0 * kPi);
      const double hop = gen.next_uniform(0.0, 0.4);
      pos += Vec2{hop * std::cos(angle), hop * std::sin(angle)};
    }
  }
}

TEST_CASE("ball_volume and sphere_surface") {
  CHECK(geom::ball_volume(1) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(geom::ball_volume(2) == doctest::Approx(kPi).epsilon(1e-14));
  CHECK(geom::ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-14));
  CHECK(geom::sphere_surface(0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(geom::sphere_surface(1) == doctest::Approx(2.0 * kPi).epsilon(1e-14));
  CHECK(geom::sphere_surface(2) == doctest::Approx(4.0 * kPi).epsilon(1e-14));

  // omega_n = omega_{n-2} * 2 pi / n
  for (std::size_t n = 3; n <= 50; ++n) {
    const double lhs = geom::ball_volume(n);
    const double rhs = geom::ball_volume(n - 2) * 2.0 * kPi / static_cast<double>(n);
    CHECK(std::abs(lhs - rhs) / rhs <= 1e-12);
  }
}

TEST_CASE("uniform_ball_sample moments") {
  SUBCASE("all samples stay inside the ball") {
    Rng rng(1001);
    for (int i = 0; i < 1000; ++i) {
      CHECK(geom::uniform_ball_sample(3, rng).norm() <= 1.0 + 1e-12);
    }
  }
  SUBCASE("mean norm in 3D is 3/4") {
    Rng rng(1002);
    const std::size_t samples = 1000000;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
      const double r = geom::uniform_ball_sample(3, rng).norm();
      sum += r;
      sum_sq += r * r;
    }
    const double mean = sum / samples;
    const double var = (sum_sq - samples * mean * mean) / (samples - 1.0);
    const double se = std::sqrt(var / samples);
    CHECK(std::abs(mean - 0.75) <= 3.0 * se);
  }
  SUBCASE("coordinates are centered") {
    Rng rng(1003);
    const std::size_t samples = 200000;
    double sum = 0.0;
    for (std::size_t i = 0; i < samples; ++i) sum += geom::uniform_ball_sample(2, rng)[0];
    // per-coordinate sd is below 1/sqrt(2)
    CHECK(std::abs(sum / samples) <= 3.0 / std::sqrt(2.0 * samples));
  }
}

TEST_CASE("uniform_sphere_sample") {
  Rng rng(2001);
  for (int i = 0; i < 1000; ++i) {
    CHECK(std::abs(geom::uniform_sphere_sample(4, rng).norm() - 1.0) <= 1e-12);
  }
  SUBCASE("n=1 gives both signs evenly") {
    Rng coin(2002);
    int plus = 0;
    const int samples = 100000;
    for (int i = 0; i < samples; ++i) {
      if (geom::uniform_sphere_sample(1, coin)[0] > 0) ++plus;
    }
    const double p_hat = static_cast<double>(plus) / samples;
    CHECK(std::abs(p_hat - 0.5) <= 3.0 * std::sqrt(0.25 / samples));
  }
  SUBCASE("2D mean is the origin") {
    Rng rng2(2003);
    double sx = 0.0, sy = 0.0;
    const int samples = 1000000;
    for (int i = 0; i < samples; ++i) {
      const VecN v = geom::uniform_sphere_sample(2, rng2);
      sx += v[0];
      sy += v[1];
    }
    const double se = std::sqrt(0.5 / samples);
    CHECK(std::abs(sx / samples) <= 3.0 * se);
    CHECK(std::abs(sy / samples) <= 3.0 * se);
  }
}

TEST_CASE("rng streams are reproducible and splittable") {
  Rng a(42, 7);
  Rng b(42, 7);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  // splits are independent of the parent's position
  Rng c(42, 7);
  c.next_double();
  c.next_double();
  Rng s1 = Rng(42, 7).split(3);
  Rng s2 = c.split(3);
  for (int i = 0; i < 10; ++i) CHECK(s1.next_u64() == s2.next_u64());
  // different streams differ
  Rng d(42, 8);
  bool any_diff = false;
  Rng e(42, 7);
  for (int i = 0; i < 10; ++i) any_diff |= (d.next_u64() != e.next_u64());
  CHECK(any_diff);
}
