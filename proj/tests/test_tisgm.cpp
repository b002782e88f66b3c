#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"
#include "pottssos/tisgm.hpp"

using namespace pottssos;

namespace {

bool contains(const ClassificationResult& res, double x, double y, double tol) {
  for (const auto& fp : res.fixed_points)
    if (std::abs(fp.x - x) <= tol * std::max(1.0, x) && std::abs(fp.y - y) <= tol * std::max(1.0, y))
      return true;
  return false;
}

void check_result_invariants(const ClassificationResult& res) {
  CHECK(res.N == static_cast<int>(res.fixed_points.size()));
  CHECK(res.N >= 1);
  CHECK(res.N <= 7);
  for (const auto& fp : res.fixed_points) {
    CHECK(fp.x > 0);
    CHECK(fp.y > 0);
    CHECK(fp.residual <= 1e-8);
    CHECK(system_residual(fp.x, fp.y, res.params.theta, res.params.r) <= 1e-8);
    if (fp.branch == Branch::CubicX1) CHECK(std::abs(fp.x - 1.0) <= 1e-10);
  }
}

}  // namespace

TEST_SUITE("tisgm") {

TEST_CASE("boundary law map examples") {
  ModelParams p{2, 2, 1.0, 1.0};
  auto f = boundary_law_map({{0.0, 0.0}}, p);
  CHECK(std::abs(f.h[0]) <= 1e-15);
  CHECK(std::abs(f.h[1]) <= 1e-15);
  p.r = 4.0;
  f = boundary_law_map({{0.0, 0.0}}, p);
  CHECK(std::abs(f.h[0]) <= 1e-15);
  CHECK(std::abs(f.h[1]) <= 1e-15);
  CHECK_THROWS_AS(boundary_law_map({{0.0}}, p), std::invalid_argument);
}

TEST_CASE("boundary law map matches the two-component ratio form") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    const double t = oracle::uniform(rng, 0.05, 10);
    const double r = oracle::uniform(rng, 0.05, 10);
    const double h0 = oracle::uniform(rng, -5, 5);
    const double h1 = oracle::uniform(rng, -5, 5);
    const double l0 = std::exp(h0);
    const double l1 = std::exp(h1);
    const double den = t * t * l0 + t * l1 + r;
    const double e0 = (r * l0 + t * l1 + t * t) / den;
    const double e1 = (t * l0 + r * l1 + t) / den;
    const auto f = boundary_law_map({{h0, h1}}, ModelParams{2, 2, t, r});
    CHECK(std::abs(std::exp(f.h[0]) - e0) <= 1e-12 * e0);
    CHECK(std::abs(std::exp(f.h[1]) - e1) <= 1e-12 * e1);
  }
}

TEST_CASE("iteration examples") {
  auto rep = ti_fixed_point_iterate({{0.0, 0.0}}, ModelParams{2, 2, 1.0, 1.0});
  CHECK(rep.converged);
  CHECK(std::abs(rep.h.h[0]) <= 1e-12);
  CHECK(std::abs(rep.h.h[1]) <= 1e-12);

  // the lone fixed point at (5, 25) sits on x = 1 with y the real root of
  // y^3 - 5y^2 + 10y - 2
  const double y1 = bisect_root([](double y) { return y * y * y - 5 * y * y + 10 * y - 2; }, 0, 1, 1e-15);
  rep = ti_fixed_point_iterate({{0.1, 2.0 * std::log(y1) + 0.1}}, ModelParams{2, 2, 5.0, 25.0});
  CHECK(rep.converged);
  CHECK(std::abs(rep.h.h[0]) <= 1e-9);
  CHECK(rep.h.h[1] == doctest::Approx(2.0 * std::log(y1)).epsilon(1e-9));

  const auto res = enumerate_tisgm(1.0, 5.0);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    rep = ti_fixed_point_iterate({{oracle::uniform(rng, -6, 6), oracle::uniform(rng, -6, 6)}},
                                 ModelParams{2, 2, 1.0, 5.0});
    REQUIRE(rep.converged);
    CHECK(contains(res, std::exp(rep.h.h[0] / 2), std::exp(rep.h.h[1] / 2), 1e-6));
  }
}

TEST_CASE("enumeration examples") {
  auto res = enumerate_tisgm(1, 2);
  CHECK(res.N == 1);
  res = enumerate_tisgm(1, 5);
  CHECK(res.N == 7);
  CHECK(res.region.a_region == ARegion::A6);
  CHECK(res.region.b_region == BRegion::B1);
  CHECK(!res.boundary);
  res = enumerate_tisgm(0.2, 1);
  CHECK(res.N == 5);
  res = enumerate_tisgm(9, 81);
  CHECK(res.N == 3);
  for (const auto& fp : res.fixed_points) CHECK(fp.branch == Branch::CubicX1);
  CHECK_THROWS_AS(enumerate_tisgm(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(enumerate_tisgm(1, -1), std::invalid_argument);
}

TEST_CASE("region examples") {
  auto lab = classify_region(1, 2);
  CHECK(lab.a_region == ARegion::A1);
  lab = classify_region(1, 5);
  CHECK(lab.a_region == ARegion::A6);
  CHECK(lab.b_region == BRegion::B1);
  CHECK(count_from_regions(lab) == 7);
  lab = classify_region(5, 75);
  CHECK(lab.a_region == ARegion::Boundary);
  CHECK(!count_from_regions(lab).has_value());
}

TEST_CASE("count table") {
  auto cnt = [](ARegion a, BRegion b) { return count_from_regions({a, b, 0}); };
  CHECK(cnt(ARegion::A1, BRegion::NotApplicable) == 1);
  CHECK(cnt(ARegion::A2, BRegion::NotApplicable) == 2);
  CHECK(cnt(ARegion::A3, BRegion::NotApplicable) == 3);
  CHECK(cnt(ARegion::A4, BRegion::B1) == 5);
  CHECK(cnt(ARegion::A4, BRegion::B4) == 2);
  CHECK(!cnt(ARegion::A4, BRegion::B5).has_value());
  CHECK(cnt(ARegion::A5, BRegion::B5) == 2);
  CHECK(cnt(ARegion::A6, BRegion::B1) == 7);
  CHECK(!cnt(ARegion::A6, BRegion::B5).has_value());
}

TEST_CASE("lines") {
  CHECK(count_on_line(Line::Potts, 1 + 2 * std::sqrt(2.0)) == 4);
  CHECK(count_on_line(Line::Potts, 4) == 4);
  CHECK(count_on_line(Line::SOS, 0.5) == 1);
  CHECK(count_on_line(Line::Square, 5) == 1);
  const auto p = point_on_line(Line::Square, 3);
  CHECK(p.theta == 3);
  CHECK(p.r == 9);
}

TEST_CASE("square line has only x = 1 points") {
  for (double t = 0.05; t < 25; t += 0.173) {
    const auto res = enumerate_tisgm(t, t * t);
    for (const auto& fp : res.fixed_points) CHECK(std::abs(fp.x - 1.0) <= 1e-10);
  }
}

TEST_CASE("random points: invariants, gate and table") {
  std::mt19937_64 rng(31);
  int table_checked = 0;
  for (int i = 0; i < 3000; ++i) {
    const double t = oracle::uniform(rng, 1e-2, 10);
    const double r = oracle::uniform(rng, 1e-2, 60);
    const auto res = enumerate_tisgm(t, r);
    check_result_invariants(res);
    CHECK(res.quartic_gate_holds);
    if (r <= 3 * t * t) {
      for (const auto& fp : res.fixed_points) CHECK(fp.branch == Branch::CubicX1);
    }
    if (!res.boundary) {
      const auto table = count_from_regions(res.region);
      if (table) {
        CHECK(*table == res.N);
        ++table_checked;
      }
    }
  }
  CHECK(table_checked > 2500);
}

TEST_CASE("enumeration agrees with a multi-start Newton oracle") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    const double t = oracle::uniform(rng, 0.05, 10);
    const double r = oracle::uniform(rng, 0.05, 10);
    const auto res = enumerate_tisgm(t, r);
    if (res.boundary) continue;
    const auto pts = oracle::newton_fixed_points(t, r);
    CHECK(pts.size() == res.fixed_points.size());
    for (const auto& p : pts) CHECK(contains(res, p.x, p.y, 1e-6));
  }
}

TEST_CASE("iteration finds nothing outside the enumeration") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    const double t = oracle::uniform(rng, 0.05, 10);
    const double r = oracle::uniform(rng, 0.05, 10);
    const ModelParams p{2, 2, t, r};
    const auto res = enumerate_tisgm(t, r);
    for (int s = 0; s < 500; ++s) {
      const auto rep = ti_fixed_point_iterate({{oracle::uniform(rng, -10, 10), oracle::uniform(rng, -10, 10)}}, p, 4000);
      if (!rep.converged) continue;
      CHECK(contains(res, std::exp(rep.h.h[0] / 2), std::exp(rep.h.h[1] / 2), 1e-6));
    }
  }
}

TEST_CASE("general k and m iteration") {
  ModelParams p{3, 4, 0.7, 2.0};
  auto rep = ti_fixed_point_iterate({{0, 0, 0, 0}}, p);
  CHECK(rep.converged);
  auto f = boundary_law_map(rep.h, p);
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(rep.h.h[i] - 3 * f.h[i]) <= 1e-10);
}

}
