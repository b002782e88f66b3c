#include <array>
#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pottssos/polyroot.hpp"

using namespace pottssos;

namespace {

void check_residuals(std::span<const double> c, const RootSet& rs) {
  double cmax = 0.0;
  for (double v : c) cmax = std::max(cmax, std::abs(v));
  const auto degree = static_cast<double>(c.size() - 1);
  for (double y : rs.roots) {
    const double bound = 1e-8 * (1.0 + cmax * std::pow(std::max(1.0, std::abs(y)), degree));
    CHECK(std::abs(poly_eval(c, y)) <= bound);
  }
}

void check_sorted_distinct(const RootSet& rs) {
  for (std::size_t i = 1; i < rs.roots.size(); ++i)
    CHECK(rs.roots[i] - rs.roots[i - 1] > kMergeTol * std::max(1.0, std::abs(rs.roots[i])));
  int pos = 0;
  for (double y : rs.roots) pos += y > 0.0;
  CHECK(rs.positive_count == pos);
}

}  // namespace

TEST_SUITE("polyroot") {

TEST_CASE("banded sign") {
  CHECK(banded_sign(1e-11) == Sign::Zero);
  CHECK(banded_sign(-1e-11) == Sign::Zero);
  CHECK(banded_sign(2e-10) == Sign::Positive);
  CHECK(banded_sign(-2e-10) == Sign::Negative);
  CHECK(banded_sign(1e-6, 1e6) == Sign::Zero);
}

TEST_CASE("cubic coefficients") {
  CHECK(cubic_x1_coefficients(1, 5) == std::array<double, 4>{1, -5, 6, -2});
  CHECK(cubic_x1_coefficients(2, 4) == std::array<double, 4>{2, -4, 8, -4});
  CHECK(cubic_x1_coefficients(1, 1) == std::array<double, 4>{1, -1, 2, -2});
}

TEST_CASE("specialization to r = theta^2") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const double t = oracle::uniform(rng, 0.01, 30);
    const auto c = cubic_x1_coefficients(t, t * t);
    // y^3 - theta y^2 + 2 theta y - 2
    CHECK(c[0] / t == 1.0);
    CHECK(c[1] / t == doctest::Approx(-t).epsilon(1e-15));
    CHECK(c[2] / t == doctest::Approx(2.0 * t).epsilon(1e-15));
    CHECK(c[3] / t == -2.0);
  }
}

TEST_CASE("depressed form examples") {
  auto d = depressed_form(1, 3);
  CHECK(d.p == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(d.q) <= 1e-14);

  const double t1 = 3.0 * std::cbrt(2.0) * (std::cbrt(2.0) - 1.0);
  const double r1 = (3.0 + std::sqrt(9.0 + 12.0 * t1)) / 2.0 * t1;
  d = depressed_form(t1, r1);
  CHECK(d.triple());
  const RootSet rs = solve_cubic(t1, -r1, t1 * t1 + r1, -2.0 * t1);
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.multiplicities[0] == 3);
  CHECK(rs.roots[0] == doctest::Approx(r1 / (3.0 * t1)).epsilon(1e-9));

  // sign of Q on the square line flips where the discriminant quartic does
  const double tc = 7.729814;
  CHECK(depressed_form(tc - 1e-3, (tc - 1e-3) * (tc - 1e-3)).q_sign() == Sign::Positive);
  CHECK(depressed_form(tc + 1e-3, (tc + 1e-3) * (tc + 1e-3)).q_sign() == Sign::Negative);
}

TEST_CASE("Q self-consistency and expanded discriminant") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 2000; ++i) {
    const double t = oracle::uniform(rng, 1e-3, 10);
    const double r = oracle::uniform(rng, 1e-3, 10);
    const auto d = depressed_form(t, r);
    const double Qs = std::pow(d.p / 3.0, 3) + std::pow(d.q / 2.0, 2);
    CHECK(std::abs(d.Q - Qs) <= 1e-14 * std::max({1.0, std::abs(Qs), std::pow(std::abs(d.p) / 3, 3)}));
    // the discriminant of a monic cubic is -108 Q
    const long double disc = oracle::cubic_discriminant(1.0L, -r / t, (t * t + r) / t, -2.0L);
    const long double scale = std::max({1.0L, std::fabs(disc), 108.0L * std::pow(std::fabs(d.p) / 3.0L, 3.0L)});
    CHECK(std::fabs(disc + 108.0L * d.Q) <= 1e-9L * scale);
  }
}

TEST_CASE("solve_cubic examples") {
  RootSet rs = solve_cubic(1, -5, 6, -2);
  REQUIRE(rs.roots.size() == 3);
  CHECK(rs.roots[0] == doctest::Approx(2 - std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rs.roots[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rs.roots[2] == doctest::Approx(2 + std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rs.positive_count == 3);

  rs = solve_cubic(1, 0, 0, -8);
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0] == doctest::Approx(2.0));
  CHECK(rs.multiplicities[0] == 1);

  // square-line cubic at the root of its discriminant
  const double tc = bisect_root(
      [](double t) { return t * t * t * t - 10 * t * t * t + 18 * t * t - 27; }, 7, 8, 1e-15);
  rs = solve_cubic(1, -tc, 2 * tc, -2);
  REQUIRE(rs.roots.size() == 2);
  std::vector<int> m = rs.multiplicities;
  std::sort(m.begin(), m.end());
  CHECK(m == std::vector<int>{1, 2});
  CHECK(rs.has_multiple_root());
}

TEST_CASE("solve_quartic examples") {
  const std::array<double, 5> biq{1, 0, -5, 0, 4};
  RootSet rs = solve_quartic(biq);
  REQUIRE(rs.roots.size() == 4);
  CHECK(rs.roots[0] == doctest::Approx(-2.0));
  CHECK(rs.roots[1] == doctest::Approx(-1.0));
  CHECK(rs.roots[2] == doctest::Approx(1.0));
  CHECK(rs.roots[3] == doctest::Approx(2.0));
  CHECK(rs.positive_count == 2);

  // at theta = 1 the branch quartic is (r-1)^2 (y-1)^2 (2y^2 - (r-1)y + 1)
  auto c = quartic_branch_coefficients(1, 5);
  rs = solve_quartic(c);
  CHECK(rs.positive_count == 3);
  CHECK(rs.positive_count_with_multiplicity() == 4);
  std::vector<double> expect{1.0 - std::sqrt(0.5), 1.0, 1.0 + std::sqrt(0.5)};
  REQUIRE(rs.roots.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) CHECK(rs.roots[i] == doctest::Approx(expect[i]).epsilon(1e-9));
  CHECK(rs.multiplicities[1] == 2);

  // r = 2: the double root y = 1 survives, the quadratic factor has none
  c = quartic_branch_coefficients(1, 2);
  rs = solve_quartic(c);
  REQUIRE(rs.roots.size() == 1);
  CHECK(rs.roots[0] == doctest::Approx(1.0));
  CHECK(rs.multiplicities[0] == 2);

  const std::array<double, 5> zero{0, 0, 0, 0, 0};
  CHECK_THROWS_AS(solve_quartic(zero), std::domain_error);
}

TEST_CASE("quartic coefficients against the fixed-point system") {
  // eliminating x from the system leaves a polynomial in y that the quartic
  // must divide; check it vanishes at every Newton-found quartic-branch point
  std::mt19937_64 rng(23);
  int checked = 0;
  for (int i = 0; i < 200; ++i) {
    const double t = oracle::uniform(rng, 0.05, 3);
    const double r = oracle::uniform(rng, 0.05, 12);
    const auto c = quartic_branch_coefficients(t, r);
    for (const auto& p : oracle::newton_fixed_points(t, r, 12)) {
      if (std::abs(p.x - 1.0) < 1e-6) continue;
      double scale = 0.0;
      for (std::size_t k = 0; k < 5; ++k) scale += std::abs(c[k]) * std::pow(p.y, 4.0 - k);
      CHECK(std::abs(poly_eval(c, p.y)) <= 1e-7 * scale);
      ++checked;
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("oracle roots agree") {
  const std::array<double, 4> c3{1, -5, 6, -2};
  const RootSet a = solve_cubic(1, -5, 6, -2);
  const RootSet b = oracle_real_roots(c3);
  REQUIRE(a.roots.size() == b.roots.size());
  for (std::size_t i = 0; i < a.roots.size(); ++i) CHECK(a.roots[i] == doctest::Approx(b.roots[i]).epsilon(1e-9));

  const std::array<double, 3> sq{1, -2, 1};
  const RootSet d = oracle_real_roots(sq);
  REQUIRE(d.roots.size() == 1);
  CHECK(d.roots[0] == doctest::Approx(1.0));
  CHECK(d.multiplicities[0] == 2);

  const auto q = quartic_branch_coefficients(1, 5);
  const RootSet e = solve_quartic(q);
  const RootSet f = oracle_real_roots(q);
  REQUIRE(e.roots.size() == f.roots.size());
  for (std::size_t i = 0; i < e.roots.size(); ++i) {
    CHECK(e.roots[i] == doctest::Approx(f.roots[i]).epsilon(1e-7));
    CHECK(e.multiplicities[i] == f.multiplicities[i]);
  }
}

TEST_CASE("cubic trichotomy on random parameters") {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 10000; ++i) {
    const double t = oracle::uniform(rng, 1e-3, 10);
    const double r = oracle::uniform(rng, 1e-3, 10);
    const auto c = cubic_x1_coefficients(t, r);
    const auto d = depressed_form(t, r);
    const RootSet rs = solve_cubic(c[0], c[1], c[2], c[3]);
    const RootSet orc = oracle_real_roots(c);
    std::size_t predicted = 0;
    if (d.triple())
      predicted = 1;
    else if (d.q_sign() == Sign::Positive)
      predicted = 1;
    else if (d.q_sign() == Sign::Zero)
      predicted = 2;
    else
      predicted = 3;
    CHECK(rs.roots.size() == predicted);
    CHECK(orc.roots.size() == predicted);
    // Sturm count of distinct real roots, away from the Q = 0 band
    if (std::abs(d.Q) > 1e-6) {
      const oracle::Poly p{c[0], c[1], c[2], c[3]};
      CHECK(static_cast<std::size_t>(oracle::sturm_count(p, -1e6L, 1e6L)) == predicted);
    }
    CHECK(rs.positive_count >= 1);
    CHECK(rs.positive_count <= 3);
    CHECK(rs.positive_count == static_cast<int>(rs.roots.size()));  // Descartes: no negative roots
    check_residuals(c, rs);
    check_sorted_distinct(rs);
  }
}

TEST_CASE("quartic roots against Sturm counts") {
  std::mt19937_64 rng(99);
  int compared = 0;
  for (int i = 0; i < 3000; ++i) {
    const double t = oracle::uniform(rng, 1e-2, 10);
    const double r = oracle::uniform(rng, 1e-2, 10);
    if (std::abs(r - t * t) < 1e-3) continue;
    const auto c = quartic_branch_coefficients(t, r);
    const RootSet rs = solve_quartic(c);
    check_residuals(c, rs);
    check_sorted_distinct(rs);
    if (rs.has_multiple_root()) continue;
    bool near_double = false;
    for (std::size_t k = 1; k < rs.roots.size(); ++k)
      near_double |= rs.roots[k] - rs.roots[k - 1] < 1e-3;
    if (near_double) continue;
    const oracle::Poly p{c[0], c[1], c[2], c[3], c[4]};
    CHECK_MESSAGE(oracle::sturm_count(p, 0.0L, 1e8L) == rs.positive_count, "theta=" << t << " r=" << r);
    ++compared;
  }
  CHECK(compared > 2000);
}

TEST_CASE("bisection") {
  CHECK(bisect_root([](double x) { return x * x - 2; }, 1, 2, 1e-14) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
  const double tc = bisect_root(
      [](double t) { return t * t * t * t - 10 * t * t * t + 18 * t * t - 27; }, 7, 8, 1e-7);
  CHECK(std::abs(tc - 7.729814) <= 1e-5);
  const double t1 = 3.0 * std::cbrt(2.0) * (std::cbrt(2.0) - 1.0);
  const double rc = bisect_root([t1](double r) { return depressed_form(t1, r).Q; }, 4, 5, 1e-12);
  CHECK(std::abs(rc - 4.221293186) <= 1e-6);
  CHECK_THROWS_AS(bisect_root([](double x) { return x * x + 1; }, -1, 1, 1e-9), BracketError);
  const Bracket b = bisect_bracket([](double x) { return x - 0.3; }, 0, 1, 1e-10);
  CHECK(b.lo <= 0.3);
  CHECK(b.hi >= 0.3);
  CHECK(b.hi - b.lo <= 1e-10);
}

}
