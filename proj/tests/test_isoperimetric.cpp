#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "cshrink/isoperimetric.hpp"
#include "cshrink/random_sets.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cshrink;
using fixtures::unit_square;

namespace {

void expect_code(ErrorCode code, auto&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(SolveTilde, BallExample) {
  const auto s = solve_tilde(unit_square(), 0.5);
  EXPECT_EQ(s.regime, Regime::Ball);
  ASSERT_TRUE(s.set.kernel().is_point());
  EXPECT_NEAR(s.set.radius(), std::sqrt(0.5 / kPi), 1e-15);
  EXPECT_NEAR(s.set.kernel()[0].x, 0.5, 1e-14);
  EXPECT_NEAR(s.set.kernel()[0].y, 0.5, 1e-14);
  EXPECT_NEAR(s.perimeter, 2.0 * std::sqrt(0.5 * kPi), 1e-14);
  EXPECT_NEAR(s.perimeter, 2.5066, 1e-4);
}

TEST(SolveTilde, StadiumExample) {
  const auto s = solve_tilde(fixtures::rectangle_2x1(), 1.2);
  EXPECT_EQ(s.regime, Regime::Stadium);
  ASSERT_TRUE(s.set.kernel().is_segment());
  const double L = 1.2 - kPi / 4.0;
  const auto& k = s.set.kernel();
  EXPECT_NEAR(distance(k[0], k[1]), L, 1e-14);
  EXPECT_NEAR(0.5 * (k[0].x + k[1].x), 1.0, 1e-14);
  EXPECT_NEAR(0.5 * (k[0].y + k[1].y), 0.5, 1e-14);
  EXPECT_NEAR(k[0].y, k[1].y, 1e-14);
  EXPECT_NEAR(s.rho, 0.5, 1e-15);
  EXPECT_NEAR(s.perimeter, 2.0 * L + kPi, 1e-14);
  EXPECT_NEAR(s.perimeter, 3.9708, 1e-4);
}

TEST(SolveTilde, OpeningExampleMatchesClosedForm) {
  const auto s = solve_tilde(unit_square(), 0.9);
  EXPECT_EQ(s.regime, Regime::Opening);
  const double rho = std::sqrt(0.1 / (4.0 - kPi));
  EXPECT_NEAR(s.rho, rho, 1e-12);
  EXPECT_NEAR(s.rho, 0.34131, 1e-5);
  EXPECT_NEAR(s.perimeter, 4.0 - 2.0 * (4.0 - kPi) * rho, 1e-12);
  EXPECT_NEAR(s.perimeter, oracle::square_perimeter(0.9), 1e-12);
  EXPECT_NEAR(s.max_curvature, 1.0 / rho, 1e-9);
}

TEST(SolveTilde, FullAreaIsTheDomain) {
  const auto s = solve_tilde(unit_square(), 1.0);
  EXPECT_EQ(s.regime, Regime::Opening);
  EXPECT_EQ(hausdorff(s.set, unit_square()), 0.0);
  EXPECT_EQ(s.perimeter, 4.0);
  EXPECT_TRUE(std::isinf(s.max_curvature));
}

TEST(SolveTilde, Errors) {
  expect_code(ErrorCode::NonpositiveArea, [] { solve_tilde(unit_square(), 0.0); });
  expect_code(ErrorCode::NonpositiveArea, [] { solve_tilde(unit_square(), -1.0); });
  expect_code(ErrorCode::AreaExceedsDomain, [] { solve_tilde(unit_square(), 2.0); });
}

TEST(SolveTilde, SolutionInvariantsOnRandomSets) {
  SetSampler rng(41);
  for (int i = 0; i < 300; ++i) {
    const auto dom = rng.rounded_set();
    const double a = rng.uniform(1e-3, 1.0) * rounded_area(dom);
    const auto s = solve_tilde(dom, a);
    EXPECT_NEAR(rounded_area(s.set) / a, 1.0, 1e-10);
    EXPECT_NEAR(s.perimeter, rounded_perimeter(s.set), 1e-12 * s.perimeter);
    EXPECT_NEAR(s.max_curvature * s.rho, 1.0, 1e-12);
    EXPECT_TRUE(contains(dom, s.set, 1e-9));
    switch (s.regime) {
      case Regime::Ball: EXPECT_TRUE(s.set.kernel().is_point()); break;
      case Regime::Stadium:
        EXPECT_TRUE(s.set.kernel().is_segment());
        EXPECT_NEAR(s.rho, inner_radius(dom).radius, 1e-12);
        break;
      case Regime::Opening: EXPECT_LE(hausdorff(s.set, opening(dom, s.rho)), 1e-12); break;
    }
  }
}

TEST(InvertOpeningArea, Examples) {
  EXPECT_NEAR(invert_opening_area(unit_square(), 1.0 - (4.0 - kPi) * 0.04), 0.2, 1e-12);
  EXPECT_NEAR(invert_opening_area(unit_square(), kPi / 4.0), 0.5, 1e-12);
  const auto rounded = unit_square(0.3);
  EXPECT_EQ(invert_opening_area(rounded, rounded_area(rounded)), 0.3);
  expect_code(ErrorCode::OutOfRegime, [] { invert_opening_area(unit_square(), 0.5); });
  expect_code(ErrorCode::OutOfRegime, [] { invert_opening_area(unit_square(), 1.5); });
}

TEST(InvertOpeningArea, RoundTripsOnRandomSets) {
  SetSampler rng(42);
  for (int i = 0; i < 200; ++i) {
    const RoundedSet dom(rng.polygon(), rng.uniform(0.0, 0.3));
    const double rbar = inner_radius(dom).radius;
    const double rho = rng.uniform(dom.radius(), rbar);
    const double a = rounded_area(opening(dom, rho));
    EXPECT_NEAR(rounded_area(opening(dom, invert_opening_area(dom, a))), a, 1e-12 * rounded_area(dom));
  }
}

TEST(PerimeterOfArea, ExamplesAndMonotonicity) {
  EXPECT_NEAR(perimeter_of_area(unit_square(), kPi / 4.0), kPi, 1e-12);
  EXPECT_EQ(perimeter_of_area(unit_square(), 1.0), 4.0);
  EXPECT_NEAR(perimeter_of_area(unit_square(), 0.9), 3.414028210, 1e-9);

  SetSampler rng(43);
  for (int i = 0; i < 20; ++i) {
    const auto dom = rng.rounded_set();
    const IsoperimetricSolver solver(dom);
    double prev = 0.0;
    for (int k = 1; k <= 200; ++k) {
      const double p = solver.perimeter(rounded_area(dom) * k / 200.0);
      EXPECT_GE(p, prev - 1e-12);
      prev = p;
    }
  }
}

TEST(PerimeterOfArea, UnitSquareClosedFormEverywhere) {
  for (int k = 1; k <= 100; ++k) {
    const double a = k / 100.0;
    EXPECT_NEAR(perimeter_of_area(unit_square(), a), oracle::square_perimeter(a), 1e-11) << a;
  }
}

TEST(PerimeterOfArea, ContinuousAcrossRegimeBoundaries) {
  for (const auto& dom : {fixtures::rectangle_2x1(), unit_square(), fixtures::triangle(), fixtures::box(0, 0, 3, 1, 0.1)}) {
    const IsoperimetricSolver solver(dom);
    for (double a0 : {solver.ball_limit(), solver.stadium_limit()}) {
      const double lo = solver.perimeter(a0 - 1e-8), hi = solver.perimeter(a0 + 1e-8);
      EXPECT_LE(std::abs(hi - lo), 1e-6);
    }
  }
}

TEST(FreeArcTurning, Examples) {
  EXPECT_NEAR(free_arc_turning(unit_square(), 0.2), 8.0 - 2.0 * kPi, 1e-12);
  EXPECT_NEAR(free_arc_turning(unit_square(), 0.45), 8.0 - 2.0 * kPi, 1e-12);
  EXPECT_NEAR(free_arc_turning(fixtures::triangle(), 0.3), 6.0 * std::sqrt(3.0) - 2.0 * kPi, 1e-12);
  EXPECT_NEAR(free_arc_turning(fixtures::hexagon(), 0.5), 4.0 * std::sqrt(3.0) - 2.0 * kPi, 1e-12);
  expect_code(ErrorCode::OutOfRegime, [] { free_arc_turning(unit_square(), 0.6); });
  expect_code(ErrorCode::OutOfRegime, [] { free_arc_turning(unit_square(0.3), 0.2); });
}

TEST(FreeArcTurning, MatchesFiniteDifferenceOfOpeningPerimeter) {
  for (const auto& dom : {unit_square(), fixtures::triangle(), fixtures::hexagon(), fixtures::rectangle_2x1()}) {
    const double rbar = inner_radius(dom).radius;
    for (double f : {0.2, 0.5, 0.8}) {
      const double rho = f * rbar, h = 1e-6;
      const double fd = -(rounded_perimeter(opening(dom, rho + h)) - rounded_perimeter(opening(dom, rho - h))) / (2 * h);
      EXPECT_NEAR(fd / free_arc_turning(dom, rho), 1.0, 1e-3);
    }
  }
}

TEST(CurvatureLaw, FiniteDifferenceMatchesInverseRho) {
  for (const auto& dom : {unit_square(), fixtures::triangle(), fixtures::rectangle_2x1()}) {
    const IsoperimetricSolver solver(dom);
    const double area = rounded_area(dom), da = 1e-6 * area;
    const double b1 = solver.ball_limit(), b2 = solver.stadium_limit();
    for (int k = 1; k < 50; ++k) {
      const double a = area * k / 50.0;
      if (std::abs(a - b1) < 1e-3 * area || std::abs(a - b2) < 1e-3 * area) continue;
      const double fd = (solver.perimeter(a + da) - solver.perimeter(a - da)) / (2 * da);
      EXPECT_NEAR(fd * solver.solve(a).rho, 1.0, 1e-3) << "a=" << a;
    }
  }
}

TEST(MonotoneInclusion, RandomPairs) {
  SetSampler rng(44);
  for (int i = 0; i < 100; ++i) {
    const auto dom = rng.rounded_set();
    const IsoperimetricSolver solver(dom);
    double a1 = rng.uniform(1e-3, 1.0) * rounded_area(dom), a2 = rng.uniform(1e-3, 1.0) * rounded_area(dom);
    if (a1 > a2) std::swap(a1, a2);
    EXPECT_TRUE(contains(solver.solve(a2).set, solver.solve(a1).set, 1e-8));
  }
}

TEST(RCommutation, RandomTriples) {
  SetSampler rng(45);
  for (int i = 0; i < 100; ++i) {
    const auto dom = rng.rounded_set();
    const double a = rng.uniform(1e-3, 1.0) * rounded_area(dom), r = rng.uniform(0.0, 2.0);
    const auto grown = dilate(solve_tilde(dom, a).set, r);
    const auto direct = solve_tilde(dilate(dom, r), rounded_area(grown)).set;
    EXPECT_LE(hausdorff(grown, direct), 1e-8);
  }
}

TEST(RegimeSelection, BoundaryValuesGoToHigherRegime) {
  const IsoperimetricSolver rect(fixtures::rectangle_2x1());
  EXPECT_EQ(rect.regime(rect.ball_limit()), Regime::Stadium);
  EXPECT_EQ(rect.regime(rect.stadium_limit()), Regime::Opening);
  const IsoperimetricSolver sq(unit_square());
  EXPECT_EQ(sq.ball_limit(), sq.stadium_limit());
  EXPECT_EQ(sq.regime(kPi / 4.0), Regime::Opening);
  EXPECT_EQ(sq.regime(kPi / 4.0 - 1e-6), Regime::Ball);
}

// The returned perimeter must not be beaten by any convex competitor of the
// same area inside the square.
TEST(Optimality, RandomCompetitorsNeverWin) {
  const auto dom = unit_square();
  const double a = 0.9;
  const double best = solve_tilde(dom, a).perimeter;
  SetSampler rng(46);
  int tried = 0;
  while (tried < 1000) {
    RoundedSet cand;
    if (tried % 2 == 0) {
      // cut the corners at random depths
      std::vector<Point2> v;
      const Point2 corners[4] = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
      for (int c = 0; c < 4; ++c) {
        const Point2 p = corners[c], prev = corners[(c + 3) % 4], next = corners[(c + 1) % 4];
        const double u = rng.uniform(0.0, 0.35), w = rng.uniform(0.0, 0.35);
        v.push_back(p + (prev - p) * u);
        v.push_back(p + (next - p) * w);
      }
      cand = RoundedSet(ConvexPolygon::hull(v), 0.0);
    } else {
      // a rounded polygon inside the square: kernel in [s, 1-s]², radius s
      const double s = rng.uniform(0.0, 0.3);
      std::vector<Point2> pts;
      for (int k = 0; k < 40; ++k) {
        const double side = rng.uniform(0.0, 4.0), u = rng.uniform(s, 1.0 - s);
        const int e = static_cast<int>(side);
        pts.push_back(e == 0 ? Point2{u, s} : e == 1 ? Point2{1 - s, u} : e == 2 ? Point2{u, 1 - s} : Point2{s, u});
      }
      cand = RoundedSet(ConvexPolygon::hull(pts), s);
    }
    const double area = rounded_area(cand);
    if (area < a) continue;
    // shrink about the centroid; convexity keeps the copy inside the square
    const Point2 c = rounded_centroid(cand);
    const double k = std::sqrt(a / area);
    std::vector<Point2> v;
    for (const auto& p : cand.kernel().vertices()) v.push_back(c + (p - c) * k);
    const RoundedSet shrunk(ConvexPolygon(std::move(v)), cand.radius() * k);
    ASSERT_TRUE(contains(dom, shrunk, 1e-12));
    ASSERT_NEAR(rounded_area(shrunk), a, 1e-12);
    EXPECT_GE(rounded_perimeter(shrunk), best - 1e-12);
    ++tried;
  }
}
