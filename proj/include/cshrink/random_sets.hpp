#pragma once

// Seeded generator of random rounded sets for property checks. Uniform
// doubles are built from raw 64-bit output so that a seed gives the same
// sets on every platform.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "cshrink/geometry.hpp"

namespace cshrink {

class SetSampler {
 public:
  explicit SetSampler(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  int uniform_int(int lo, int hi) { return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1)); }

  /// Hull of 3..10 points on a jittered, rotated ellipse of size about 1.
  ConvexPolygon polygon() {
    const int n = uniform_int(3, 10);
    std::vector<double> angles(n);
    for (auto& a : angles) a = uniform(0.0, kTwoPi);
    const double ax = uniform(0.5, 1.0), ay = uniform(0.3, 1.0), rot = uniform(0.0, kTwoPi);
    const Point2 shift{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
    std::vector<Point2> pts;
    for (double a : angles) {
      const double jitter = uniform(0.7, 1.0);
      const Point2 p{ax * jitter * std::cos(a), ay * jitter * std::sin(a)};
      pts.push_back(shift + Point2{p.x * std::cos(rot) - p.y * std::sin(rot), p.x * std::sin(rot) + p.y * std::cos(rot)});
    }
    auto hull = ConvexPolygon::hull(std::move(pts));
    if (!hull.is_polygon() || polygon_area(hull) < 0.05) return polygon();
    return hull;
  }

  /// Mostly polygons (half of them rounded), plus some balls and stadiums.
  RoundedSet rounded_set() {
    const double kind = uniform(0.0, 1.0);
    if (kind < 0.1) return RoundedSet::ball({uniform(-1.0, 1.0), uniform(-1.0, 1.0)}, uniform(0.2, 1.0));
    if (kind < 0.2) {
      const Point2 a{uniform(-1.0, 1.0), uniform(-1.0, 1.0)};
      const Point2 b = a + direction(uniform(0.0, kTwoPi)) * uniform(0.2, 1.5);
      return RoundedSet::stadium(a, b, uniform(0.1, 0.8));
    }
    const double radius = kind < 0.6 ? 0.0 : uniform(0.0, 0.5);
    return {polygon(), radius};
  }

 private:
  std::mt19937_64 gen_;
};

}  // namespace cshrink
