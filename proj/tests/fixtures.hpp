#pragma once

#include <cmath>
#include <vector>

#include "cshrink/geometry.hpp"

namespace fixtures {

using cshrink::ConvexPolygon;
using cshrink::Point2;
using cshrink::RoundedSet;

inline RoundedSet box(double x0, double y0, double x1, double y1, double r = 0.0) {
  return {ConvexPolygon({{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}}), r};
}
inline RoundedSet unit_square(double r = 0.0) { return box(0, 0, 1, 1, r); }
inline RoundedSet rectangle_2x1() { return box(0, 0, 2, 1); }

inline RoundedSet regular_polygon(int n, double circumradius = 1.0) {
  std::vector<Point2> v;
  for (int i = 0; i < n; ++i) v.push_back(cshrink::direction(cshrink::kTwoPi * i / n) * circumradius);
  return {ConvexPolygon(std::move(v)), 0.0};
}
inline RoundedSet triangle() { return regular_polygon(3); }
inline RoundedSet hexagon() { return regular_polygon(6); }

inline RoundedSet scaled(const RoundedSet& s, double k) {
  std::vector<Point2> v;
  for (const auto& p : s.kernel().vertices()) v.push_back(p * k);
  return {ConvexPolygon(std::move(v)), s.radius() * k};
}

}  // namespace fixtures
