#pragma once

// Convex sets represented as a convex polygon (possibly a point or a segment)
// dilated by a closed disk. All sets handled by the library have this form.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "cshrink/errors.hpp"

namespace cshrink {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator-(Point2 a) { return {-a.x, -a.y}; }
  friend constexpr Point2 operator*(Point2 a, double s) { return {a.x * s, a.y * s}; }
  friend constexpr Point2 operator*(double s, Point2 a) { return {a.x * s, a.y * s}; }
  friend constexpr Point2 operator/(Point2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

constexpr double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }
inline Point2 direction(double theta) { return {std::cos(theta), std::sin(theta)}; }
inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

/// Outward unit normal of a counterclockwise edge with direction `d`.
inline Point2 outward_normal(Point2 d) {
  const double len = norm(d);
  return {d.y / len, -d.x / len};
}

namespace detail {

// Relative tolerances, scaled by the bounding-box diagonal of the point set.
inline constexpr double kMergeTol = 1e-12;
inline constexpr double kCollinearTol = 1e-12;
inline constexpr double kReflexTol = 1e-9;

inline double bbox_diagonal(std::span<const Point2> pts) {
  if (pts.empty()) return 0.0;
  double x0 = pts[0].x, x1 = pts[0].x, y0 = pts[0].y, y1 = pts[0].y;
  for (const auto& p : pts) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  return std::hypot(x1 - x0, y1 - y0);
}

// Fan from v[0]: absolute coordinates would cancel badly for small polygons
// far from the origin.
inline double signed_area(std::span<const Point2> v) {
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) twice += cross(v[i] - v[0], v[i + 1] - v[0]);
  return 0.5 * twice;
}

// Extreme points of a nearly collinear point set, as 1 or 2 points.
inline std::vector<Point2> collinear_extremes(std::span<const Point2> pts, double merge_tol) {
  Point2 far = pts[0];
  double best = 0.0;
  for (const auto& p : pts) {
    if (const double d = distance(p, pts[0]); d > best) {
      best = d;
      far = p;
    }
  }
  if (best <= merge_tol) return {pts[0]};
  const Point2 axis = (far - pts[0]) / best;
  auto lo = pts[0], hi = pts[0];
  double tlo = 0.0, thi = 0.0;
  for (const auto& p : pts) {
    const double t = dot(p - pts[0], axis);
    if (t < tlo) tlo = t, lo = p;
    if (t > thi) thi = t, hi = p;
  }
  return {lo, hi};
}

}  // namespace detail

/// Convex polygon with counterclockwise vertices. Zero, one and two vertices
/// encode the empty set, a point and a segment.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;

  /// Canonicalizes: merges near-duplicate vertices, fixes orientation, drops
  /// collinear vertices. Throws InvalidGeometry on non-finite or reflex input.
  explicit ConvexPolygon(std::vector<Point2> vertices) : v_(canonicalize(std::move(vertices))) {}

  static ConvexPolygon point(Point2 p) { return ConvexPolygon(std::vector<Point2>{p}); }
  static ConvexPolygon segment(Point2 a, Point2 b) { return ConvexPolygon(std::vector<Point2>{a, b}); }

  /// Convex hull of an arbitrary point cloud (monotone chain).
  static ConvexPolygon hull(std::vector<Point2> pts) {
    for (const auto& p : pts) {
      if (!is_finite(p)) throw Error(ErrorCode::InvalidGeometry, "non-finite vertex");
    }
    if (pts.size() < 3) return ConvexPolygon(std::move(pts));
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
    const double scale = detail::bbox_diagonal(pts);
    const double tol = detail::kCollinearTol * scale * scale;
    std::vector<Point2> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
      while (k >= 2 && cross(h[k - 1] - h[k - 2], p - h[k - 1]) <= tol) --k;
      h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
      while (k >= lower && cross(h[k - 1] - h[k - 2], pts[i] - h[k - 1]) <= tol) --k;
      h[k++] = pts[i];
    }
    h.resize(k > 1 ? k - 1 : k);
    if (h.size() < 3) return ConvexPolygon(detail::collinear_extremes(pts, detail::kMergeTol * scale));
    return ConvexPolygon(std::move(h));
  }

  const std::vector<Point2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  bool is_point() const { return v_.size() == 1; }
  bool is_segment() const { return v_.size() == 2; }
  bool is_polygon() const { return v_.size() >= 3; }
  const Point2& operator[](std::size_t i) const { return v_[i]; }

  /// Exact diameter (max vertex distance).
  double diameter() const {
    double d = 0.0;
    for (std::size_t i = 0; i < v_.size(); ++i)
      for (std::size_t j = i + 1; j < v_.size(); ++j) d = std::max(d, distance(v_[i], v_[j]));
    return d;
  }

 private:
  static std::vector<Point2> canonicalize(std::vector<Point2> in) {
    for (const auto& p : in) {
      if (!is_finite(p)) throw Error(ErrorCode::InvalidGeometry, "non-finite vertex");
    }
    if (in.empty()) return in;
    const double scale = detail::bbox_diagonal(in);
    const double merge_tol = detail::kMergeTol * scale;

    std::vector<Point2> v;
    v.reserve(in.size());
    for (const auto& p : in) {
      if (v.empty() || distance(p, v.back()) > merge_tol) v.push_back(p);
    }
    while (v.size() > 1 && distance(v.front(), v.back()) <= merge_tol) v.pop_back();
    if (v.size() <= 2) return v;

    const double area_tol = detail::kCollinearTol * scale * scale;
    if (std::abs(detail::signed_area(v)) <= area_tol) return detail::collinear_extremes(v, merge_tol);
    if (detail::signed_area(v) < 0.0) std::reverse(v.begin(), v.end());

    for (bool changed = true; changed && v.size() >= 3;) {
      changed = false;
      const std::size_t n = v.size();
      for (std::size_t i = 0; i < n; ++i) {
        const Point2 prev = v[(i + n - 1) % n], next = v[(i + 1) % n];
        const double c = cross(v[i] - prev, next - v[i]);
        if (c < -detail::kReflexTol * scale * scale) {
          throw Error(ErrorCode::InvalidGeometry, "polygon is not convex");
        }
        if (c <= area_tol) {
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
          changed = true;
          break;
        }
      }
    }
    return v;
  }

  std::vector<Point2> v_;
};

/// Shoelace area; zero for degenerate polygons.
inline double polygon_area(const ConvexPolygon& p) {
  return p.is_polygon() ? detail::signed_area(p.vertices()) : 0.0;
}

/// Boundary length. A segment is traversed on both sides.
inline double polygon_perimeter(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  if (v.size() == 2) return 2.0 * distance(v[0], v[1]);
  double len = 0.0;
  if (v.size() >= 3)
    for (std::size_t i = 0; i < v.size(); ++i) len += distance(v[i], v[(i + 1) % v.size()]);
  return len;
}

inline Point2 polygon_centroid(const ConvexPolygon& p) {
  const auto& v = p.vertices();
  if (v.empty()) throw Error(ErrorCode::EmptySet, "centroid of empty polygon");
  if (v.size() == 1) return v[0];
  if (v.size() == 2) return 0.5 * (v[0] + v[1]);
  double twice = 0.0;
  Point2 acc;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    const Point2 a = v[i] - v[0], b = v[i + 1] - v[0];
    const double c = cross(a, b);
    twice += c;
    acc = acc + (a + b) * c;
  }
  return v[0] + acc / (3.0 * twice);
}

namespace detail {

struct KernelEdge {
  Point2 from;
  Point2 to;
  Point2 normal;  // outward
};

// Edges of the kernel boundary; a segment contributes both orientations.
inline std::vector<KernelEdge> kernel_edges(const ConvexPolygon& k) {
  std::vector<KernelEdge> out;
  const auto& v = k.vertices();
  if (v.size() < 2) return out;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2 a = v[i], b = v[(i + 1) % v.size()];
    out.push_back({a, b, outward_normal(b - a)});
  }
  return out;
}

struct VertexArc {
  Point2 center;
  double start;  // angle of the incoming edge normal
  double sweep;  // exterior angle
};

inline std::vector<VertexArc> vertex_arcs(const ConvexPolygon& k) {
  std::vector<VertexArc> out;
  const auto& v = k.vertices();
  if (v.empty()) return out;
  if (v.size() == 1) return {{v[0], 0.0, kTwoPi}};
  const auto edges = kernel_edges(k);
  const std::size_t n = edges.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 nin = edges[(i + n - 1) % n].normal, nout = edges[i].normal;
    // segment ends turn by exactly π; atan2 may report −π there via a signed zero
    const double sweep = n == 2 ? kPi : std::atan2(cross(nin, nout), dot(nin, nout));
    out.push_back({v[i], std::atan2(nin.y, nin.x), sweep});
  }
  return out;
}

}  // namespace detail

/// kernel ⊕ closed disk of radius `radius`. Default-constructed value is ∅.
class RoundedSet {
 public:
  RoundedSet() = default;

  RoundedSet(ConvexPolygon kernel, double radius) : kernel_(std::move(kernel)), radius_(radius) {
    if (!std::isfinite(radius_) || radius_ < 0.0) throw Error(ErrorCode::InvalidGeometry, "radius must be finite and >= 0");
    if (kernel_.empty()) radius_ = 0.0;
  }

  static RoundedSet ball(Point2 center, double r) { return {ConvexPolygon::point(center), r}; }
  static RoundedSet stadium(Point2 a, Point2 b, double r) { return {ConvexPolygon::segment(a, b), r}; }
  static RoundedSet polygon(std::vector<Point2> ccw) { return {ConvexPolygon(std::move(ccw)), 0.0}; }

  const ConvexPolygon& kernel() const { return kernel_; }
  double radius() const { return radius_; }
  bool empty() const { return kernel_.empty(); }
  double diameter() const { return empty() ? 0.0 : kernel_.diameter() + 2.0 * radius_; }

 private:
  ConvexPolygon kernel_;
  double radius_ = 0.0;
};

/// Steiner formula: |K| + s·per(K) + πs².
inline double rounded_area(const RoundedSet& s) {
  if (s.empty()) return 0.0;
  const double r = s.radius();
  return polygon_area(s.kernel()) + r * polygon_perimeter(s.kernel()) + kPi * r * r;
}

inline double rounded_perimeter(const RoundedSet& s) {
  if (s.empty()) return 0.0;
  return polygon_perimeter(s.kernel()) + kTwoPi * s.radius();
}

/// Area centroid via kernel + edge strips + vertex sectors.
inline Point2 rounded_centroid(const RoundedSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "centroid of empty set");
  const double r = s.radius();
  double total = 0.0;
  Point2 moment;
  if (const double ak = polygon_area(s.kernel()); ak > 0.0) {
    total += ak;
    moment = moment + polygon_centroid(s.kernel()) * ak;
  }
  if (r > 0.0) {
    for (const auto& e : detail::kernel_edges(s.kernel())) {
      const double area = distance(e.from, e.to) * r;
      total += area;
      moment = moment + (0.5 * (e.from + e.to) + e.normal * (0.5 * r)) * area;
    }
    for (const auto& arc : detail::vertex_arcs(s.kernel())) {
      const double area = 0.5 * arc.sweep * r * r;
      const double offset = 4.0 * r * std::sin(0.5 * arc.sweep) / (3.0 * arc.sweep);
      total += area;
      moment = moment + (arc.center + direction(arc.start + 0.5 * arc.sweep) * offset) * area;
    }
  }
  if (total <= 0.0) return polygon_centroid(s.kernel());
  return moment / total;
}

/// h(θ) = max_v v·(cos θ, sin θ) + radius.
inline double support(const RoundedSet& s, double theta) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "support of empty set");
  const Point2 u = direction(theta);
  double h = -INFINITY;
  for (const auto& v : s.kernel().vertices()) h = std::max(h, dot(v, u));
  return h + s.radius();
}

namespace detail {

inline constexpr int kDefaultAngleGrid = 1024;

inline std::vector<double> comparison_angles(const RoundedSet& a, const RoundedSet& b, int grid) {
  std::vector<double> th;
  th.reserve(static_cast<std::size_t>(grid) + a.kernel().size() + b.kernel().size());
  for (int i = 0; i < grid; ++i) th.push_back(kTwoPi * i / grid);
  for (const auto* s : {&a, &b})
    for (const auto& e : kernel_edges(s->kernel())) th.push_back(std::atan2(e.normal.y, e.normal.x));
  return th;
}

}  // namespace detail

/// B ⊆ A up to `tol`, judged on support functions.
inline bool contains(const RoundedSet& a, const RoundedSet& b, double tol, int grid = detail::kDefaultAngleGrid) {
  if (b.empty()) return true;
  if (a.empty()) return false;
  for (double th : detail::comparison_angles(a, b, grid)) {
    if (support(b, th) > support(a, th) + tol) return false;
  }
  return true;
}

inline double hausdorff(const RoundedSet& a, const RoundedSet& b, int grid = detail::kDefaultAngleGrid) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySet, "hausdorff distance with empty set");
  double d = 0.0;
  for (double th : detail::comparison_angles(a, b, grid)) d = std::max(d, std::abs(support(a, th) - support(b, th)));
  return d;
}

/// Length of ∂S inside the closed disk B_r(center), by exact clipping of the
/// boundary segments and arcs.
inline double boundary_length_in_ball(const RoundedSet& s, Point2 center, double r) {
  if (s.empty() || r <= 0.0) return 0.0;
  const double rad = s.radius();
  double len = 0.0;

  for (const auto& e : detail::kernel_edges(s.kernel())) {
    const Point2 p = e.from + e.normal * rad, d = e.to - e.from;
    const Point2 w = p - center;
    const double qa = dot(d, d), qb = 2.0 * dot(w, d), qc = dot(w, w) - r * r;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (qa == 0.0 || disc <= 0.0) continue;
    const double sq = std::sqrt(disc);
    const double u0 = std::max(0.0, (-qb - sq) / (2.0 * qa)), u1 = std::min(1.0, (-qb + sq) / (2.0 * qa));
    if (u1 > u0) len += (u1 - u0) * std::sqrt(qa);
  }

  if (rad > 0.0) {
    for (const auto& arc : detail::vertex_arcs(s.kernel())) {
      const Point2 w = center - arc.center;
      const double dd = norm(w);
      double inside = 0.0;  // angular measure of the arc inside the disk
      if (dd + rad <= r) {
        inside = arc.sweep;
      } else if (dd > 0.0) {
        const double c = (rad * rad + dd * dd - r * r) / (2.0 * rad * dd);
        if (c <= -1.0) {
          inside = arc.sweep;
        } else if (c < 1.0) {
          const double half = std::acos(c);
          const double psi = std::atan2(w.y, w.x);
          double a0 = std::fmod(psi - half - arc.start, kTwoPi);
          if (a0 < 0.0) a0 += kTwoPi;
          const double a1 = a0 + 2.0 * half;
          inside += std::max(0.0, std::min(a1, arc.sweep) - a0);
          inside += std::max(0.0, std::min(a1 - kTwoPi, arc.sweep) - std::max(a0 - kTwoPi, 0.0));
        }
      }
      len += inside * rad;
    }
  }
  return len;
}

}  // namespace cshrink
