#pragma once

// Dilation, erosion and opening by disks, plus the maximal inscribed ball.

#include <cmath>
#include <vector>

#include "cshrink/geometry.hpp"

namespace cshrink {

/// Centers of maximal inscribed balls: {center + h·direction : |h| ≤ half_length}.
struct InnerBallLocus {
  double radius = 0.0;
  Point2 center;
  Point2 direction{1.0, 0.0};
  double half_length = 0.0;

  ConvexPolygon centers() const {
    if (half_length <= 0.0) return ConvexPolygon::point(center);
    return ConvexPolygon::segment(center - direction * half_length, center + direction * half_length);
  }
};

namespace detail {

inline constexpr double kSnapTol = 1e-12;

struct HalfPlane {
  Point2 normal;  // outward unit normal
  double offset;  // n·x ≤ offset
};

inline std::vector<HalfPlane> edge_halfplanes(const ConvexPolygon& k) {
  std::vector<HalfPlane> out;
  for (const auto& e : kernel_edges(k)) out.push_back({e.normal, dot(e.normal, e.from)});
  return out;
}

// One Sutherland–Hodgman pass against n·x ≤ c.
inline std::vector<Point2> clip(const std::vector<Point2>& poly, Point2 n, double c) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  for (std::size_t i = 0, m = poly.size(); i < m; ++i) {
    const Point2 p = poly[i], q = poly[(i + 1) % m];
    const double dp = dot(n, p) - c, dq = dot(n, q) - c;
    if (dp <= 0.0) out.push_back(p);
    if ((dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0)) out.push_back(p + (q - p) * (dp / (dp - dq)));
  }
  return out;
}

struct DeepestSet {
  double depth = 0.0;
  ConvexPolygon locus;
};

// Chebyshev center LP  max r  s.t.  n_i·x + r ≤ c_i, solved by enumerating
// its vertices (triples of tight constraints). The optimal face is a point or
// a segment; both ends of a segment are LP vertices.
inline DeepestSet max_inscribed(const std::vector<HalfPlane>& hp, double scale) {
  const double feas_tol = 1e-11 * scale;
  const std::size_t n = hp.size();
  struct Candidate {
    double r;
    Point2 x;
  };
  std::vector<Candidate> cand;
  double best = -INFINITY;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const Point2 a = hp[i].normal, b = hp[j].normal, c = hp[k].normal;
        const double det = a.x * (b.y - c.y) - a.y * (b.x - c.x) + (b.x * c.y - c.x * b.y);
        if (std::abs(det) < 1e-12) continue;
        const double ca = hp[i].offset, cb = hp[j].offset, cc = hp[k].offset;
        const double dx = ca * (b.y - c.y) - a.y * (cb - cc) + (cb * c.y - cc * b.y);
        const double dy = a.x * (cb - cc) - ca * (b.x - c.x) + (b.x * cc - c.x * cb);
        const double dr = a.x * (b.y * cc - c.y * cb) - a.y * (b.x * cc - c.x * cb) + ca * (b.x * c.y - c.x * b.y);
        const Candidate cd{dr / det, {dx / det, dy / det}};
        if (cd.r < best - feas_tol) continue;
        bool feasible = true;
        for (const auto& h : hp) {
          if (dot(h.normal, cd.x) + cd.r > h.offset + feas_tol) {
            feasible = false;
            break;
          }
        }
        if (!feasible) continue;
        best = std::max(best, cd.r);
        cand.push_back(cd);
      }
    }
  }
  if (cand.empty()) throw Error(ErrorCode::InvalidGeometry, "inscribed ball LP has no vertex");

  std::vector<Point2> opt;
  for (const auto& c : cand)
    if (c.r >= best - feas_tol) opt.push_back(c.x);
  Point2 p = opt[0], q = opt[0];
  double far = 0.0;
  for (std::size_t i = 0; i < opt.size(); ++i) {
    for (std::size_t j = i + 1; j < opt.size(); ++j) {
      if (const double d = distance(opt[i], opt[j]); d > far) far = d, p = opt[i], q = opt[j];
    }
  }
  if (far <= feas_tol) return {best, ConvexPolygon::point(p)};
  return {best, ConvexPolygon::segment(p, q)};
}

}  // namespace detail

/// Inward offsets of a fixed kernel polygon. The deepest erosion (the
/// inscribed-center locus) is computed once; depths within the snap tolerance
/// of it return the exact degenerate locus.
class KernelErosion {
 public:
  explicit KernelErosion(ConvexPolygon kernel) : kernel_(std::move(kernel)) {
    scale_ = detail::bbox_diagonal(kernel_.vertices());
    if (kernel_.is_polygon()) {
      halfplanes_ = detail::edge_halfplanes(kernel_);
      auto deepest = detail::max_inscribed(halfplanes_, scale_);
      depth_ = deepest.depth;
      deepest_ = std::move(deepest.locus);
    } else {
      deepest_ = kernel_;
    }
  }

  const ConvexPolygon& kernel() const { return kernel_; }
  double max_depth() const { return depth_; }
  const ConvexPolygon& deepest() const { return deepest_; }
  double snap_tolerance() const { return detail::kSnapTol * scale_; }

  /// {x : B_d(x) ⊆ kernel}; may be a polygon, segment, point or ∅.
  ConvexPolygon operator()(double d) const {
    if (kernel_.empty()) return {};
    if (d <= 0.0) return kernel_;
    const double tol = snap_tolerance();
    if (d > depth_ + tol) return {};
    if (d >= depth_ - tol) return deepest_;
    std::vector<Point2> poly = kernel_.vertices();
    for (const auto& h : halfplanes_) poly = detail::clip(poly, h.normal, h.offset - d);
    // clipped vertices can be reflex by a rounding error where an edge is
    // about to vanish; the hull is the intended set
    return ConvexPolygon::hull(std::move(poly));
  }

 private:
  ConvexPolygon kernel_;
  std::vector<detail::HalfPlane> halfplanes_;
  double scale_ = 0.0;
  double depth_ = 0.0;
  ConvexPolygon deepest_;
};

inline ConvexPolygon polygon_erode(const ConvexPolygon& p, double d) { return KernelErosion(p)(d); }

inline RoundedSet dilate(const RoundedSet& s, double r) {
  if (s.empty()) return {};
  return {s.kernel(), s.radius() + r};
}

/// {x : B_r(x) ⊆ S}.
inline RoundedSet erode(const RoundedSet& s, double r) {
  if (s.empty()) return {};
  if (r <= s.radius()) return {s.kernel(), s.radius() - r};
  auto k = polygon_erode(s.kernel(), r - s.radius());
  if (k.empty()) return {};
  return {std::move(k), 0.0};
}

/// Union of all ρ-balls contained in S.
inline RoundedSet opening(const RoundedSet& s, double rho) {
  if (s.empty()) return {};
  if (rho <= s.radius()) return s;
  auto k = polygon_erode(s.kernel(), rho - s.radius());
  if (k.empty()) return {};
  return {std::move(k), rho};
}

inline InnerBallLocus inner_ball_locus(const KernelErosion& eroder, double radius) {
  InnerBallLocus loc;
  loc.radius = eroder.max_depth() + radius;
  const auto& c = eroder.deepest();
  if (c.is_segment()) {
    const Point2 d = c[1] - c[0];
    const double len = norm(d);
    loc.center = 0.5 * (c[0] + c[1]);
    loc.direction = d / len;
    loc.half_length = 0.5 * len;
  } else {
    loc.center = c[0];
  }
  return loc;
}

inline InnerBallLocus inner_radius(const RoundedSet& s) {
  if (s.empty()) throw Error(ErrorCode::EmptySet, "inner radius of empty set");
  return inner_ball_locus(KernelErosion(s.kernel()), s.radius());
}

/// Hausdorff distance between E and (E^r)^{-r}.
inline double duality_gap(const RoundedSet& e, double r) {
  if (e.empty()) return 0.0;
  const auto back = erode(dilate(e, r), r);
  if (back.empty()) return INFINITY;
  return hausdorff(e, back);
}

}  // namespace cshrink
