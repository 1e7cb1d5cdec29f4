#pragma once

// Minimal-perimeter subsets of prescribed area inside a convex rounded set.
//
// For a domain Ω with inner radius R̄ and inscribed-center locus of half
// length ℓ*, the canonical minimizer of area a is
//   a ≤ πR̄²                    ball of radius √(a/π)
//   πR̄² < a < |Ω̂(Ω, R̄)|        stadium of radius R̄, kernel length L with 2R̄L + πR̄² = a
//   a ≥ |Ω̂(Ω, R̄)|              the opening Ω̂(Ω, ρ) with |Ω̂(Ω, ρ)| = a
// Balls and stadiums are centered at the centroid of Ω̂(Ω, R̄).
//
// The solver also answers the same questions for every dilation Ω^t, which
// shares the kernel of Ω and only differs in radius.

#include <cmath>
#include <string_view>

#include "cshrink/geometry.hpp"
#include "cshrink/morphology.hpp"

namespace cshrink {

enum class Regime { Ball, Stadium, Opening };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::Ball: return "Ball";
    case Regime::Stadium: return "Stadium";
    case Regime::Opening: return "Opening";
  }
  return "Unknown";
}

struct IsoperimetricSolution {
  Regime regime = Regime::Opening;
  RoundedSet set;
  double area = 0.0;
  double perimeter = 0.0;
  double max_curvature = 0.0;  // 1 / rho; +inf for a sharp-cornered full domain
  double rho = 0.0;
};

namespace detail {

inline constexpr double kRegimeTol = 1e-12;

// Σ (2 tan(θ/2) − θ) over the exterior angles θ of a genuine polygon.
inline double corner_turning(const ConvexPolygon& k) {
  double sum = 0.0;
  for (const auto& arc : vertex_arcs(k)) sum += 2.0 * std::tan(0.5 * arc.sweep) - arc.sweep;
  return sum;
}

}  // namespace detail

class IsoperimetricSolver {
 public:
  explicit IsoperimetricSolver(const RoundedSet& domain) : domain_(domain), eroder_(domain.kernel()) {
    if (domain.empty()) throw Error(ErrorCode::EmptySet, "isoperimetric domain is empty");
    locus_ = inner_ball_locus(eroder_, domain.radius());
    kernel_area_ = polygon_area(domain.kernel());
    kernel_perimeter_ = polygon_perimeter(domain.kernel());
    ball_center_ = rounded_centroid(RoundedSet(eroder_.deepest(), locus_.radius));
  }

  const RoundedSet& domain() const { return domain_; }
  const KernelErosion& eroder() const { return eroder_; }
  const InnerBallLocus& locus() const { return locus_; }
  Point2 ball_center() const { return ball_center_; }

  // Quantities of the dilated domain Ω^t.
  double radius(double t = 0.0) const { return domain_.radius() + t; }
  double inner_radius(double t = 0.0) const { return locus_.radius + t; }
  double full_area(double t = 0.0) const {
    const double s = radius(t);
    return kernel_area_ + s * kernel_perimeter_ + kPi * s * s;
  }
  double full_perimeter(double t = 0.0) const { return kernel_perimeter_ + kTwoPi * radius(t); }
  double ball_limit(double t = 0.0) const {
    const double r = inner_radius(t);
    return kPi * r * r;
  }
  /// |Ω̂(Ω^t, R̄(t))|: area of the stadium spanned by the inscribed-center locus.
  double stadium_limit(double t = 0.0) const {
    const double r = inner_radius(t);
    return 4.0 * r * locus_.half_length + kPi * r * r;
  }
  double area_tolerance(double t = 0.0) const { return detail::kRegimeTol * full_area(t); }

  /// Area of Ω̂(Ω^t, ρ); equals the full area for ρ ≤ radius(t).
  double opening_area(double rho, double t = 0.0) const {
    const double d = rho - radius(t);
    if (d <= 0.0) return full_area(t);
    const auto k = eroder_(d);
    if (k.empty()) return 0.0;
    return polygon_area(k) + rho * polygon_perimeter(k) + kPi * rho * rho;
  }

  /// Regime for area a; boundary values go to the higher regime.
  Regime regime(double a, double t = 0.0) const {
    const double tol = area_tolerance(t);
    if (a < ball_limit(t) - tol) return Regime::Ball;
    if (locus_.half_length > 0.0 && a < stadium_limit(t) - tol) return Regime::Stadium;
    return Regime::Opening;
  }

  /// ρ with |Ω̂(Ω^t, ρ)| = a, by Newton iteration safeguarded by a bisection
  /// bracket on (radius(t), R̄(t)]. On the plateau ρ ≤ radius(t) the largest
  /// ρ is returned.
  double invert_opening_area(double a, double t = 0.0) const {
    const double s = radius(t), rbar = inner_radius(t);
    const double full = full_area(t), tol = area_tolerance(t);
    if (!(a <= full + tol) || !(a >= stadium_limit(t) - tol)) {
      throw Error(ErrorCode::OutOfRegime, "area outside the opening regime");
    }
    if (a >= full) return s;
    if (a <= stadium_limit(t)) return rbar;

    double lo = s, hi = rbar, rho = 0.5 * (s + rbar);
    for (int it = 0; it < 200; ++it) {
      const auto k = eroder_(rho - s);
      const double g = k.empty() ? 0.0 : polygon_area(k) + rho * polygon_perimeter(k) + kPi * rho * rho;
      const double f = g - a;
      if (f == 0.0) return rho;
      (f > 0.0 ? lo : hi) = rho;
      double next = 0.5 * (lo + hi);
      if (k.is_polygon()) {
        const double newton = rho + f / (rho * detail::corner_turning(k));
        if (newton > lo && newton < hi) next = newton;
      }
      if (std::abs(next - rho) <= 1e-15 * rbar || hi - lo <= 1e-15 * rbar) return next;
      rho = next;
    }
    return rho;
  }

  IsoperimetricSolution solve(double a, double t = 0.0) const {
    const double full = full_area(t);
    if (!(a > 0.0)) throw Error(ErrorCode::NonpositiveArea, "area must be positive");
    if (a > full + area_tolerance(t)) throw Error(ErrorCode::AreaExceedsDomain, "area exceeds the domain");
    a = std::min(a, full);

    IsoperimetricSolution sol;
    sol.area = a;
    sol.regime = regime(a, t);
    const double rbar = inner_radius(t);
    switch (sol.regime) {
      case Regime::Ball:
        sol.rho = std::sqrt(a / kPi);
        sol.set = RoundedSet::ball(ball_center_, sol.rho);
        break;
      case Regime::Stadium: {
        const double len = std::clamp((a - kPi * rbar * rbar) / (2.0 * rbar), 0.0, 2.0 * locus_.half_length);
        const Point2 half = locus_.direction * (0.5 * len);
        sol.rho = rbar;
        sol.set = RoundedSet::stadium(ball_center_ - half, ball_center_ + half, rbar);
        break;
      }
      case Regime::Opening: {
        sol.rho = invert_opening_area(a, t);
        const double s = radius(t);
        sol.set = sol.rho <= s ? RoundedSet(domain_.kernel(), s) : RoundedSet(eroder_(sol.rho - s), sol.rho);
        break;
      }
    }
    sol.perimeter = rounded_perimeter(sol.set);
    sol.max_curvature = sol.rho > 0.0 ? 1.0 / sol.rho : INFINITY;
    return sol;
  }

  double perimeter(double a, double t = 0.0) const { return solve(a, t).perimeter; }

  /// −d/dρ of the opening perimeter: Σ (2 tan(θ/2) − θ) over the free arcs.
  double free_arc_turning(double rho, double t = 0.0) const {
    if (!(rho > radius(t)) || !(rho < inner_radius(t))) {
      throw Error(ErrorCode::OutOfRegime, "rho must lie strictly between the domain radius and the inner radius");
    }
    const auto k = eroder_(rho - radius(t));
    if (!k.is_polygon()) throw Error(ErrorCode::OutOfRegime, "opening has no free corners at this rho");
    return detail::corner_turning(k);
  }

 private:
  RoundedSet domain_;
  KernelErosion eroder_;
  InnerBallLocus locus_;
  double kernel_area_ = 0.0;
  double kernel_perimeter_ = 0.0;
  Point2 ball_center_;
};

inline IsoperimetricSolution solve_tilde(const RoundedSet& domain, double a) {
  return IsoperimetricSolver(domain).solve(a);
}

inline double invert_opening_area(const RoundedSet& domain, double a) {
  return IsoperimetricSolver(domain).invert_opening_area(a);
}

inline double perimeter_of_area(const RoundedSet& domain, double a) {
  return IsoperimetricSolver(domain).perimeter(a);
}

inline double free_arc_turning(const RoundedSet& domain, double rho) {
  return IsoperimetricSolver(domain).free_arc_turning(rho);
}

}  // namespace cshrink
