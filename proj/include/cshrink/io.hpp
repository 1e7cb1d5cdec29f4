#pragma once

// File formats: geometry JSON, CSV traces, JSON reports and SVG outlines.
// Numbers go through std::to_chars so output does not depend on the locale.

#include <charconv>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cshrink/evolution.hpp"
#include "cshrink/threshold.hpp"
#include "cshrink/validation.hpp"

namespace cshrink {

using json = nlohmann::json;

/// %.17g without locale.
inline std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

// ---- geometry JSON ----------------------------------------------------------

inline json geometry_to_json(const RoundedSet& s) {
  json kernel = json::array();
  for (const auto& p : s.kernel().vertices()) kernel.push_back({p.x, p.y});
  return {{"kernel", kernel}, {"radius", s.radius()}};
}

inline RoundedSet geometry_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kernel")) throw Error(ErrorCode::InvalidGeometry, "geometry needs a \"kernel\" array");
  const auto& k = j.at("kernel");
  if (!k.is_array() || k.empty()) throw Error(ErrorCode::InvalidGeometry, "kernel must be a non-empty array of [x, y]");
  std::vector<Point2> pts;
  for (const auto& p : k) {
    if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number()) {
      throw Error(ErrorCode::InvalidGeometry, "kernel vertices must be [x, y] pairs");
    }
    pts.push_back({p[0].get<double>(), p[1].get<double>()});
  }
  double r = 0.0;
  if (j.contains("radius")) {
    if (!j.at("radius").is_number()) throw Error(ErrorCode::InvalidGeometry, "radius must be a number");
    r = j.at("radius").get<double>();
  }
  return {ConvexPolygon(std::move(pts)), r};
}

// ---- reports ----------------------------------------------------------------

inline json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

inline json solution_to_json(const IsoperimetricSolution& s) {
  return {{"geometry", geometry_to_json(s.set)},
          {"regime", std::string(to_string(s.regime))},
          {"area", s.area},
          {"perimeter", s.perimeter},
          {"kappa", finite_or_null(s.max_curvature)},
          {"rho", s.rho}};
}

inline json threshold_to_json(const ThresholdReport& r) {
  return {{"M0", r.m0},
          {"bracket", {r.lo, r.hi}},
          {"iterations", r.iterations},
          {"T_dagger", r.t_dagger ? json(*r.t_dagger) : json(nullptr)}};
}

inline json validation_to_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  for (const auto& c : checks) {
    arr.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"bound", c.bound}, {"cases", c.cases}});
  }
  return arr;
}

// ---- CSV trace --------------------------------------------------------------

inline void write_trace_csv(std::ostream& os, const EvolutionTrace& tr, const std::vector<std::string>& extra_comments = {}) {
  os << "t,a,perimeter,regime,rho\n";
  for (const auto& s : tr.samples) {
    os << format_number(s.t) << ',' << format_number(s.a) << ',' << format_number(s.perimeter) << ','
       << to_string(s.regime) << ',' << format_number(s.rho) << '\n';
  }
  if (tr.t_star) os << "# T_star=" << format_number(*tr.t_star) << '\n';
  if (tr.t_dagger) os << "# T_dagger=" << format_number(*tr.t_dagger) << '\n';
  for (const auto& c : extra_comments) os << "# " << c << '\n';
}

// ---- SVG --------------------------------------------------------------------

/// Closed boundary path in world coordinates: kernel edges pushed out by
/// the radius, joined by circular arcs at the vertices.
inline std::string svg_path(const RoundedSet& s) {
  if (s.empty()) return {};
  const double r = s.radius();
  const auto& k = s.kernel();
  auto pt = [](Point2 p) { return format_number(p.x) + ' ' + format_number(p.y); };
  std::string d;
  if (k.is_point()) {
    if (r <= 0.0) return {};
    const Point2 c = k[0];
    const std::string rr = format_number(r);
    d = "M " + pt(c + Point2{r, 0.0}) + " A " + rr + ' ' + rr + " 0 1 1 " + pt(c - Point2{r, 0.0}) + " A " + rr + ' ' + rr +
        " 0 1 1 " + pt(c + Point2{r, 0.0}) + " Z";
    return d;
  }
  const auto edges = detail::kernel_edges(k);
  const auto arcs = detail::vertex_arcs(k);
  const std::string rr = format_number(r);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Point2 a = edges[i].from + edges[i].normal * r, b = edges[i].to + edges[i].normal * r;
    d += (i == 0 ? "M " : " L ") + pt(a) + " L " + pt(b);
    const auto& arc = arcs[(i + 1) % arcs.size()];
    if (r > 0.0 && arc.sweep > 0.0) {
      const Point2 end = arc.center + direction(arc.start + arc.sweep) * r;
      d += " A " + rr + ' ' + rr + " 0 " + (arc.sweep > kPi ? "1" : "0") + " 1 " + pt(end);
    }
  }
  return d + " Z";
}

struct SvgFrame {
  double t = 0.0;
  RoundedSet set;
};

/// One outline per frame over the domain outline; y points up.
inline void write_svg(std::ostream& os, const RoundedSet& domain, const std::vector<SvgFrame>& frames) {
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  auto grow = [&](const RoundedSet& s) {
    if (s.empty()) return;
    for (const auto& p : s.kernel().vertices()) {
      x0 = std::min(x0, p.x - s.radius()), x1 = std::max(x1, p.x + s.radius());
      y0 = std::min(y0, p.y - s.radius()), y1 = std::max(y1, p.y + s.radius());
    }
  };
  grow(domain);
  for (const auto& f : frames) grow(f.set);
  if (!(x0 <= x1)) x0 = y0 = -1.0, x1 = y1 = 1.0;
  const double pad = 0.05 * std::max({x1 - x0, y1 - y0, 1e-9});
  x0 -= pad, y0 -= pad, x1 += pad, y1 += pad;
  const double stroke = 0.003 * std::max(x1 - x0, y1 - y0);

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(x0) << ' ' << format_number(-y1) << ' '
     << format_number(x1 - x0) << ' ' << format_number(y1 - y0) << "\" width=\"600\" height=\""
     << static_cast<int>(std::lround(600.0 * (y1 - y0) / (x1 - x0))) << "\">\n";
  os << "<g transform=\"scale(1,-1)\" fill=\"none\" stroke-width=\"" << format_number(stroke) << "\">\n";
  os << "<path stroke=\"#999\" stroke-dasharray=\"" << format_number(4 * stroke) << "\" d=\"" << svg_path(domain) << "\"/>\n";
  for (const auto& f : frames) {
    const auto d = svg_path(f.set);
    if (d.empty()) continue;
    os << "<path stroke=\"#1f5fa8\" d=\"" << d << "\"><title>t=" << format_number(f.t) << "</title></path>\n";
  }
  os << "</g>\n</svg>\n";
}

}  // namespace cshrink
