#pragma once

// Pixel-grid counterparts of the exact set operations, used as an independent
// oracle. Morphology goes through the exact squared Euclidean distance
// transform of Felzenszwalb & Huttenlocher.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "cshrink/geometry.hpp"

namespace cshrink {

struct RasterGrid {
  Point2 origin;  // lower-left corner of cell (0, 0)
  double h = 1.0;
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> cells;  // row-major, 1 = occupied

  bool at(int i, int j) const { return cells[static_cast<std::size_t>(j) * width + i] != 0; }
  Point2 center(int i, int j) const { return origin + Point2{(i + 0.5) * h, (j + 0.5) * h}; }
  std::size_t occupied() const {
    std::size_t n = 0;
    for (auto c : cells) n += c;
    return n;
  }
};

inline double raster_area(const RasterGrid& g) { return static_cast<double>(g.occupied()) * g.h * g.h; }

namespace detail {

// x-extent of a convex polygon (given as points in order) on the line y = const.
inline std::optional<std::pair<double, double>> row_extent(std::span<const Point2> poly, double y) {
  double lo = INFINITY, hi = -INFINITY;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    const Point2 p = poly[i], q = poly[(i + 1) % n];
    if (p.y == y) lo = std::min(lo, p.x), hi = std::max(hi, p.x);
    if ((p.y - y) * (q.y - y) < 0.0) {
      const double x = p.x + (y - p.y) * (q.x - p.x) / (q.y - p.y);
      lo = std::min(lo, x), hi = std::max(hi, x);
    }
  }
  if (lo > hi) return std::nullopt;
  return std::pair{lo, hi};
}

inline void edt_1d(const double* f, double* d, int n, int* v, double* z) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] == kInf) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -kInf;
      z[1] = kInf;
      continue;
    }
    while (true) {
      const int p = v[k];
      const double s = ((f[q] + double(q) * q) - (f[p] + double(p) * p)) / (2.0 * (q - p));
      if (s <= z[k]) {
        --k;
        continue;
      }
      ++k;
      v[k] = q;
      z[k] = s;
      z[k + 1] = kInf;
      break;
    }
  }
  if (k < 0) {
    for (int q = 0; q < n; ++q) d[q] = kInf;
    return;
  }
  k = 0;
  for (int q = 0; q < n; ++q) {
    while (z[k + 1] < q) ++k;
    const double dq = q - v[k];
    d[q] = dq * dq + f[v[k]];
  }
}

// Squared distance (in cells) from every cell center to the nearest cell
// where `feature` is set.
inline std::vector<double> squared_edt(const RasterGrid& g, bool feature) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const int w = g.width, h = g.height, n = std::max(w, h);
  std::vector<double> dist(g.cells.size());
  for (std::size_t i = 0; i < dist.size(); ++i) dist[i] = (g.cells[i] != 0) == feature ? 0.0 : kInf;
  std::vector<double> f(n), d(n), z(n + 1);
  std::vector<int> v(n);
  for (int i = 0; i < w; ++i) {
    for (int j = 0; j < h; ++j) f[j] = dist[static_cast<std::size_t>(j) * w + i];
    edt_1d(f.data(), d.data(), h, v.data(), z.data());
    for (int j = 0; j < h; ++j) dist[static_cast<std::size_t>(j) * w + i] = d[j];
  }
  for (int j = 0; j < h; ++j) {
    double* row = dist.data() + static_cast<std::size_t>(j) * w;
    std::copy(row, row + w, f.begin());
    edt_1d(f.data(), d.data(), w, v.data(), z.data());
    std::copy(d.begin(), d.begin() + w, row);
  }
  return dist;
}

inline RasterGrid padded(const RasterGrid& g, int pad) {
  RasterGrid out;
  out.h = g.h;
  out.origin = g.origin - Point2{pad * g.h, pad * g.h};
  out.width = g.width + 2 * pad;
  out.height = g.height + 2 * pad;
  out.cells.assign(static_cast<std::size_t>(out.width) * out.height, 0);
  for (int j = 0; j < g.height; ++j)
    for (int i = 0; i < g.width; ++i)
      out.cells[static_cast<std::size_t>(j + pad) * out.width + (i + pad)] = g.cells[static_cast<std::size_t>(j) * g.width + i];
  return out;
}

}  // namespace detail

/// Marks every cell whose center lies in S. The grid keeps at least a 2h
/// margin (plus `pad`) around S.
inline RasterGrid rasterize(const RoundedSet& s, double h, double pad = 0.0) {
  if (!(h > 0.0)) throw Error(ErrorCode::BadConfig, "cell size must be positive");
  RasterGrid g;
  g.h = h;
  if (s.empty()) return g;
  const auto& kv = s.kernel().vertices();
  const double r = s.radius();
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : kv) x0 = std::min(x0, p.x), x1 = std::max(x1, p.x), y0 = std::min(y0, p.y), y1 = std::max(y1, p.y);
  const double margin = r + 2.0 * h + pad;
  g.origin = {x0 - margin, y0 - margin};
  g.width = static_cast<int>(std::ceil((x1 - x0 + 2.0 * margin) / h));
  g.height = static_cast<int>(std::ceil((y1 - y0 + 2.0 * margin) / h));
  g.cells.assign(static_cast<std::size_t>(g.width) * g.height, 0);

  // S is the union of the kernel, one rectangle per edge and one disk per vertex.
  std::vector<std::vector<Point2>> pieces;
  if (s.kernel().is_polygon()) pieces.push_back(kv);
  if (r > 0.0) {
    for (const auto& e : detail::kernel_edges(s.kernel())) {
      pieces.push_back({e.from, e.to, e.to + e.normal * r, e.from + e.normal * r});
    }
  }
  for (int j = 0; j < g.height; ++j) {
    const double y = g.origin.y + (j + 0.5) * h;
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& piece : pieces) {
      if (auto ext = detail::row_extent(piece, y)) lo = std::min(lo, ext->first), hi = std::max(hi, ext->second);
    }
    if (r > 0.0) {
      for (const auto& p : kv) {
        const double dy = y - p.y;
        if (std::abs(dy) <= r) {
          const double w = std::sqrt(r * r - dy * dy);
          lo = std::min(lo, p.x - w), hi = std::max(hi, p.x + w);
        }
      }
    }
    if (lo > hi) continue;
    const int i0 = std::max(0, static_cast<int>(std::ceil((lo - g.origin.x) / h - 0.5)));
    const int i1 = std::min(g.width - 1, static_cast<int>(std::floor((hi - g.origin.x) / h - 0.5)));
    for (int i = i0; i <= i1; ++i) g.cells[static_cast<std::size_t>(j) * g.width + i] = 1;
  }
  return g;
}

// Distances are measured between cell centers; the set boundary sits half a
// cell beyond the last occupied center, hence the 0.5 shift in both
// thresholds.

/// Cells within distance r of the occupied region; the grid grows to fit.
inline RasterGrid raster_dilate(const RasterGrid& g, double r) {
  const int pad = static_cast<int>(std::ceil(r / g.h)) + 2;
  RasterGrid out = detail::padded(g, pad);
  const auto dist = detail::squared_edt(out, true);
  const double lim = r / g.h + 0.5;
  for (std::size_t i = 0; i < dist.size(); ++i) out.cells[i] = dist[i] <= lim * lim ? 1 : 0;
  return out;
}

/// Cells whose distance to the unoccupied region is at least r.
inline RasterGrid raster_erode(const RasterGrid& g, double r) {
  RasterGrid out = detail::padded(g, 1);
  const auto dist = detail::squared_edt(out, false);
  const double lim = r / g.h + 0.5;
  for (std::size_t i = 0; i < dist.size(); ++i) out.cells[i] = out.cells[i] && dist[i] >= lim * lim ? 1 : 0;
  return out;
}

/// Binary PGM, one byte per cell, top row first.
inline void write_pgm(const RasterGrid& g, std::ostream& os) {
  os << "P5\n" << g.width << ' ' << g.height << "\n255\n";
  for (int j = g.height - 1; j >= 0; --j)
    for (int i = 0; i < g.width; ++i) os.put(g.at(i, j) ? static_cast<char>(255) : static_cast<char>(0));
}

}  // namespace cshrink
