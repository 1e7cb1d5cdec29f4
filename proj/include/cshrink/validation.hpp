#pragma once

// Self-check suite behind `cshrink validate`: raster-oracle agreement of the
// exact morphology, plus the structural invariants of the solver.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "cshrink/isoperimetric.hpp"
#include "cshrink/morphology.hpp"
#include "cshrink/random_sets.hpp"
#include "cshrink/raster.hpp"

namespace cshrink {

struct CheckResult {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // largest observed violation measure
  double bound = 0.0;  // pass iff worst <= bound
  int cases = 0;
};

struct ValidationOptions {
  std::uint64_t seed = 7;
  bool raster = true;
  bool invariants = true;
  int raster_sets = 8;
  double raster_h = 2e-3;  // cell size relative to the set diameter
  int invariant_cases = 200;
  double fault = 0.0;  // relative perturbation of exact values (test hook)
  unsigned threads = 1;
};

namespace detail {

inline CheckResult make_check(std::string name, double worst, double bound, int cases) {
  return {std::move(name), worst <= bound, worst, bound, cases};
}

template <class F>
void parallel_for(int n, unsigned threads, F&& body) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max(n, 1))));
  if (threads == 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = static_cast<int>(w); i < n; i += static_cast<int>(threads)) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// |raster − exact| / (5·h·per(exact)) for dilate, erode and opening, one
/// row per random set. Ratios ≤ 1 pass.
struct RasterAgreement {
  double dilate = 0.0, erode = 0.0, opening = 0.0;
};

inline RasterAgreement raster_agreement(const RoundedSet& s, double r, double rho, double h_rel, double fault = 0.0) {
  const double h = h_rel * s.diameter();
  const auto base = rasterize(s, h);
  auto ratio = [&](const RasterGrid& g, const RoundedSet& exact) {
    const double band = 5.0 * h * std::max(rounded_perimeter(exact), h);
    return std::abs(raster_area(g) - rounded_area(exact) * (1.0 + fault)) / band;
  };
  RasterAgreement out;
  out.dilate = ratio(raster_dilate(base, r), dilate(s, r));
  out.erode = ratio(raster_erode(base, r), erode(s, r));
  out.opening = ratio(raster_dilate(raster_erode(base, rho), rho), opening(s, rho));
  return out;
}

inline std::vector<CheckResult> run_validation(const ValidationOptions& opt) {
  std::vector<CheckResult> out;

  if (opt.raster && opt.raster_sets > 0) {
    SetSampler rng(opt.seed);
    struct Case {
      RoundedSet s;
      double r, rho;
    };
    std::vector<Case> cases;
    for (int i = 0; i < opt.raster_sets; ++i) {
      auto s = rng.rounded_set();
      const double d = s.diameter();
      cases.push_back({s, rng.uniform(0.01, 0.5) * d, rng.uniform(0.01, 0.5) * d});
    }
    std::vector<RasterAgreement> res(cases.size());
    detail::parallel_for(static_cast<int>(cases.size()), opt.threads, [&](int i) {
      res[i] = raster_agreement(cases[i].s, cases[i].r, cases[i].rho, opt.raster_h, opt.fault);
    });
    double wd = 0.0, we = 0.0, wo = 0.0;
    for (const auto& r : res) wd = std::max(wd, r.dilate), we = std::max(we, r.erode), wo = std::max(wo, r.opening);
    const int n = static_cast<int>(cases.size());
    out.push_back(detail::make_check("raster/dilate", wd, 1.0, n));
    out.push_back(detail::make_check("raster/erode", we, 1.0, n));
    out.push_back(detail::make_check("raster/opening", wo, 1.0, n));
  }

  if (opt.invariants && opt.invariant_cases > 0) {
    SetSampler rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    const int n = opt.invariant_cases;
    double steiner = 0.0, isoper = 0.0, gap = 0.0, idem = 0.0, incl = 0.0, local = 0.0, mono = 0.0, comm = 0.0;
    for (int i = 0; i < n; ++i) {
      const auto s = rng.rounded_set();
      const double d = s.diameter();
      const double r = rng.uniform(0.0, d);

      const double lhs = rounded_area(dilate(s, r)) * (1.0 + opt.fault);
      const double rhs = rounded_area(s) + r * rounded_perimeter(s) + kPi * r * r;
      steiner = std::max(steiner, std::abs(lhs - rhs) / rhs);

      isoper = std::max(isoper, 2.0 * std::sqrt(kPi * rounded_area(s)) - rounded_perimeter(s));
      gap = std::max(gap, duality_gap(s, r));

      const double rho = rng.uniform(0.01, 0.5) * d;
      if (const auto op = opening(s, rho); !op.empty()) {
        idem = std::max(idem, hausdorff(opening(op, rho), op));
        if (!contains(s, op, 1e-9)) incl = std::max(incl, 1.0);
      }

      const Point2 c{rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
      const double br = rng.uniform(0.01, 1.0);
      local = std::max(local, boundary_length_in_ball(s, c, br) - kTwoPi * br);

      const IsoperimetricSolver solver(s);
      const double area = rounded_area(s);
      double a1 = rng.uniform(0.0, area), a2 = rng.uniform(0.0, area);
      if (a1 > a2) std::swap(a1, a2);
      if (a1 > 0.0 && a2 > a1) {
        if (!contains(solver.solve(a2).set, solver.solve(a1).set, 1e-8)) mono = std::max(mono, 1.0);
      }

      const double a = rng.uniform(1e-3, 1.0) * area;
      const auto grown = dilate(solver.solve(a).set, r);
      const auto other = solve_tilde(dilate(s, r), rounded_area(grown)).set;
      comm = std::max(comm, hausdorff(grown, other));
    }
    out.push_back(detail::make_check("steiner-identity", steiner, 1e-12, n));
    out.push_back(detail::make_check("isoperimetric-inequality", isoper, 1e-12, n));
    out.push_back(detail::make_check("duality-gap", gap, 1e-9, n));
    out.push_back(detail::make_check("opening-idempotent", idem, 1e-9, n));
    out.push_back(detail::make_check("opening-inclusion", incl, 0.0, n));
    out.push_back(detail::make_check("local-perimeter-bound", local, 1e-9, n));
    out.push_back(detail::make_check("monotone-inclusion", mono, 0.0, n));
    out.push_back(detail::make_check("r-commutation", comm, 1e-8, n));
  }
  return out;
}

}  // namespace cshrink
