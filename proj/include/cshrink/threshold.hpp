#pragma once

// Long-run outcome of the optimal strategy and the critical budget M₀.
//
// Growth is detected with the isoperimetric bound da/dt ≥ 2√(πa) − M: once
// 2√(πa) > M the area increases without bound. Extinction is a finite T*.

#include <cmath>
#include <optional>
#include <string_view>

#include "cshrink/evolution.hpp"

namespace cshrink {

enum class OutcomeKind { Extinct, Grows, Undetermined };

constexpr std::string_view to_string(OutcomeKind k) {
  switch (k) {
    case OutcomeKind::Extinct: return "Extinct";
    case OutcomeKind::Grows: return "Grows";
    case OutcomeKind::Undetermined: return "Undetermined";
  }
  return "Unknown";
}

struct Outcome {
  OutcomeKind kind = OutcomeKind::Undetermined;
  double time = 0.0;  // T*, escape time, or the horizon reached
  EvolutionTrace trace;
};

inline constexpr double kGrowthMargin = 1e-9;

inline Outcome classify(const RoundedSet& omega0, double budget, double horizon, double dt) {
  SimulationOptions opts;
  opts.stop = [budget](const TraceSample& s) {
    return 2.0 * std::sqrt(kPi * s.a) > budget * (1.0 + kGrowthMargin);
  };
  Outcome out;
  out.trace = simulate(omega0, budget, horizon, dt, opts);
  if (out.trace.t_star) {
    out.kind = OutcomeKind::Extinct;
    out.time = *out.trace.t_star;
  } else if (out.trace.stopped_early) {
    out.kind = OutcomeKind::Grows;
    out.time = out.trace.end_time();
  } else {
    out.time = out.trace.end_time();
  }
  return out;
}

struct ThresholdReport {
  double m0 = 0.0;
  double lo = 0.0;  // largest budget seen to grow
  double hi = 0.0;  // smallest budget seen to go extinct
  int iterations = 0;
  int undetermined = 0;  // runs that stayed undetermined at the horizon
  int trend_resolved = 0;  // ... and were still undetermined at twice the horizon
  std::optional<double> t_dagger;  // ball time of the trace at m0
};

namespace detail {

// true: extinct side of the threshold.
inline bool extinct_side(const RoundedSet& omega0, double budget, double horizon, double dt, ThresholdReport& rep) {
  auto out = classify(omega0, budget, horizon, dt);
  if (out.kind == OutcomeKind::Undetermined) {
    ++rep.undetermined;
    out = classify(omega0, budget, 2.0 * horizon, dt);
    if (out.kind == OutcomeKind::Undetermined) {
      ++rep.trend_resolved;
      return out.trace.samples.back().rate < 0.0;
    }
  }
  return out.kind == OutcomeKind::Extinct;
}

}  // namespace detail

/// Bisection for M₀ between a growing and an extinct budget.
inline ThresholdReport find_m0(const RoundedSet& omega0, double tol, double horizon, double dt) {
  if (!(tol > 0.0)) throw Error(ErrorCode::BadConfig, "tol must be positive");
  if (omega0.empty() || rounded_area(omega0) <= 0.0) throw Error(ErrorCode::DegenerateDomain, "domain has zero area");

  ThresholdReport rep;
  rep.lo = 1e-6;
  if (classify(omega0, rep.lo, horizon, dt).kind != OutcomeKind::Grows) {
    throw Error(ErrorCode::DegenerateDomain, "no growing budget found at M = 1e-6");
  }
  rep.hi = 2.0 * std::sqrt(kPi * rounded_area(omega0)) + 1.0;
  for (int k = 0; !detail::extinct_side(omega0, rep.hi, horizon, dt, rep); ++k) {
    if (k == 60) throw Error(ErrorCode::DegenerateDomain, "no extinct budget found");
    rep.lo = rep.hi;
    rep.hi *= 2.0;
  }
  while (rep.hi - rep.lo > tol) {
    const double mid = 0.5 * (rep.lo + rep.hi);
    (detail::extinct_side(omega0, mid, horizon, dt, rep) ? rep.hi : rep.lo) = mid;
    ++rep.iterations;
  }
  rep.m0 = 0.5 * (rep.lo + rep.hi);
  rep.t_dagger = simulate(omega0, rep.m0, horizon, dt).t_dagger;
  return rep;
}

inline constexpr double kCriticalBallTol = 1e-2;

/// Ball time of a near-critical trace. The trace counts as critical when the
/// ball reached at T† is within 1% of the stationary radius M/2π.
inline double ball_time_at_m0(const RoundedSet& omega0, double budget, double horizon, double dt) {
  if (!(budget > 0.0)) throw Error(ErrorCode::BadConfig, "budget must be positive");
  const auto tr = simulate(omega0, budget, horizon, dt);
  if (!tr.t_dagger) throw Error(ErrorCode::NotCritical, "the set never becomes a ball");
  const double a = interpolate_area(tr, *tr.t_dagger);
  if (std::abs(2.0 * std::sqrt(kPi * a) / budget - 1.0) > kCriticalBallTol) {
    throw Error(ErrorCode::NotCritical, "ball reached at T-dagger is far from stationary");
  }
  return *tr.t_dagger;
}

}  // namespace cshrink
