#pragma once

// Optimal shrinking strategy A(t) = Ω̃(Ω₀ᵗ, a(t)) with
//     da/dt = per(Ω̃(Ω₀ᵗ, a)) − M,   a(0) = |Ω₀|.
//
// The integrator advances the deficit e(t) = |Ω₀ᵗ| − a(t) with classical RK4.
// The deficit formulation keeps the uncontrolled solution a = |Ω₀ᵗ| exact,
// since the rate is not Lipschitz at the domain boundary a = |Ω₀ᵗ| when the
// domain has sharp corners. Steps are split at regime changes so that no RK4
// step straddles a kink of the rate. Once the set is a shrinking ball the
// remaining evolution is autonomous and is evaluated in closed form, which
// also gives the extinction time exactly.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "cshrink/isoperimetric.hpp"

namespace cshrink {

struct TraceSample {
  double t = 0.0;
  double a = 0.0;
  double perimeter = 0.0;
  Regime regime = Regime::Opening;
  double rho = 0.0;
  double rate = 0.0;  // da/dt
};

struct EvolutionTrace {
  RoundedSet initial;
  double budget = 0.0;
  double horizon = 0.0;
  double dt = 0.0;
  std::vector<TraceSample> samples;
  std::optional<double> t_star;
  std::optional<double> t_dagger;
  bool stopped_early = false;

  double end_time() const { return samples.empty() ? 0.0 : samples.back().t; }
};

struct SimulationOptions {
  /// Called on every committed sample; returning true ends the run.
  std::function<bool(const TraceSample&)> stop;
  double event_tol = 1e-10;
  bool analytic_ball_tail = true;
};

inline double default_time_step(const RoundedSet& domain) { return 1e-3 * std::max(1.0, domain.diameter()); }

/// da/dt at area a for the domain dilated by t.
inline double area_rate(const RoundedSet& omega0, double t, double a, double budget) {
  return IsoperimetricSolver(omega0).perimeter(a, t) - budget;
}

namespace detail {

class AreaFlow {
 public:
  AreaFlow(const IsoperimetricSolver& solver, double budget, double base_step)
      : s_(solver), m_(budget), base_step_(base_step) {}

  double area(double t, double e) const { return s_.full_area(t) - e; }

  double perimeter(double t, double a) const {
    if (a <= 0.0) return 0.0;
    if (a >= s_.full_area(t)) return s_.full_perimeter(t);
    return s_.perimeter(a, t);
  }

  double deficit_rate(double t, double e) const {
    return s_.full_perimeter(t) - perimeter(t, area(t, e)) + m_;
  }

  // Starting from the full domain, corners open up with ρ − s ~ √t, so e(t)
  // carries a t^{3/2} term that caps RK4 in t at order 1.5. In σ = √t the
  // solution is smooth; steps are taken there, with σ-substeps no longer
  // than the base step (only the first few intervals need more than one).
  double advance(double t, double e, double h) const {
    const double s0 = std::sqrt(t), s1 = std::sqrt(t + h);
    const int n = std::max(1, static_cast<int>(std::ceil((s1 - s0) / base_step_)));
    const double hs = (s1 - s0) / n;
    auto f = [this](double sig, double y) { return 2.0 * sig * deficit_rate(sig * sig, y); };
    for (int i = 0; i < n; ++i) {
      const double sig = s0 + i * hs;
      const double k1 = f(sig, e);
      const double k2 = f(sig + 0.5 * hs, e + 0.5 * hs * k1);
      const double k3 = f(sig + 0.5 * hs, e + 0.5 * hs * k2);
      const double k4 = f(sig + hs, e + hs * k3);
      e += hs * (k1 + 2.0 * k2 + 2.0 * k3 + k4) / 6.0;
    }
    return e;
  }

  Regime regime(double t, double e) const {
    const double a = area(t, e);
    return a <= 0.0 ? Regime::Ball : s_.regime(std::min(a, s_.full_area(t)), t);
  }

  TraceSample sample(double t, double e) const {
    const double a = std::min(area(t, e), s_.full_area(t));
    if (a <= 0.0) return {t, 0.0, 0.0, Regime::Ball, 0.0, -m_};
    const auto sol = s_.solve(a, t);
    return {t, a, sol.perimeter, sol.regime, sol.rho, sol.perimeter - m_};
  }

 private:
  const IsoperimetricSolver& s_;
  double m_;
  double base_step_;
};

// Ball regime: r' = 1 − c/r with c = M/2π. Time to go from r0 to r, with r
// and r0 on the same side of c.
inline double ball_elapsed(double r0, double r, double c) {
  return (r - r0) + c * std::log1p((r0 - r) / (c - r0));
}

}  // namespace detail

inline EvolutionTrace simulate(const RoundedSet& omega0, double budget, double horizon, double dt,
                               const SimulationOptions& opts = {}) {
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw Error(ErrorCode::BadConfig, "budget must be finite and >= 0");
  if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error(ErrorCode::BadConfig, "horizon must be positive");
  if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::BadConfig, "dt must be positive");
  if (omega0.empty()) throw Error(ErrorCode::BadConfig, "initial set is empty");

  const IsoperimetricSolver solver(omega0);
  const detail::AreaFlow flow(solver, budget, dt);

  EvolutionTrace tr;
  tr.initial = omega0;
  tr.budget = budget;
  tr.horizon = horizon;
  tr.dt = dt;

  auto push = [&](const TraceSample& s) {
    tr.samples.push_back(s);
    if (!tr.t_dagger && s.a <= solver.ball_limit(s.t) + solver.area_tolerance(s.t)) tr.t_dagger = s.t;
  };

  if (solver.full_area() <= 0.0) {
    push({0.0, 0.0, 0.0, Regime::Ball, 0.0, -budget});
    tr.t_star = 0.0;
    return tr;
  }

  double t = 0.0, e = 0.0;
  long step = 0;
  push(flow.sample(t, e));

  while (true) {
    const TraceSample cur = tr.samples.back();
    if (opts.stop && opts.stop(cur)) {
      tr.stopped_early = true;
      break;
    }
    if (t >= horizon) break;

    // Once A(t) is a ball it stays one (r' = 1 − c/r < 1 = R̄'), so the rest
    // is closed form. Starting it at T† rather than at the first Ball sample
    // matters: the equilibrium r = c is unstable and amplifies the error of a
    // single integration step like e^{t/c}.
    const double c = budget / kTwoPi;
    if (opts.analytic_ball_tail && tr.t_dagger && cur.a > 0.0) {
      const double r0 = std::sqrt(cur.a / kPi), t0 = t;
      const bool stationary = std::abs(r0 - c) <= 1e-12 * c;
      const bool shrinking = !stationary && r0 < c;
      const double t_star = shrinking ? t0 + detail::ball_elapsed(r0, 0.0, c) : INFINITY;
      auto radius_at = [&](double tk) {
        if (stationary) return r0;
        // elapsed time is monotone in r; r moves by less than tk − t0
        double lo = shrinking ? 0.0 : r0, hi = shrinking ? r0 : r0 + (tk - t0);
        for (int it = 0; it < 200 && hi - lo > 1e-17 * r0; ++it) {
          const double mid = 0.5 * (lo + hi);
          const double el = detail::ball_elapsed(r0, mid, c);
          ((shrinking ? el > tk - t0 : el < tk - t0) ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
      };
      bool stopped = false;
      for (long k = step + 1;; ++k) {
        const double tk = std::min(static_cast<double>(k) * dt, horizon);
        if (tk >= t_star) break;
        const double r = radius_at(tk);
        push({tk, stationary ? cur.a : kPi * r * r, kTwoPi * r, Regime::Ball, r, kTwoPi * r - budget});
        if (opts.stop && opts.stop(tr.samples.back())) {
          tr.stopped_early = stopped = true;
          break;
        }
        if (tk >= horizon) break;
      }
      if (!stopped && t_star <= horizon) {
        push({t_star, 0.0, 0.0, Regime::Ball, 0.0, -budget});
        tr.t_star = t_star;
      }
      break;
    }

    const double t_grid = std::min(static_cast<double>(step + 1) * dt, horizon);
    double h = t_grid - t;
    if (h <= 0.0) {
      ++step;
      continue;
    }

    double e1 = flow.advance(t, e, h);
    if (flow.area(t + h, e1) <= 0.0) {
      double lo = 0.0, hi = h;
      while (hi - lo > opts.event_tol) {
        const double mid = 0.5 * (lo + hi);
        (flow.area(t + mid, flow.advance(t, e, mid)) <= 0.0 ? hi : lo) = mid;
      }
      tr.t_star = t + hi;
      push({t + hi, 0.0, 0.0, Regime::Ball, 0.0, -budget});
      break;
    }

    bool on_grid = true;
    if (flow.regime(t + h, e1) != cur.regime) {
      double lo = 0.0, hi = h;
      while (hi - lo > opts.event_tol) {
        const double mid = 0.5 * (lo + hi);
        (flow.regime(t + mid, flow.advance(t, e, mid)) != cur.regime ? hi : lo) = mid;
      }
      if (hi < h) {
        on_grid = false;
        h = hi;
        e1 = flow.advance(t, e, h);
      }
    }
    if (on_grid) {
      t = t_grid;
      ++step;
    } else {
      t += h;
    }
    e = e1;
    push(flow.sample(t, e));
  }
  return tr;
}

namespace detail {

inline std::size_t interval_index(const EvolutionTrace& tr, double t) {
  const auto& s = tr.samples;
  auto it = std::upper_bound(s.begin(), s.end(), t, [](double v, const TraceSample& x) { return v < x.t; });
  std::size_t i = it == s.begin() ? 0 : static_cast<std::size_t>(it - s.begin()) - 1;
  return std::min(i, s.size() - 2);
}

// Cubic Hermite in σ = √t on one sample interval, slopes da/dσ = 2σ·rate.
// Sharp domains open like √t, so a cubic in t would miss the first samples.
inline double hermite(const TraceSample& p, const TraceSample& q, double t) {
  const double s0 = std::sqrt(p.t), s1 = std::sqrt(q.t);
  const double h = s1 - s0;
  if (h <= 0.0) return p.a;
  const double s = (std::sqrt(t) - s0) / h, s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * p.a + (s3 - 2 * s2 + s) * h * 2.0 * s0 * p.rate + (-2 * s3 + 3 * s2) * q.a +
         (s3 - s2) * h * 2.0 * s1 * q.rate;
}

}  // namespace detail

/// a(t) between samples; zero after extinction.
inline double interpolate_area(const EvolutionTrace& tr, double t) {
  if (tr.samples.empty()) throw Error(ErrorCode::OutOfRange, "empty trace");
  const double end = tr.end_time();
  if (tr.t_star && t >= *tr.t_star) return 0.0;
  if (t < 0.0 || t > end + 1e-12 * std::max(1.0, end)) throw Error(ErrorCode::OutOfRange, "time outside the trace");
  if (tr.samples.size() == 1) return tr.samples[0].a;
  t = std::min(t, end);
  const auto i = detail::interval_index(tr, t);
  return std::max(0.0, detail::hermite(tr.samples[i], tr.samples[i + 1], t));
}

inline RoundedSet reconstruct_set(const EvolutionTrace& tr, const IsoperimetricSolver& solver, double t) {
  const double a = interpolate_area(tr, t);
  if (a <= 0.0) return {};
  return solver.solve(std::min(a, solver.full_area(t)), t).set;
}

inline RoundedSet reconstruct_set(const EvolutionTrace& tr, double t) {
  return reconstruct_set(tr, IsoperimetricSolver(tr.initial), t);
}

/// J = c1 ∫₀ᵀ a dt + c2 a(T). With dt = 2σ dσ each interval is a quartic in
/// σ, which three-point Gauss integrates exactly.
inline double compute_cost(const EvolutionTrace& tr, double c1, double c2, double horizon) {
  if (!(c1 >= 0.0) || !(c2 >= 0.0) || !(horizon >= 0.0)) throw Error(ErrorCode::BadConfig, "cost weights and T must be >= 0");
  const double end = tr.end_time();
  if (!tr.t_star && horizon > end + 1e-12 * std::max(1.0, end)) throw Error(ErrorCode::OutOfRange, "T beyond the trace");
  const double upto = std::min(horizon, end);
  static constexpr double kNode = 0.7745966692414834;  // √(3/5)
  static constexpr std::array<std::pair<double, double>, 3> kGauss{{{-kNode, 5.0 / 9.0}, {0.0, 8.0 / 9.0}, {kNode, 5.0 / 9.0}}};
  double integral = 0.0;
  for (std::size_t i = 0; i + 1 < tr.samples.size(); ++i) {
    const auto& p = tr.samples[i];
    const auto& q = tr.samples[i + 1];
    const double lo = p.t, hi = std::min(q.t, upto);
    if (hi <= lo) break;
    const double slo = std::sqrt(lo), shi = std::sqrt(hi);
    const double mid = 0.5 * (slo + shi), half = 0.5 * (shi - slo);
    for (const auto& [x, w] : kGauss) {
      const double sig = mid + half * x;
      integral += half * w * detail::hermite(p, q, sig * sig) * 2.0 * sig;
    }
  }
  return c1 * integral + c2 * interpolate_area(tr, horizon);
}

struct AdmissibilityReport {
  bool admissible = true;
  double max_inclusion_excess = 0.0;  // max_θ h_{A(t+δ)} − h_{A(t)^δ}
  double max_effort_deviation = 0.0;  // max |(|A(t)^δ| − a(t+δ))/δ − M|
  double effort_constant = 0.0;       // C in the bound tol + C·δ
  std::size_t checked = 0;
};

/// Discrete surrogate of the admissibility conditions at every sample time.
/// The constant C is π + ½·max|a''|, with a'' estimated from the stored rates.
inline AdmissibilityReport admissibility(const EvolutionTrace& tr, double delta, double tol) {
  if (!(delta > 0.0)) throw Error(ErrorCode::BadConfig, "delta must be positive");
  AdmissibilityReport rep;
  const IsoperimetricSolver solver(tr.initial);
  const double end = tr.end_time();

  // |A^δ| − a(t+δ) − δM = πδ² − ∫ₜ^{t+δ} (rate(s) − rate(t)) ds, so the
  // deviation is at most πδ plus the rate's swing over the window. Near a
  // sharp corner that swing scales like √δ, hence a per-trace constant.
  struct Row {
    double effort, swing;
  };
  std::vector<Row> rows;
  for (const auto& s : tr.samples) {
    if (s.t + delta > end || s.a <= 0.0) continue;
    const auto now = solver.solve(std::min(s.a, solver.full_area(s.t)), s.t).set;
    const double a_next = interpolate_area(tr, s.t + delta);
    const auto next = reconstruct_set(tr, solver, s.t + delta);
    const auto grown = dilate(now, delta);
    if (!next.empty()) {
      for (double th : detail::comparison_angles(grown, next, detail::kDefaultAngleGrid)) {
        rep.max_inclusion_excess = std::max(rep.max_inclusion_excess, support(next, th) - support(grown, th));
      }
    }
    double swing = 0.0;
    if (a_next > 0.0) {
      const double t1 = s.t + delta;
      // recomputed at both ends; the stored rate is not trusted
      swing = std::abs(solver.perimeter(std::min(a_next, solver.full_area(t1)), t1) - rounded_perimeter(now));
    }
    rows.push_back({(rounded_area(grown) - a_next) / delta, swing});
    ++rep.checked;
  }
  double swing = 0.0;
  for (const auto& r : rows) {
    rep.max_effort_deviation = std::max(rep.max_effort_deviation, std::abs(r.effort - tr.budget));
    swing = std::max(swing, r.swing);
  }
  rep.effort_constant = kPi + swing / delta;
  rep.admissible = rep.max_inclusion_excess <= tol * delta && rep.max_effort_deviation <= tol + rep.effort_constant * delta;
  return rep;
}

inline bool check_admissible(const EvolutionTrace& tr, double delta, double tol) {
  return admissibility(tr, delta, tol).admissible;
}

}  // namespace cshrink
