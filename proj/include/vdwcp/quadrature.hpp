#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <queue>
#include <vector>

#include "vdwcp/errors.hpp"

namespace vdwcp {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // conservative estimate of the absolute error
};

struct QuadratureSettings {
  int nodes = 32;                               // Gauss-Legendre panel order
  std::vector<double> split_points{1.0, 10.0, 50.0};
  double exp_transform_scale = 1.0;             // log-width of tail panels
  double abs_tol = 1e-12;
  double rel_tol = 1e-10;
  int max_subdivisions = 4000;                  // adaptive bisection budget
  int max_tail_panels = 400;
  int max_oscillatory_panels = 20000;

  void validate() const {
    if (nodes < 2 || nodes > 256)
      throw ConfigError("quadrature nodes must be in [2, 256]");
    if (!(abs_tol > 0.0) || abs_tol > 1e-2)
      throw ConfigError("quadrature abs_tol must be in (0, 1e-2]");
    if (!(rel_tol > 0.0) || rel_tol > 1e-2)
      throw ConfigError("quadrature rel_tol must be in (0, 1e-2]");
    if (!(exp_transform_scale > 0.0) || exp_transform_scale > 10.0)
      throw ConfigError("quadrature exp_transform_scale must be in (0, 10]");
    if (max_subdivisions < 8)
      throw ConfigError("quadrature max_subdivisions must be at least 8");
    if (max_tail_panels < 4 || max_oscillatory_panels < 8)
      throw ConfigError("quadrature panel budgets too small");
    double prev = 0.0;
    for (double s : split_points) {
      if (!(s > prev))
        throw ConfigError("quadrature split_points must be positive and strictly increasing");
      prev = s;
    }
  }
};

// ---------------------------------------------------------------------------
// Gauss-Legendre rules on [-1, 1], by Newton iteration on the Legendre
// recurrence. Rules are cached per order.

struct GaussLegendreRule {
  std::vector<double> x;
  std::vector<double> w;
};

inline const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1 || n > 1024) throw ConfigError("Gauss-Legendre order out of range");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendreRule rule;
  rule.x.resize(n);
  rule.w.resize(n);
  int half = (n + 1) / 2;
  constexpr double pi = 3.14159265358979323846;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        // one polishing pass after convergence
        double q0 = 1.0, q1 = x;
        for (int k = 2; k <= n; ++k) {
          double q2 = ((2.0 * k - 1.0) * x * q1 - (k - 1.0) * q0) / k;
          q0 = q1;
          q1 = q2;
        }
        dp = n * (x * q1 - q0) / (x * x - 1.0);
        break;
      }
    }
    rule.x[i] = -x;
    rule.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.w[i] = w;
    rule.w[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.x[n / 2] = 0.0;
  return cache.emplace(n, std::move(rule)).first->second;
}

template <class F>
double integrate_gauss(F&& f, double a, double b, int nodes = 32) {
  const auto& rule = gauss_legendre(nodes);
  double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i)
    acc += rule.w[i] * f(mid + halfw * rule.x[i]);
  return acc * halfw;
}

// ---------------------------------------------------------------------------
// Adaptive Gauss-Kronrod 7-15 on a finite interval.

namespace detail {

// Kronrod-15 abscissae (positive half) and weights; even entries are the
// embedded Gauss-7 nodes.
inline constexpr double kGk15X[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
inline constexpr double kGk15W[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
inline constexpr double kG7W[4] = {0.129484966168870, 0.279705391489277,
                                   0.381830050505119, 0.417959183673469};

template <class F>
void gk15(F&& f, double a, double b, double& value15, double& err) {
  double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
  double fc = f(mid);
  double acc15 = kGk15W[7] * fc;
  double acc7 = kG7W[3] * fc;
  for (int i = 0; i < 7; ++i) {
    double dx = halfw * kGk15X[i];
    double fsum = f(mid - dx) + f(mid + dx);
    acc15 += kGk15W[i] * fsum;
    if (i % 2 == 1) acc7 += kG7W[i / 2] * fsum;
  }
  value15 = acc15 * halfw;
  err = std::abs((acc15 - acc7) * halfw);
}

struct Segment {
  double a, b, value, err;
  bool operator<(const Segment& o) const { return err < o.err; }
};

}  // namespace detail

template <class F>
QuadratureResult integrate_adaptive(F&& f, double a, double b,
                                    double abs_tol = 1e-12,
                                    double rel_tol = 1e-10,
                                    int max_subdivisions = 4000) {
  if (!(b >= a)) throw ConfigError("integration bounds must satisfy a <= b");
  if (a == b) return {0.0, 0.0};
  std::priority_queue<detail::Segment> heap;
  detail::Segment s{a, b, 0.0, 0.0};
  detail::gk15(f, a, b, s.value, s.err);
  heap.push(s);
  double total = s.value, total_err = s.err;
  int splits = 0;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
    if (splits >= max_subdivisions)
      throw AccuracyError("adaptive quadrature budget exhausted", total_err,
                          std::max(abs_tol, rel_tol * std::abs(total)));
    detail::Segment worst = heap.top();
    heap.pop();
    double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b)
      throw AccuracyError("adaptive quadrature interval collapsed", total_err,
                          std::max(abs_tol, rel_tol * std::abs(total)));
    detail::Segment left{worst.a, mid, 0.0, 0.0};
    detail::Segment right{mid, worst.b, 0.0, 0.0};
    detail::gk15(f, left.a, left.b, left.value, left.err);
    detail::gk15(f, right.a, right.b, right.value, right.err);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++splits;
  }
  return {total, total_err};
}

// ---------------------------------------------------------------------------
// Semi-infinite integral over [0, inf): adaptive panels up to the last split
// point, then geometrically widening tail panels (u = s_last * e^{k h}) summed
// until two consecutive panels are negligible.

template <class F>
QuadratureResult integrate_semi_infinite(F&& f,
                                         const QuadratureSettings& qs = {}) {
  qs.validate();
  const double panel_abs = qs.abs_tol * 0.05;
  const double panel_rel = qs.rel_tol * 0.05;

  double acc = 0.0, err = 0.0;
  double lo = 0.0;
  for (double s : qs.split_points) {
    auto r = integrate_adaptive(f, lo, s, panel_abs, panel_rel,
                                qs.max_subdivisions);
    acc += r.value;
    err += r.error;
    lo = s;
  }
  if (qs.split_points.empty()) {
    auto r = integrate_adaptive(f, 0.0, 1.0, panel_abs, panel_rel,
                                qs.max_subdivisions);
    acc += r.value;
    err += r.error;
    lo = 1.0;
  }

  const double h = qs.exp_transform_scale;
  double prev_mag = std::numeric_limits<double>::infinity();
  for (int k = 0; k < qs.max_tail_panels; ++k) {
    double hi = lo * std::exp(h);
    auto r = integrate_adaptive(f, lo, hi, panel_abs, panel_rel,
                                qs.max_subdivisions);
    acc += r.value;
    err += r.error;
    double mag = std::abs(r.value);
    double thresh = 0.25 * std::max(qs.abs_tol, qs.rel_tol * std::abs(acc));
    if (mag <= thresh && prev_mag <= thresh) {
      err += mag;  // proxy for the truncated remainder
      return {acc, err};
    }
    prev_mag = mag;
    lo = hi;
  }
  throw AccuracyError("semi-infinite tail did not converge within panel budget",
                      prev_mag, qs.abs_tol);
}

// ---------------------------------------------------------------------------
// Oscillatory integral over [a, inf): fixed Gauss-Legendre panels of width
// `half_period` (one half-period of the fastest oscillation), accumulated
// with compensated summation until three consecutive panels are negligible.

template <class F>
QuadratureResult integrate_oscillatory(F&& f, double a, double half_period,
                                       const QuadratureSettings& qs = {}) {
  qs.validate();
  if (!(half_period > 0.0)) throw ConfigError("half_period must be positive");
  const auto& rule = gauss_legendre(qs.nodes);

  double acc = 0.0, comp = 0.0;
  int quiet = 0;
  double last_mag = 0.0;
  for (int k = 0; k < qs.max_oscillatory_panels; ++k) {
    double lo = a + k * half_period;
    double hi = lo + half_period;
    double mid = 0.5 * (lo + hi), halfw = 0.5 * half_period;
    double panel = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i)
      panel += rule.w[i] * f(mid + halfw * rule.x[i]);
    panel *= halfw;
    double y = panel - comp;
    double t = acc + y;
    comp = (t - acc) - y;
    acc = t;
    last_mag = std::abs(panel);
    double thresh = 0.25 * std::max(qs.abs_tol, qs.rel_tol * std::abs(acc));
    quiet = (last_mag <= thresh) ? quiet + 1 : 0;
    if (quiet >= 3) return {acc, 4.0 * last_mag + qs.abs_tol * 0.25};
  }
  throw AccuracyError("oscillatory quadrature did not converge within panel budget",
                      last_mag, qs.abs_tol);
}

}  // namespace vdwcp
