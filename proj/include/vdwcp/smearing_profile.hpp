#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "vdwcp/errors.hpp"
#include "vdwcp/quadrature.hpp"

namespace vdwcp {

// Unit-mass radial charge smearing profile. Two families:
//   bump(r_phi):   phi(x) = c (1 - (|x|/r_phi)^2)^3 inside |x| <= r_phi,
//                  c = 315 / (64 pi r_phi^3); compactly supported.
//   gaussian(w):   phi(x) = (2 pi w^2)^{-3/2} exp(-|x|^2 / 2w^2).
// Exposes the radial Fourier transform phi_hat (symmetric convention, so
// phi_hat(0) = (2 pi)^{-3/2}), the squared transform rho_hat = phi_hat^2,
// the self-convolution sigma = phi * phi, and the reduced one-dimensional
// distribution rho(v) = (2 pi)^{-1/2} int rho_hat(w) e^{i v w} dw, which
// satisfies rho(v) = (2 pi)^{-3/2} int_{|v|}^inf r sigma(r) dr and
// int rho dv = (2 pi)^{-5/2}.
class SmearingProfile {
 public:
  static SmearingProfile bump(double r_phi = 1.0) {
    if (!(r_phi > 0.0) || !std::isfinite(r_phi))
      throw ConfigError("bump radius must be positive and finite");
    return SmearingProfile(Family::Bump, r_phi);
  }

  static SmearingProfile gaussian(double width = 1.0) {
    if (!(width > 0.0) || !std::isfinite(width))
      throw ConfigError("gaussian width must be positive and finite");
    return SmearingProfile(Family::Gaussian, width);
  }

  const std::string& name() const { return name_; }
  double scale() const { return scale_; }
  bool compact() const { return family_ == Family::Bump; }

  // Radius beyond which phi vanishes (infinite for the gaussian family).
  double support_radius() const {
    return compact() ? scale_ : std::numeric_limits<double>::infinity();
  }

  // Radius beyond which sigma and rho vanish (2 r_phi for the bump family).
  double pair_support_radius() const {
    return compact() ? 2.0 * scale_ : std::numeric_limits<double>::infinity();
  }

  // Effective integration cutoff: exact support for the bump, a radius where
  // the gaussian tail is below 1e-18 otherwise.
  double effective_radius() const {
    return compact() ? scale_ : 10.0 * scale_;
  }

  std::string warning() const {
    if (compact()) return {};
    return "gaussian smearing has unbounded support; compact-support "
           "shortcuts (exact Coulomb shell value, exact vanishing of rho) "
           "do not apply";
  }

  double phi(double r) const {
    r = std::abs(r);
    if (compact()) {
      if (r >= scale_) return 0.0;
      double y = r / scale_;
      double b = 1.0 - y * y;
      constexpr double pi = 3.14159265358979323846;
      double c = 315.0 / (64.0 * pi * scale_ * scale_ * scale_);
      return c * b * b * b;
    }
    double w = scale_;
    constexpr double two_pi = 6.28318530717958647692;
    double norm = std::pow(two_pi * w * w, -1.5);
    return norm * std::exp(-r * r / (2.0 * w * w));
  }

  // Radial Fourier transform: (2 pi)^{-3/2} int phi(x) e^{-i k x} d^3x.
  double fourier(double k) const {
    k = std::abs(k);
    constexpr double two_pi = 6.28318530717958647692;
    double norm = std::pow(two_pi, -1.5);
    if (!compact()) {
      double w = scale_;
      return norm * std::exp(-0.5 * w * w * k * k);
    }
    double kappa = k * scale_;
    return norm * (315.0 / 16.0) * bump_shape(kappa);
  }

  double rho_hat(double k) const {
    double f = fourier(k);
    return f * f;
  }

  // sigma(s) = (phi * phi)(s), the self-convolution; supported on
  // [0, 2 r_phi] for the bump family.
  double sigma(double s) const {
    s = std::abs(s);
    if (!compact()) {
      double w = scale_;
      constexpr double four_pi = 12.5663706143591729539;
      double norm = std::pow(four_pi * w * w, -1.5);
      return norm * std::exp(-s * s / (4.0 * w * w));
    }
    const double r_max = scale_;
    if (s >= 2.0 * r_max) return 0.0;
    constexpr double pi = 3.14159265358979323846;
    if (s < 1e-10 * r_max) {
      auto f = [&](double r) {
        double p = phi(r);
        return p * p * r * r;
      };
      return 4.0 * pi *
             integrate_adaptive(f, 0.0, r_max, 1e-18, 1e-12).value;
    }
    // (2 pi / s) int r phi(r) [Phi(min(s+r, R)) - Phi(min(|s-r|, R))] dr with
    // Phi(t) = int_0^t u phi(u) du available in closed form.
    auto inner = [&](double t) {
      if (t >= r_max) t = r_max;
      double y = t / r_max;
      double b = 1.0 - y * y;
      double c = 315.0 / (64.0 * pi * r_max * r_max * r_max);
      return c * r_max * r_max * (1.0 - b * b * b * b) / 8.0;
    };
    auto f = [&](double r) {
      return r * phi(r) * (inner(s + r) - inner(std::abs(s - r)));
    };
    double lo = std::max(0.0, s - r_max);
    double acc = 0.0;
    // split at the |s - r| kink when it falls inside the range
    if (s > lo && s < r_max) {
      acc += integrate_adaptive(f, lo, s, 1e-18, 1e-12).value;
      acc += integrate_adaptive(f, s, r_max, 1e-18, 1e-12).value;
    } else {
      acc += integrate_adaptive(f, lo, r_max, 1e-18, 1e-12).value;
    }
    return (2.0 * pi / s) * acc;
  }

  // Reduced one-dimensional distribution; exactly zero outside
  // [-2 r_phi, 2 r_phi] for the bump family.
  double rho(double v) const {
    v = std::abs(v);
    constexpr double pi = 3.14159265358979323846;
    constexpr double two_pi = 6.28318530717958647692;
    if (!compact()) {
      double w = scale_;
      return std::pow(two_pi, -1.5) / (4.0 * std::pow(pi, 1.5) * w) *
             std::exp(-v * v / (4.0 * w * w));
    }
    double cutoff = 2.0 * scale_;
    if (v >= cutoff) return 0.0;
    auto f = [&](double r) { return r * sigma(r); };
    double val = integrate_adaptive(f, v, cutoff, 1e-18, 1e-11).value;
    return std::pow(two_pi, -1.5) * val;
  }

  // d rho / dv for v >= 0; equals -(2 pi)^{-3/2} v sigma(v).
  double rho_prime(double v) const {
    if (v < 0.0) throw ConfigError("rho_prime expects v >= 0 (rho is even)");
    constexpr double two_pi = 6.28318530717958647692;
    return -std::pow(two_pi, -1.5) * v * sigma(v);
  }

  // int_0^inf q^p rho_hat(q) dq for small non-negative p.
  double radial_moment(int p) const {
    if (p < 0 || p > 6) throw ConfigError("radial moment order must be in [0, 6]");
    constexpr double two_pi = 6.28318530717958647692;
    if (!compact()) {
      double w = scale_;
      double norm = std::pow(two_pi, -3.0);
      if (p == 0) return norm * std::sqrt(3.14159265358979323846) / (2.0 * w);
      if (p == 1) return norm / (2.0 * w * w);
    }
    QuadratureSettings qs;
    qs.abs_tol = 1e-18;
    qs.rel_tol = 1e-12;
    auto f = [&](double q) { return std::pow(q, p) * rho_hat(q); };
    return integrate_semi_infinite(f, qs).value;
  }

 private:
  enum class Family { Bump, Gaussian };

  SmearingProfile(Family f, double scale)
      : family_(f),
        scale_(scale),
        name_(f == Family::Bump ? "bump" : "gaussian") {}

  // Shape factor B(kappa) with B(0) = 16/315 so that fourier(0) = (2pi)^{-3/2}.
  // Closed form has a kappa^{-9} prefactor; the alternating series takes over
  // below kappa = 2 where cancellation would otherwise grow.
  static double bump_shape(double kappa) {
    if (kappa < 2.0) {
      double k2 = kappa * kappa;
      double term = 1.0;  // kappa^{2j} / (2j+1)!
      double acc = 0.0;
      for (int j = 0; j <= 24; ++j) {
        double a = 2.0 * j;
        double frac = 1.0 / (a + 3.0) - 3.0 / (a + 5.0) + 3.0 / (a + 7.0) -
                      1.0 / (a + 9.0);
        double contrib = term * frac;
        acc += (j % 2 == 0) ? contrib : -contrib;
        term *= k2 / ((2.0 * j + 2.0) * (2.0 * j + 3.0));
        if (term < 1e-20) break;
      }
      return acc;
    }
    double s = std::sin(kappa), c = std::cos(kappa);
    double k2 = kappa * kappa, k3 = k2 * kappa, k4 = k2 * k2;
    double num = k4 * s + 10.0 * k3 * c - 45.0 * k2 * s - 105.0 * kappa * c +
                 105.0 * s;
    double k9 = k4 * k4 * kappa;
    return 48.0 * num / k9;
  }

  Family family_;
  double scale_;
  std::string name_;
};

}  // namespace vdwcp
