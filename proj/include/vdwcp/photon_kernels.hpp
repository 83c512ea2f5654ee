#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <string>

#include "vdwcp/errors.hpp"
#include "vdwcp/quadrature.hpp"
#include "vdwcp/smearing_profile.hpp"

namespace vdwcp {

using TransverseMatrix = Eigen::Matrix3d;

// ---------------------------------------------------------------------------
// Scalar shape functions of the transverse angular integral, built from
// ghat(s) = sin(s)/s:  b1 = ghat - ghat'',  b3 = 2 (ghat + ghat'').
// Series below |s| = 1e-2 avoids the s^{-3} cancellation; identity
// 2 b1 + b3 = 4 ghat holds exactly in both regimes.

inline double sinc_profile(double s) {
  double a = std::abs(s);
  if (a < 1e-2) {
    double s2 = s * s;
    return 1.0 - s2 / 6.0 + s2 * s2 / 120.0 - s2 * s2 * s2 / 5040.0;
  }
  return std::sin(s) / s;
}

struct TransverseShapes {
  double b1;
  double b3;
};

inline TransverseShapes g_profiles(double s) {
  double a = std::abs(s);
  if (a < 1e-2) {
    double s2 = s * s, s4 = s2 * s2, s6 = s4 * s2;
    double b1 = 4.0 / 3.0 - 4.0 * s2 / 15.0 + s4 / 70.0 - s6 / 2835.0;
    double b3 = 4.0 / 3.0 - 2.0 * s2 / 15.0 + s4 / 210.0 - s6 / 11340.0;
    return {b1, b3};
  }
  double sn = std::sin(s), cs = std::cos(s);
  double s2 = s * s, s3 = s2 * s;
  double b1 = 2.0 * (sn / s - sn / s3 + cs / s2);
  double b3 = 4.0 * (sn / s3 - cs / s2);
  return {b1, b3};
}

// ---------------------------------------------------------------------------
// int dOmega e^{i k . a} (1 - |k^><k^|) = 2 pi [ b1(s) (I - a^ a^T) + b3(s) a^ a^T ]
// with s = k_mag |a|. The result is completion-independent; the explicit frame
// below only organizes the computation.

inline TransverseMatrix angular_transverse_integral(double k_mag,
                                                    const Eigen::Vector3d& a) {
  if (!(k_mag > 0.0))
    throw ConfigError("angular integral requires k_mag > 0");
  double norm = a.norm();
  if (norm == 0.0)
    throw ConfigError(
        "degenerate direction a = 0; use the s -> 0 limit (8 pi / 3) * I");
  Eigen::Vector3d ahat = a / norm;
  auto [b1, b3] = g_profiles(k_mag * norm);
  constexpr double two_pi = 6.28318530717958647692;
  TransverseMatrix m = two_pi * b1 *
                       (Eigen::Matrix3d::Identity() - ahat * ahat.transpose());
  m += two_pi * b3 * (ahat * ahat.transpose());
  return m;
}

// ---------------------------------------------------------------------------
// Distributional radial kernels. Regular parts are exponentials; the delta
// content (a plain delta or its first derivative at v = +-a) is carried
// symbolically so integrators can contract it analytically:
//   int w delta(v - c) f(v) dv   = w f(c)
//   int w delta'(v - c) f(v) dv  = -w f'(c)
// Sign convention: sgn(0) = +1.

struct DeltaTerm {
  double location;
  int derivative_order;  // 0 for delta, 1 for delta'
  double weight;
};

struct RadialKernels {
  double c1;  // regular part of c1 at v
  double c2;  // c2 has no delta content
  double c3;  // regular part of c3 at v
  std::array<DeltaTerm, 2> c1_delta;
  std::array<DeltaTerm, 2> c3_delta;
};

namespace detail {
inline double sgn_plus(double t) { return t >= 0.0 ? 1.0 : -1.0; }
}

inline RadialKernels radial_kernels(double v, double a, double u) {
  if (!(a > 0.0)) throw ConfigError("radial kernels require a > 0");
  constexpr double sqrt_two_pi = 2.50662827463100050242;
  const double k1 = sqrt_two_pi / (4.0 * a);
  const double k2 = sqrt_two_pi / (4.0 * a * a * a);
  const double k3 = sqrt_two_pi / (4.0 * a * a);
  const double au = std::abs(u);
  const double em = std::exp(-au * std::abs(v - a));
  const double ep = std::exp(-au * std::abs(v + a));
  const double sm = detail::sgn_plus(v - a);
  const double sp = detail::sgn_plus(v + a);

  RadialKernels out;
  out.c1 = k1 * u * u * (sm * em - sp * ep);
  out.c2 = k2 * (sp * ep - sm * em);
  out.c3 = -k3 * au * (ep + em);
  out.c1_delta = {DeltaTerm{-a, 1, -2.0 * k1}, DeltaTerm{a, 1, 2.0 * k1}};
  out.c3_delta = {DeltaTerm{-a, 0, 2.0 * k3}, DeltaTerm{a, 0, 2.0 * k3}};
  return out;
}

// Analytic contraction of delta descriptors against a test function given by
// value and first derivative.
template <class F, class DF>
double contract_deltas(const std::array<DeltaTerm, 2>& terms, F&& f, DF&& fp) {
  double acc = 0.0;
  for (const auto& d : terms) {
    if (d.derivative_order == 0)
      acc += d.weight * f(d.location);
    else
      acc -= d.weight * fp(d.location);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Smeared Coulomb potential
//   V_alpha(x) = 4 pi int d^3k rho_hat(alpha |k|) |k|^{-2} e^{-i k . x}
//              = (16 pi^2 / x) int_0^inf dq q^{-1} rho_hat(q) sin(q x / alpha),
// normalized so V_0(x) = 1/x. For compact profiles V_alpha(x) = 1/x exactly
// once x >= 2 alpha R_phi (the smeared charge acts as a point charge outside
// its own support).

inline double smeared_coulomb(const SmearingProfile& profile, double alpha,
                              double x_mag) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw ConfigError("smeared Coulomb requires alpha in [0, 1]");
  if (!(x_mag > 0.0)) throw ConfigError("smeared Coulomb requires x_mag > 0");
  if (alpha == 0.0) return 1.0 / x_mag;

  if (profile.compact() && x_mag >= 2.0 * alpha * profile.support_radius())
    return 1.0 / x_mag;

  if (!profile.compact()) {
    // gaussian family: closed form erf(x / (2 alpha w)) / x
    double w = profile.scale();
    return std::erf(x_mag / (2.0 * alpha * w)) / x_mag;
  }

  constexpr double pi = 3.14159265358979323846;
  const double freq = x_mag / alpha;
  auto f = [&](double q) {
    if (q < 1e-300) return profile.rho_hat(0.0) * freq;
    return profile.rho_hat(q) * std::sin(q * freq) / q;
  };
  QuadratureSettings qs;
  qs.abs_tol = 1e-16;
  qs.rel_tol = 1e-11;
  double half_period = pi / (freq + 2.0 * profile.support_radius());
  auto r = integrate_oscillatory(f, 0.0, half_period, qs);
  return 16.0 * pi * pi / x_mag * r.value;
}

// Interaction part of the two-atom smeared potential: nuclei at 0 and r,
// electrons displaced by x1 and x2 from their nuclei. Four pairwise terms:
//   V(|r|) - V(|r + x2|) - V(|r - x1|) + V(|r + x2 - x1|).
inline double pair_potential(const SmearingProfile& profile, double alpha,
                             const Eigen::Vector3d& x1,
                             const Eigen::Vector3d& x2,
                             const Eigen::Vector3d& r) {
  auto v = [&](const Eigen::Vector3d& d) {
    return smeared_coulomb(profile, alpha, d.norm());
  };
  return v(r) - v(r + x2) - v(r - x1) + v(r + x2 - x1);
}

// ---------------------------------------------------------------------------
// Photon propagator
//   W1(x, t) = int_0^inf dr r^2 rho_hat(r) (2r)^{-1} e^{-r t}
//              * [angular transverse integral at (r, x)]
// decomposed into its transverse/longitudinal invariants relative to x:
//   W1 = w_perp (I - x^ x^T) + w_par x^ x^T,
//   w_perp/par(s, t) = pi int_0^inf r rho_hat(r) e^{-r t} b1/b3(r s) dr.

struct PropagatorComponents {
  double perp;
  double par;
};

inline PropagatorComponents photon_propagator_components(
    const SmearingProfile& profile, double s, double t) {
  if (!(t >= 0.0)) throw ConfigError("propagator requires t >= 0");
  if (!(s >= 0.0)) throw ConfigError("propagator requires |x| >= 0");
  constexpr double pi = 3.14159265358979323846;
  QuadratureSettings qs;
  qs.abs_tol = 1e-16;
  qs.rel_tol = 1e-10;

  if (s * profile.effective_radius() < 0.5) {
    // non-oscillatory regime: one semi-infinite pass per component
    auto fp = [&](double r) {
      return r * profile.rho_hat(r) * std::exp(-r * t) * g_profiles(r * s).b1;
    };
    auto fl = [&](double r) {
      return r * profile.rho_hat(r) * std::exp(-r * t) * g_profiles(r * s).b3;
    };
    return {pi * integrate_semi_infinite(fp, qs).value,
            pi * integrate_semi_infinite(fl, qs).value};
  }
  double half_period = pi / s;
  auto fp = [&](double r) {
    return r * profile.rho_hat(r) * std::exp(-r * t) * g_profiles(r * s).b1;
  };
  auto fl = [&](double r) {
    return r * profile.rho_hat(r) * std::exp(-r * t) * g_profiles(r * s).b3;
  };
  return {pi * integrate_oscillatory(fp, 0.0, half_period, qs).value,
          pi * integrate_oscillatory(fl, 0.0, half_period, qs).value};
}

inline TransverseMatrix photon_propagator(const SmearingProfile& profile,
                                          const Eigen::Vector3d& x, double t) {
  double s = x.norm();
  if (s < 1e-12) {
    auto c = photon_propagator_components(profile, 0.0, t);
    return c.perp * Eigen::Matrix3d::Identity();
  }
  auto c = photon_propagator_components(profile, s, t);
  Eigen::Vector3d xhat = x / s;
  return c.perp * (Eigen::Matrix3d::Identity() - xhat * xhat.transpose()) +
         c.par * (xhat * xhat.transpose());
}

// ---------------------------------------------------------------------------
// Norms of the photon coupling function g(k, lambda) with smeared argument
// scaled by alpha^{2-delta} and energy weight (2 omega)^{-1/2}:
//   ||g||^2            = 4 pi int_0^inf rho_hat(sigma k) k dk = 4 pi m1 / sigma^2
//   ||omega^{-1/2} g||^2 = 4 pi int_0^inf rho_hat(sigma k) dk  = 4 pi m0 / sigma
// with sigma = alpha^{2-delta} and m_p the profile's radial moments. The
// exposed products are the three combinations whose alpha-scalings are the
// quantitative content: exponents (1+delta)/2, 3 delta/2, and -1/2 at delta=0.

struct CouplingNorms {
  double norm_g;
  double norm_g_over_sqrt_omega;
  double product_field;      // alpha^{3/2} ||omega^{-1/2} g||   ~ alpha^{(1+delta)/2}
  double product_quadratic;  // alpha^3 ||g|| ||omega^{-1/2} g|| ~ alpha^{3 delta/2}
  double product_linear;     // sqrt(4 pi) alpha^{3/2} ||g||      ~ alpha^{-1/2} at delta=0
};

inline CouplingNorms coupling_norms(const SmearingProfile& profile,
                                    double alpha, double delta) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("coupling norms require alpha in (0, 1)");
  if (!(delta >= 0.0 && delta < 1.0))
    throw ConfigError("coupling norms require delta in [0, 1)");
  constexpr double four_pi = 12.5663706143591729539;
  double sigma = std::pow(alpha, 2.0 - delta);
  double m0 = profile.radial_moment(0);
  double m1 = profile.radial_moment(1);
  CouplingNorms out;
  out.norm_g = std::sqrt(four_pi * m1) / sigma;
  out.norm_g_over_sqrt_omega = std::sqrt(four_pi * m0 / sigma);
  double a32 = std::pow(alpha, 1.5);
  out.product_field = a32 * out.norm_g_over_sqrt_omega;
  out.product_quadratic =
      alpha * alpha * alpha * out.norm_g * out.norm_g_over_sqrt_omega;
  out.product_linear = std::sqrt(four_pi) * a32 * out.norm_g;
  return out;
}

}  // namespace vdwcp
