#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "vdwcp/errors.hpp"
#include "vdwcp/parallel.hpp"
#include "vdwcp/quadrature.hpp"
#include "vdwcp/smearing_profile.hpp"

namespace vdwcp {

namespace detail {

// Reduced two-photon momentum integral
//   I(qc, lc) = (4 pi)^2 8 pi^2 int dr1 dr2 dc  rho_hat(r1) rho_hat(r2)
//               * r1 r2 (1 + c^2) / (4 D),
//   D = qc (r1^2 + r2^2 + 2 r1 r2 c) / 2 + lc (r1 + r2),
// at a fixed node budget. The c axis uses one Gauss-Legendre rule; the radial
// axes use per-panel rules so the Fourier-side ripple of a compact profile is
// resolved panel by panel.
inline double two_photon_tensor_pass(const SmearingProfile& profile,
                                     double quad_coeff, double lin_coeff,
                                     int radial_nodes, int c_nodes) {
  const double scale = profile.scale();
  const bool compact = profile.compact();
  const double panel_width =
      compact ? 3.14159265358979323846 / (4.0 * scale) : 0.5 / scale;
  const double r_max = compact ? 50.0 / scale : 12.0 / scale;
  const int panels = static_cast<int>(std::ceil(r_max / panel_width));

  // The integrand behaves like r1 r2 / (r1 + r2) near the origin, which is
  // not analytic at the (0, 0) corner of the product grid; a uniform first
  // panel would cap the whole rule at algebraic accuracy. Splitting [0,
  // panel_width] geometrically restores per-panel spectral convergence.
  std::vector<double> edges;
  edges.push_back(0.0);
  for (int k = 6; k >= 1; --k) edges.push_back(panel_width * std::pow(0.5, k));
  for (int p = 1; p <= panels; ++p) edges.push_back(p * panel_width);

  const auto& rule = gauss_legendre(radial_nodes);
  std::vector<double> r, wr;  // wr absorbs r * rho_hat(r)
  r.reserve((edges.size() - 1) * radial_nodes);
  wr.reserve(r.capacity());
  for (std::size_t p = 0; p + 1 < edges.size(); ++p) {
    double a = edges[p], h = 0.5 * (edges[p + 1] - edges[p]);
    for (int k = 0; k < radial_nodes; ++k) {
      double rk = a + h * (1.0 + rule.x[k]);
      r.push_back(rk);
      wr.push_back(h * rule.w[k] * rk * profile.rho_hat(rk));
    }
  }

  const auto& crule = gauss_legendre(c_nodes);
  const std::size_t n = r.size();
  std::vector<double> row(n, 0.0);
  parallel_for(n, [&](std::size_t i) {
    double acc = 0.0;
    for (std::size_t j = i; j < n; ++j) {
      double a = 0.5 * quad_coeff * (r[i] * r[i] + r[j] * r[j]) +
                 lin_coeff * (r[i] + r[j]);
      double b = quad_coeff * r[i] * r[j];
      double inner = 0.0;
      for (int k = 0; k < c_nodes; ++k) {
        double c = crule.x[k];
        inner += crule.w[k] * (1.0 + c * c) / (4.0 * (a + b * c));
      }
      acc += (i == j ? 1.0 : 2.0) * wr[i] * wr[j] * inner;
    }
    row[i] = acc;
  });
  double total = 0.0;
  for (double v : row) total += v;

  const double pi = 3.14159265358979323846;
  return 128.0 * pi * pi * pi * pi * total;
}

}  // namespace detail

// quad_coeff scales the two-photon recoil term (k1 + k2)^2 / 2 and lin_coeff
// the frequency term |k1| + |k2| of the denominator. The physical point is
// quad_coeff = lin_coeff = 1.
inline double reduced_two_photon_integral(const SmearingProfile& profile,
                                          double quad_coeff, double lin_coeff,
                                          const QuadratureSettings& qs = {},
                                          double* error_out = nullptr) {
  qs.validate();
  if (!(quad_coeff >= 0.0) || !std::isfinite(quad_coeff))
    throw ConfigError("two-photon integral requires quad_coeff >= 0");
  if (!(lin_coeff > 0.0) || !std::isfinite(lin_coeff))
    throw ConfigError("two-photon integral requires lin_coeff > 0");
  double full =
      detail::two_photon_tensor_pass(profile, quad_coeff, lin_coeff, 24, 64);
  double half =
      detail::two_photon_tensor_pass(profile, quad_coeff, lin_coeff, 12, 32);
  double err = std::abs(full - half);
  if (err > 100.0 * std::max(qs.abs_tol, qs.rel_tol * std::abs(full)))
    throw AccuracyError("two-photon tensor quadrature did not settle", err,
                        100.0 * std::max(qs.abs_tol, qs.rel_tol * std::abs(full)));
  if (error_out) *error_out = err;
  return full;
}

struct A0Result {
  double value;          // canonical photon self-energy constant
  double error;          // node-refinement discrepancy, canonical variant
  double value_variant;  // recoil term halved instead of the frequency term
  std::string profile;

  void validate() const {
    if (!(value > 0.0) || !(value_variant > 0.0))
      throw ConsistencyError("self-energy constants must be positive");
    if (!(value_variant > value))
      throw ConsistencyError(
          "halving the frequency term must raise the self-energy constant");
  }
};

// Single-atom photon self-energy constant, reported against the variant with
// the factor 1/2 moved from the recoil term to the frequency term. The two
// share every code path except the two denominator coefficients, so their
// ordering (variant strictly larger) is a live consistency check.
inline A0Result a0(const SmearingProfile& profile,
                   const QuadratureSettings& qs = {}) {
  A0Result out;
  double err = 0.0;
  out.value = 0.5 * reduced_two_photon_integral(profile, 1.0, 1.0, qs, &err);
  out.error = 0.5 * err;
  out.value_variant =
      0.5 * reduced_two_photon_integral(profile, 1.0, 0.5, qs);
  out.profile = profile.name();
  out.validate();
  return out;
}

// Leading-order growth rate of the path-action variance per unit tau:
//   rate(alpha, delta) = alpha^{3 delta} I(alpha^delta, 1),
// which is 2 a0 independent of alpha at delta = 0 and scales as alpha^{3
// delta} as alpha -> 0 for delta > 0.
inline double action_variance_rate(const SmearingProfile& profile,
                                   double alpha, double delta,
                                   const QuadratureSettings& qs = {}) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("variance rate requires alpha in (0, 1)");
  if (!(delta >= 0.0 && delta < 1.0))
    throw ConfigError("variance rate requires delta in [0, 1)");
  return std::pow(alpha, 3.0 * delta) *
         reduced_two_photon_integral(profile, std::pow(alpha, delta), 1.0, qs);
}

}  // namespace vdwcp
