#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "vdwcp/errors.hpp"

namespace vdwcp {

// Pseudostate basis for the l=1 radial hydrogen problem:
//   phi_n(r) = r e^{-lambda r} L_n^{(2)}(2 lambda r),  n = 0 .. N-1.
// All Hamiltonian and dipole matrix elements are closed-form in this basis,
// so the discretized excitation spectrum is exact up to the eigensolve.
struct BasisConfig {
  int n = 80;
  double lambda = 1.0;

  void validate() const {
    if (n < 1 || n > 2000) throw ConfigError("basis size must be in [1, 2000]");
    if (!(lambda > 0.0) || !std::isfinite(lambda))
      throw ConfigError("basis exponent lambda must be positive and finite");
  }
};

// Discrete dipole spectrum: excitation energies E_n (above the ground state)
// and line strengths s_n. Sum rules in these conventions:
//   sum s_n = 1,  sum s_n E_n = 1/2,  2 sum s_n / E_n = static polarizability.
struct DipoleSpectrum {
  std::vector<double> energy;
  std::vector<double> strength;

  std::size_t size() const { return energy.size(); }

  void validate() const {
    if (energy.empty()) throw ConfigError("dipole spectrum must be non-empty");
    if (energy.size() != strength.size())
      throw ConfigError("dipole spectrum energy/strength size mismatch");
    double prev = 0.0;
    for (std::size_t i = 0; i < energy.size(); ++i) {
      if (!std::isfinite(energy[i]) || !(energy[i] > 0.0))
        throw ConfigError("dipole spectrum energies must be positive and finite");
      if (energy[i] < prev)
        throw ConfigError("dipole spectrum energies must be non-decreasing");
      if (!std::isfinite(strength[i]) || strength[i] < 0.0)
        throw ConfigError("dipole strengths must be non-negative and finite");
      prev = energy[i];
    }
  }

  static DipoleSpectrum from_levels(
      const std::vector<std::pair<double, double>>& levels) {
    DipoleSpectrum s;
    s.energy.reserve(levels.size());
    s.strength.reserve(levels.size());
    for (const auto& [e, w] : levels) {
      s.energy.push_back(e);
      s.strength.push_back(w);
    }
    s.validate();
    return s;
  }
};

namespace detail {

// Closed-form basis integrals in the scaled variable x = 2 lambda r.
// laguerre_e(i, j) = int_0^inf e^{-x} L_i^{(2)}(x) L_j^{(2)}(x) dx.
inline double laguerre_e(int i, int j) {
  if (i < 0 || j < 0) return 0.0;
  double p = std::min(i, j), q = std::max(i, j);
  return (p + 1.0) * (p + 2.0) * (2.0 * p + 3.0) / 6.0 +
         (q - p) * (p + 1.0) * (p + 2.0) / 2.0;
}

// int_0^inf e^{-x} x L_i^{(2)}(x) L_j^{(2)}(x) dx depends only on min(i, j).
inline double laguerre_ex(int i, int j) {
  double p = std::min(i, j);
  return (p + 1.0) * (p + 2.0) / 2.0;
}

// int_0^inf x^3 e^{-s x} L_n^{(3)}(x) dx = ((n+3)!/n!) (s-1)^n / s^{n+4}.
inline double cubic_transform(int n, double s) {
  if (n < 0) return 0.0;
  double pre = (n + 1.0) * (n + 2.0) * (n + 3.0);
  // accumulate (s-1)^n / s^{n+4} in log-free form; ratios stay O(1) for s > 1/2
  double ratio = (s - 1.0) / s;
  double val = pre / (s * s * s * s);
  for (int k = 0; k < n; ++k) val *= ratio;
  return val;
}

}  // namespace detail

// Diagonalizes the l=1 Hamiltonian (kinetic + centrifugal 1/r^2 - Coulomb 1/r)
// in the Laguerre basis and contracts the eigenvectors with the ground-state
// dipole vector. Energies are reported relative to the ground state at -1/2.
inline DipoleSpectrum build_dipole_spectrum(const BasisConfig& cfg = {}) {
  cfg.validate();
  const int n = cfg.n;
  const double two_lam = 2.0 * cfg.lambda;

  // Derivative of phi_n in x-units is e^{-x/2} A_n(x) with
  // A_n = ((n+1) L_{n+1}^{(2)} - L_n^{(2)} - (n+2) L_{n-1}^{(2)}) / 2.
  auto deriv_coeffs = [](int m) {
    return std::array<std::pair<int, double>, 3>{
        std::pair<int, double>{m + 1, 0.5 * (m + 1)},
        std::pair<int, double>{m, -0.5},
        std::pair<int, double>{m - 1, -0.5 * (m + 2)}};
  };

  Eigen::MatrixXd h(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      double kin = 0.0;
      for (const auto& [i, ci] : deriv_coeffs(a))
        for (const auto& [j, cj] : deriv_coeffs(b))
          kin += ci * cj * detail::laguerre_e(i, j);
      kin /= 2.0 * two_lam;
      double centrifugal = detail::laguerre_e(a, b) / two_lam;
      double coulomb = -detail::laguerre_ex(a, b) / (two_lam * two_lam);
      double v = kin + centrifugal + coulomb;
      h(a, b) = v;
      h(b, a) = v;
    }
  }

  // Overlap is diagonal: S_nn = (n+1)(n+2) / (2 lambda)^3.
  Eigen::VectorXd inv_sqrt_s(n);
  for (int a = 0; a < n; ++a) {
    double s_aa = (a + 1.0) * (a + 2.0) / (two_lam * two_lam * two_lam);
    inv_sqrt_s(a) = 1.0 / std::sqrt(s_aa);
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) h(a, b) *= inv_sqrt_s(a) * inv_sqrt_s(b);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success)
    throw ConfigError("pseudostate diagonalization failed (overlap too "
                      "ill-conditioned) for basis size N=" +
                      std::to_string(n) + ", lambda=" +
                      std::to_string(cfg.lambda));

  // Ground-state dipole vector t_m = int phi_m(r) r u_1s(r) dr with
  // u_1s = 2 r e^{-r}; closed form via L^{(2)} = L^{(3)} - L^{(3)} shift.
  const double s = (1.0 + cfg.lambda) / two_lam;
  Eigen::VectorXd t(n);
  for (int m = 0; m < n; ++m) {
    double i3 = detail::cubic_transform(m, s) - detail::cubic_transform(m - 1, s);
    t(m) = 2.0 * i3 / (two_lam * two_lam * two_lam * two_lam) * inv_sqrt_s(m);
  }

  Eigen::VectorXd d = solver.eigenvectors().transpose() * t;

  DipoleSpectrum out;
  out.energy.resize(n);
  out.strength.resize(n);
  for (int k = 0; k < n; ++k) {
    // eigenvalues are bounded below by the exact 2p level at -1/8,
    // so excitation energies stay >= 3/8
    out.energy[k] = solver.eigenvalues()(k) + 0.5;
    out.strength[k] = d(k) * d(k) / 3.0;
  }
  out.validate();
  return out;
}

// f(u) = sum_n s_n E_n / (E_n^2 + u^2/4): the dipole response evaluated on the
// imaginary frequency axis, halved so that f(0) = alpha_static / 2.
inline double reduced_polarizability(const DipoleSpectrum& spec, double u) {
  double acc = 0.0;
  double q = 0.25 * u * u;
  for (std::size_t i = 0; i < spec.size(); ++i)
    acc += spec.strength[i] * spec.energy[i] /
           (spec.energy[i] * spec.energy[i] + q);
  return acc;
}

inline double static_polarizability(const DipoleSpectrum& spec) {
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    acc += spec.strength[i] / spec.energy[i];
  return 2.0 * acc;
}

// C(t) = sum_n s_n e^{-E_n t}, the imaginary-time dipole autocorrelation.
inline double dipole_correlation(const DipoleSpectrum& spec, double t) {
  if (!(t >= 0.0)) throw ConfigError("correlation time must be non-negative");
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    acc += spec.strength[i] * std::exp(-spec.energy[i] * t);
  return acc;
}

inline double total_strength(const DipoleSpectrum& spec) {
  double acc = 0.0;
  for (double s : spec.strength) acc += s;
  return acc;
}

inline double strength_weighted_energy(const DipoleSpectrum& spec) {
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.size(); ++i)
    acc += spec.strength[i] * spec.energy[i];
  return acc;
}

}  // namespace vdwcp
