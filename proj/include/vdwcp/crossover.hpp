#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vdwcp/errors.hpp"
#include "vdwcp/hydrogen_spectral.hpp"
#include "vdwcp/parallel.hpp"
#include "vdwcp/quadrature.hpp"

namespace vdwcp {

// ---------------------------------------------------------------------------
// Dispersion coefficients.

struct VdwRoutes {
  double closed_form;  // 6 sum_{n,m} s_n s_m / (E_n + E_m)
  double quadrature;   // 6 int_0^inf C(t)^2 dt
};

inline VdwRoutes vdw_coefficient_routes(const DipoleSpectrum& spec,
                                        const QuadratureSettings& qs = {}) {
  spec.validate();
  VdwRoutes out{0.0, 0.0};
  for (std::size_t n = 0; n < spec.size(); ++n)
    for (std::size_t m = 0; m < spec.size(); ++m)
      out.closed_form += spec.strength[n] * spec.strength[m] /
                         (spec.energy[n] + spec.energy[m]);
  out.closed_form *= 6.0;

  auto f = [&](double t) {
    double c = dipole_correlation(spec, t);
    return c * c;
  };
  out.quadrature = 6.0 * integrate_semi_infinite(f, qs).value;
  return out;
}

// Strength of the non-retarded R^{-6} attraction. Both evaluation routes must
// agree to 1e-8 relative; disagreement means the quadrature engine and the
// spectral sums have diverged, which is an internal fault, not a user error.
inline double vdw_coefficient(const DipoleSpectrum& spec,
                              const QuadratureSettings& qs = {}) {
  auto r = vdw_coefficient_routes(spec, qs);
  double rel = std::abs(r.closed_form - r.quadrature) /
               std::max(std::abs(r.closed_form), 1e-300);
  if (rel > 1e-8)
    throw ConsistencyError(
        "time-domain and closed-form dispersion coefficients disagree: " +
        std::to_string(r.closed_form) + " vs " + std::to_string(r.quadrature));
  return r.closed_form;
}

// Strength of the retarded R^{-7} attraction: (23 / 4 pi) alpha_static^2.
inline double cp_coefficient(const DipoleSpectrum& spec) {
  double a = static_polarizability(spec);
  constexpr double pi = 3.14159265358979323846;
  return 23.0 / (4.0 * pi) * a * a;
}

// ---------------------------------------------------------------------------
// Crossover function
//   h(R) = pi^{-1} int_0^inf du f(u)^2 e^{-R u}
//          * { u^4/(8 R^2) + u^3/(2 R^3) + 5 u^2/(2 R^4) + 6 u/R^5 + 6/R^6 },
// interpolating between a_vw R^{-6} (small R) and a_cp R^{-7} (large R).

inline double crossover_function(const DipoleSpectrum& spec, double r,
                                 const QuadratureSettings& qs = {}) {
  spec.validate();
  if (!(r > 0.0)) throw ConfigError("crossover function requires R > 0");
  constexpr double pi = 3.14159265358979323846;
  const double r2 = r * r;
  const double r3 = r2 * r, r4 = r2 * r2, r5 = r4 * r, r6 = r4 * r2;
  auto integrand = [&](double u) {
    double f = reduced_polarizability(spec, u);
    double u2 = u * u;
    double poly = u2 * u2 / (8.0 * r2) + u2 * u / (2.0 * r3) +
                  2.5 * u2 / r4 + 6.0 * u / r5 + 6.0 / r6;
    return f * f * std::exp(-r * u) * poly;
  };
  // the weight peaks near u ~ 1/R at large R: bring the split points in, and
  // scale the absolute floor down with the R^-7 magnitude of the result so the
  // stopping rule stays effectively relative
  QuadratureSettings local = qs;
  if (r > 2.0 * local.split_points.front())
    local.split_points = {1.0 / r, 10.0 / r, 50.0 / r};
  local.abs_tol = qs.abs_tol * std::min(1.0, std::pow(r, -7));
  return integrate_semi_infinite(integrand, local).value / pi;
}

struct CrossoverCurve {
  std::vector<double> r;
  std::vector<double> h;
  std::vector<double> h_r6;
  std::vector<double> h_r7;
  double a_vw = 0.0;
  double a_cp = 0.0;
  double r_star = 0.0;  // a_cp / a_vw, the crossover length
};

inline CrossoverCurve crossover_scan(const DipoleSpectrum& spec,
                                     const std::vector<double>& r_values,
                                     const QuadratureSettings& qs = {}) {
  spec.validate();
  double prev = 0.0;
  for (double r : r_values) {
    if (!(r > 0.0)) throw ConfigError("scan radii must be positive");
    if (r < prev) throw ConfigError("scan radii must be sorted ascending");
    prev = r;
  }
  CrossoverCurve curve;
  curve.a_vw = vdw_coefficient(spec, qs);
  curve.a_cp = cp_coefficient(spec);
  curve.r_star = curve.a_cp / curve.a_vw;
  curve.r = r_values;
  curve.h.resize(r_values.size());
  parallel_for(r_values.size(), [&](std::size_t i) {
    curve.h[i] = crossover_function(spec, r_values[i], qs);
  });
  curve.h_r6.resize(r_values.size());
  curve.h_r7.resize(r_values.size());
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    double r6 = std::pow(r_values[i], 6);
    curve.h_r6[i] = curve.h[i] * r6;
    curve.h_r7[i] = curve.h[i] * r6 * r_values[i];
  }
  return curve;
}

// ---------------------------------------------------------------------------
// Regime asymptotics of the two-atom ground-state energy at separation
// alpha^{-gamma} R, one branch per range of gamma. Branch selection compares
// gamma exactly; external data (helium energy, diatomic curve, self-energy
// constant) must be supplied where a branch needs it.

struct RegimeConstants {
  std::optional<double> e_he;                 // helium ground-state energy
  std::map<double, double> e2r_table;         // R -> E_{2,R}
  std::optional<double> a0;                   // photon self-energy constant

  void validate() const {
    if (e_he && !(*e_he < 0.0))
      throw ConfigError("helium ground-state energy must be negative");
    for (const auto& [r, e] : e2r_table)
      if (!(r > 0.0)) throw ConfigError("E_2R table radii must be positive");
  }
};

struct RegimeResult {
  double value;
  std::string branch;
  std::string note;
};

namespace detail {

inline double e2r_lookup(const std::map<double, double>& table, double r) {
  if (table.empty())
    throw ConfigError("branch gamma=1 requires an E_2R table (none supplied)");
  auto it = table.find(r);
  if (it != table.end()) return it->second;
  auto hi = table.upper_bound(r);
  if (hi == table.begin() || hi == table.end())
    throw ConfigError("R outside the supplied E_2R table range");
  auto lo = std::prev(hi);
  double w = (r - lo->first) / (hi->first - lo->first);
  return lo->second + w * (hi->second - lo->second);
}

}  // namespace detail

inline RegimeResult regime_energy(double alpha, double gamma, double r,
                                  const DipoleSpectrum& spec,
                                  const RegimeConstants& consts,
                                  const QuadratureSettings& qs = {}) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("regime energy requires alpha in (0, 1)");
  if (!(gamma >= 0.0)) throw ConfigError("regime energy requires gamma >= 0");
  if (!(r > 0.0)) throw ConfigError("regime energy requires R > 0");
  consts.validate();

  auto need = [&](const std::optional<double>& v, const char* what) {
    if (!v)
      throw ConfigError(std::string("branch requires external datum: ") + what);
    return *v;
  };

  RegimeResult out;
  if (gamma < 1.0) {
    // Coulomb-dominated scales. The gamma=0 display smears the Coulomb term;
    // the smeared potential equals 1/R exactly beyond twice the smearing
    // radius, so the point form is used for both branches here.
    double e_he = need(consts.e_he, "helium ground-state energy e_he");
    double a0 = need(consts.a0, "self-energy constant a0");
    out.value = std::pow(alpha, 1.0 + gamma) / r +
                alpha * alpha * (e_he - 2.0 * a0);
    out.branch = gamma == 0.0 ? "gamma=0" : "0<gamma<1";
    out.note = "leading Coulomb repulsion plus twice-ionized binding offset";
  } else if (gamma == 1.0) {
    double a0 = need(consts.a0, "self-energy constant a0");
    double e2r = detail::e2r_lookup(consts.e2r_table, r);
    out.value = alpha * alpha * (e2r - 2.0 * a0);
    out.branch = "gamma=1";
    out.note = "diatomic Born-Oppenheimer value from the supplied table";
  } else if (gamma < 2.0) {
    double a_vw = vdw_coefficient(spec, qs);
    out.value = -std::pow(alpha, 6.0 * gamma - 4.0) * a_vw / std::pow(r, 6);
    out.branch = "1<gamma<2";
    out.note =
        "attractive sign convention: the non-retarded dispersion branch is "
        "written -alpha^(6 gamma - 4) a_vw / R^6 so that it matches the "
        "small-R limit of the crossover branch; the value excludes the two "
        "single-atom self-energies";
  } else if (gamma == 2.0) {
    double h = crossover_function(spec, r, qs);
    out.value = -std::pow(alpha, 8) * h;
    out.branch = "gamma=2";
    out.note = "crossover branch; the value excludes the two single-atom "
               "self-energies";
  } else {
    double a_cp = cp_coefficient(spec);
    out.value = -std::pow(alpha, 7.0 * gamma - 6.0) * a_cp / std::pow(r, 7);
    out.branch = "gamma>2";
    out.note = "fully retarded branch; the value excludes the two "
               "single-atom self-energies";
  }
  return out;
}

}  // namespace vdwcp
