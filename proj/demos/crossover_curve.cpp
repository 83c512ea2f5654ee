// Scan the two-atom interaction h(R) across the retardation crossover and
// print where the curve leaves the R^-6 law and settles onto the R^-7 law.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "vdwcp/crossover.hpp"
#include "vdwcp/hydrogen_spectral.hpp"

int main(int argc, char** argv) {
  int points = 33;
  if (argc > 1) points = std::stoi(argv[1]);

  auto spec = vdwcp::build_dipole_spectrum();

  std::vector<double> rs;
  double lr0 = std::log(1e-2), lr1 = std::log(1e3);
  for (int i = 0; i < points; ++i)
    rs.push_back(std::exp(lr0 + (lr1 - lr0) * i / (points - 1)));

  auto curve = vdwcp::crossover_scan(spec, rs);

  std::printf("# a_vw = %.12g  a_cp = %.12g  r_star = %.6g\n", curve.a_vw,
              curve.a_cp, curve.r_star);
  std::printf("%12s %16s %14s %14s\n", "R", "h(R)", "h R^6 / a_vw",
              "h R^7 / a_cp");
  for (std::size_t i = 0; i < curve.r.size(); ++i) {
    std::printf("%12.5g %16.8e %14.6f %14.6f\n", curve.r[i], curve.h[i],
                curve.h_r6[i] / curve.a_vw, curve.h_r7[i] / curve.a_cp);
  }

  // the two reduced columns cross at R comparable to r_star
  for (std::size_t i = 1; i < curve.r.size(); ++i) {
    double d0 = curve.h_r6[i - 1] / curve.a_vw - curve.h_r7[i - 1] / curve.a_cp;
    double d1 = curve.h_r6[i] / curve.a_vw - curve.h_r7[i] / curve.a_cp;
    if (d0 > 0.0 && d1 <= 0.0) {
      std::printf("# equal-reduced-value point between R = %.5g and %.5g "
                  "(r_star = %.5g)\n",
                  curve.r[i - 1], curve.r[i], curve.r_star);
      break;
    }
  }
  return 0;
}
