#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vdwcp/errors.hpp"
#include "vdwcp/quadrature.hpp"

using namespace vdwcp;

TEST_CASE("gauss-legendre rules are symmetric and normalized") {
  for (int n : {2, 7, 16, 64, 255}) {
    const auto& rule = gauss_legendre(n);
    REQUIRE(rule.x.size() == static_cast<std::size_t>(n));
    double wsum = 0.0;
    for (double w : rule.w) wsum += w;
    CHECK(std::abs(wsum - 2.0) < 1e-14);
    for (int i = 0; i < n; ++i) {
      CHECK(rule.x[i] == Catch::Approx(-rule.x[n - 1 - i]).margin(1e-15));
      CHECK(rule.w[i] == Catch::Approx(rule.w[n - 1 - i]).margin(1e-15));
    }
  }
  CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
  CHECK_THROWS_AS(gauss_legendre(1025), ConfigError);
}

TEST_CASE("gauss-legendre integrates polynomials of degree 2n-1 exactly") {
  // int_{-1}^{1} x^k dx = 2/(k+1) for even k
  for (int n : {4, 9}) {
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double val = integrate_gauss([&](double x) { return std::pow(x, k); },
                                   -1.0, 1.0, n);
      double exact = (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0;
      CHECK(std::abs(val - exact) < 1e-13);
    }
  }
}

TEST_CASE("adaptive quadrature on finite intervals") {
  auto r1 = integrate_adaptive([](double x) { return std::sin(x); }, 0.0,
                               3.14159265358979323846);
  CHECK(std::abs(r1.value - 2.0) < 1e-13);
  CHECK(r1.error < 1e-10);

  // moderately sharp peak
  auto r2 = integrate_adaptive(
      [](double x) { return 1.0 / (1e-4 + (x - 0.3) * (x - 0.3)); }, 0.0, 1.0,
      1e-12, 1e-12);
  double w = 1e-2;
  double exact = (std::atan(0.7 / w) + std::atan(0.3 / w)) / w;
  CHECK(std::abs(r2.value - exact) / exact < 1e-11);

  CHECK(integrate_adaptive([](double x) { return x; }, 2.0, 2.0).value == 0.0);
  CHECK_THROWS_AS(
      integrate_adaptive([](double x) { return x; }, 1.0, 0.0),
      ConfigError);
}

TEST_CASE("adaptive quadrature reports an exhausted budget") {
  CHECK_THROWS_AS(integrate_adaptive([](double x) { return std::sin(1e4 * x); },
                                     0.0, 1.0, 1e-14, 1e-14, 8),
                  AccuracyError);
  try {
    integrate_adaptive([](double x) { return std::sin(1e4 * x); }, 0.0, 1.0,
                       1e-14, 1e-14, 8);
  } catch (const AccuracyError& e) {
    CHECK(e.achieved_error > e.requested_tolerance);
  }
}

TEST_CASE("semi-infinite integrals of decaying functions") {
  auto r1 = integrate_semi_infinite([](double x) { return std::exp(-x); });
  CHECK(std::abs(r1.value - 1.0) < 1e-10);

  auto r2 = integrate_semi_infinite(
      [](double x) { return x * x * x * std::exp(-x); });
  CHECK(std::abs(r2.value - 6.0) < 1e-9);

  auto r3 = integrate_semi_infinite([](double x) { return std::exp(-x * x); });
  double half_sqrt_pi = 0.88622692545275801365;
  CHECK(std::abs(r3.value - half_sqrt_pi) < 1e-10);

  // algebraic tail, no exponential cutoff
  auto r4 = integrate_semi_infinite([](double x) { return 1.0 / (1.0 + x * x); });
  CHECK(std::abs(r4.value - 1.57079632679489661923) < 1e-8);
}

TEST_CASE("oscillatory integral with exponential damping") {
  // int_0^inf e^{-a x} sin(b x) dx = b / (a^2 + b^2)
  double a = 0.1, b = 5.0;
  constexpr double pi = 3.14159265358979323846;
  auto f = [&](double x) { return std::exp(-a * x) * std::sin(b * x); };
  auto r = integrate_oscillatory(f, 0.0, pi / b);
  double exact = b / (a * a + b * b);
  CHECK(std::abs(r.value - exact) < 1e-10);
  CHECK(std::abs(r.value - exact) <= r.error + 1e-12);

  QuadratureSettings tight;
  tight.max_oscillatory_panels = 8;
  CHECK_THROWS_AS(integrate_oscillatory(f, 0.0, pi / b, tight), AccuracyError);
  CHECK_THROWS_AS(integrate_oscillatory(f, 0.0, 0.0), ConfigError);
}

TEST_CASE("quadrature settings validation") {
  QuadratureSettings qs;
  CHECK_NOTHROW(qs.validate());

  auto bad = [](auto&& mutate) {
    QuadratureSettings q;
    mutate(q);
    CHECK_THROWS_AS(q.validate(), ConfigError);
  };
  bad([](QuadratureSettings& q) { q.nodes = 1; });
  bad([](QuadratureSettings& q) { q.nodes = 300; });
  bad([](QuadratureSettings& q) { q.abs_tol = 0.0; });
  bad([](QuadratureSettings& q) { q.abs_tol = 1.0; });
  bad([](QuadratureSettings& q) { q.rel_tol = -1e-9; });
  bad([](QuadratureSettings& q) { q.exp_transform_scale = 0.0; });
  bad([](QuadratureSettings& q) { q.max_subdivisions = 2; });
  bad([](QuadratureSettings& q) { q.max_tail_panels = 1; });
  bad([](QuadratureSettings& q) { q.split_points = {1.0, 1.0}; });
  bad([](QuadratureSettings& q) { q.split_points = {-1.0, 2.0}; });
}
