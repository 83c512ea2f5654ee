#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "vdwcp/errors.hpp"
#include "vdwcp/smearing_profile.hpp"
#include "vdwcp/testing/oracles.hpp"
#include "vdwcp/vacuum_energy.hpp"

using namespace vdwcp;

TEST_CASE("self-energy constant for the compact profile") {
  auto res = a0(SmearingProfile::bump(1.0));
  CHECK(res.value == Catch::Approx(0.18328439079).epsilon(2e-9));
  CHECK(res.value_variant == Catch::Approx(0.26013919961).epsilon(2e-9));
  CHECK(res.value_variant > res.value);
  CHECK(res.error < 1e-8 * res.value);
  CHECK(res.profile == "bump");
  CHECK_NOTHROW(res.validate());
}

TEST_CASE("self-energy constant for the gaussian profile") {
  auto res = a0(SmearingProfile::gaussian(1.0));
  CHECK(res.value == Catch::Approx(0.008208100430729658).epsilon(2e-9));
  CHECK(res.value_variant > res.value);
  CHECK(res.profile == "gaussian");
}

TEST_CASE("two-photon integral input validation") {
  auto b = SmearingProfile::bump(1.0);
  CHECK_THROWS_AS(reduced_two_photon_integral(b, -1.0, 1.0), ConfigError);
  CHECK_THROWS_AS(reduced_two_photon_integral(b, 1.0, 0.0), ConfigError);
  CHECK_THROWS_AS(reduced_two_photon_integral(b, 1.0, -0.5), ConfigError);
  // vanishing recoil term is allowed; frequency term keeps D positive
  CHECK(reduced_two_photon_integral(b, 0.0, 1.0) > 0.0);
}

TEST_CASE("self-energy scaling covariance in the profile radius") {
  // with rho_hat_beta(k) = rho_hat_1(beta k):
  //   I_beta(1, 1) = beta^{-2} I_1(1, beta)
  double beta = 1.7;
  double lhs = 2.0 * a0(SmearingProfile::bump(beta)).value;
  double rhs = reduced_two_photon_integral(SmearingProfile::bump(1.0), 1.0,
                                           beta) /
               (beta * beta);
  CHECK(lhs == Catch::Approx(rhs).epsilon(1e-10));
}

TEST_CASE("variance rate reduces to 2 a0 at delta = 0") {
  auto b = SmearingProfile::bump(1.0);
  double ref = 2.0 * a0(b).value;
  for (double alpha : {0.5, 0.2, 0.05}) {
    CHECK(action_variance_rate(b, alpha, 0.0) ==
          Catch::Approx(ref).epsilon(1e-13));
  }
}

TEST_CASE("variance rate follows its defining identity") {
  auto b = SmearingProfile::bump(1.0);
  double alpha = 0.3, delta = 0.5;
  double direct = std::pow(alpha, 3.0 * delta) *
                  reduced_two_photon_integral(b, std::pow(alpha, delta), 1.0);
  CHECK(action_variance_rate(b, alpha, delta) ==
        Catch::Approx(direct).epsilon(1e-14));

  CHECK_THROWS_AS(action_variance_rate(b, 0.0, 0.5), ConfigError);
  CHECK_THROWS_AS(action_variance_rate(b, 1.0, 0.5), ConfigError);
  CHECK_THROWS_AS(action_variance_rate(b, 0.5, 1.0), ConfigError);
  CHECK_THROWS_AS(action_variance_rate(b, 0.5, -0.1), ConfigError);
}

TEST_CASE("six-dimensional Monte Carlo agrees with the quadrature") {
  for (auto p : {SmearingProfile::bump(1.0), SmearingProfile::gaussian(1.0)}) {
    double quad = a0(p).value;
    auto mc = testing::a0_mc_estimate(p, 200000, 5);
    INFO("profile=" << p.name() << " quad=" << quad << " mc=" << mc.value
                    << " se=" << mc.se);
    CHECK(mc.se > 0.0);
    CHECK(std::abs(mc.value - quad) < 3.5 * mc.se);
  }
}

TEST_CASE("A0Result consistency guards") {
  A0Result bad;
  bad.value = -1.0;
  bad.value_variant = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConsistencyError);
  bad.value = 2.0;
  bad.value_variant = 1.0;  // ordering violated
  CHECK_THROWS_AS(bad.validate(), ConsistencyError);
}
