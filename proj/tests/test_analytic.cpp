#include <cmath>
#include <vector>

#include <doctest.h>

#include "kising/analytic.hpp"
#include "kising/effective_maps.hpp"
#include "kising/exact_diag.hpp"
#include "kising/lattice.hpp"
#include "kising/model.hpp"

using kising::CouplingParams;
using kising::fit_through_origin;
using kising::mean_field;
using kising::wilson_ising_estimate;
using kising::wilson_kitaev_estimate;
using kising::xy_ground_energy;

TEST_CASE("mode energy endpoints") {
  const CouplingParams c{1.0, 1.0, 0.5};  // isotropic: Jx = Jy = 1
  CHECK(kising::xy_mode_energy(0.0, c).energy == doctest::Approx(4.0));
  CHECK(kising::xy_mode_energy(M_PI / 2, c).energy ==
        doctest::Approx(0.0).epsilon(1e-12));
  const CouplingParams zz{1.0, 1.0, 0.0};
  // lambda 0 flattens the band at 2J
  for (double k : {0.1, 1.0, 2.5})
    CHECK(kising::xy_mode_energy(k, zz).energy == doctest::Approx(2.0));
}

TEST_CASE("free-fermion energies match dense chain diagonalization") {
  for (int n : {2, 4}) {
    for (double lambda : {0.0, 0.1, 0.5, 1.0, 3.0}) {
      const CouplingParams c{1.0, 1.0, lambda};
      const auto dense =
          kising::dense_spectrum(kising::ladder_effective(n, c));
      CHECK(xy_ground_energy(n, c) ==
            doctest::Approx(dense.eigenvalues[0]).epsilon(1e-11));
    }
  }
  CHECK(xy_ground_energy(4, {1, 1, 0}) == doctest::Approx(-12.0));
  CHECK_THROWS_AS(xy_ground_energy(3, {1, 1, 0.5}), std::invalid_argument);
}

TEST_CASE("finite chains approach the quadrature limit") {
  const CouplingParams c{1.0, 1.0, 0.5};
  const double limit = kising::xy_ground_energy_per_spin_limit(c);
  // isotropic closed form: -4J/pi - K/2
  CHECK(limit == doctest::Approx(-4.0 / M_PI - 0.5).epsilon(1e-7));
  const double e64 = xy_ground_energy(64, c) / 128.0;
  const double e256 = xy_ground_energy(256, c) / 512.0;
  CHECK(std::abs(e256 - limit) < 1e-3);
  CHECK(std::abs(e256 - limit) < std::abs(e64 - limit));
  // away from the isotropic point convergence is exponential-grade
  const CouplingParams gapped{1.0, 1.0, 1.5};
  const double limit_gapped = kising::xy_ground_energy_per_spin_limit(gapped);
  CHECK(std::abs(xy_ground_energy(64, gapped) / 128.0 - limit_gapped) < 1e-8);
}

TEST_CASE("mean-field minimum switches branch at an eighth") {
  const auto weak = mean_field({1, 1, 0.05});
  CHECK(weak.x_expectation == doctest::Approx(1.0));
  CHECK(weak.z_expectation_branches.first == doctest::Approx(0.0));
  CHECK(weak.energy_per_site == doctest::Approx(-1.0));
  CHECK(weak.critical_lambda == doctest::Approx(0.125));

  const auto strong = mean_field({1, 1, 0.25});
  CHECK(strong.x_expectation == doctest::Approx(0.5));
  CHECK(strong.z_expectation_branches.first ==
        doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(strong.z_expectation_branches.second ==
        doctest::Approx(-std::sqrt(3.0) / 2));
  CHECK(strong.energy_per_site == doctest::Approx(-1.25));

  // polarized exactly up to the branch point
  CHECK(mean_field({1, 1, 0.125}).x_expectation == doctest::Approx(1.0));
  CHECK(mean_field({1, 1, 0.125 * (1 + 1e-6)}).x_expectation < 1.0);

  // energies join continuously at the transition
  const double below = mean_field({1, 1, 0.125 * (1 - 1e-9)}).energy_per_site;
  const double above = mean_field({1, 1, 0.125 * (1 + 1e-9)}).energy_per_site;
  CHECK(below == doctest::Approx(above).epsilon(1e-8));
}

TEST_CASE("closed-form mean field agrees with the numeric minimum everywhere") {
  for (int i = 1; i <= 40; ++i) {
    const CouplingParams c{1.0, 1.0, i * 0.025};
    const auto mf = mean_field(c);
    const double numeric = kising::mean_field_numeric_minimum(c);
    CHECK(mf.energy_per_site == doctest::Approx(numeric).epsilon(1e-8));
    // monotone order parameter
    CHECK(mf.x_expectation ==
          doctest::Approx(std::min(1.0, 1.0 / (8 * c.lambda))).epsilon(1e-12));
  }
}

TEST_CASE("mean-field surface evaluates the ansatz energy") {
  const CouplingParams c{2.0, 1.0, 0.5};
  CHECK(kising::mean_field_energy(M_PI / 2, 0.0, c) == doctest::Approx(-2.0));
  CHECK(kising::mean_field_energy(0.0, 0.0, c) == doctest::Approx(-2.0));
  CHECK(kising::mean_field_energy(M_PI / 2, M_PI, c) == doctest::Approx(2.0));
}

TEST_CASE("loop estimates decay by perimeter or area") {
  kising::WilsonRegion r;
  r.vertices = {0};
  r.perimeter = 8;
  r.vertices.resize(4);
  CHECK(wilson_kitaev_estimate(0.1, r) ==
        doctest::Approx(std::exp(-0.16)).epsilon(1e-12));
  CHECK(wilson_kitaev_estimate(0.0, r) == doctest::Approx(1.0));
  CHECK(wilson_ising_estimate(5.0, r) ==
        doctest::Approx(0.0218829874).epsilon(1e-8));
  CHECK(wilson_ising_estimate(1.0, r) == doctest::Approx(1.0));

  // doubling the perimeter squares the perimeter-law estimate
  kising::WilsonRegion half = r, full = r;
  half.perimeter = 6;
  full.perimeter = 12;
  CHECK(wilson_kitaev_estimate(0.2, full) ==
        doctest::Approx(std::pow(wilson_kitaev_estimate(0.2, half), 2)));
  // doubling the area squares the area-law estimate
  kising::WilsonRegion a2 = r, a4 = r;
  a2.vertices.resize(2);
  a4.vertices.resize(4);
  CHECK(wilson_ising_estimate(3.0, a4) ==
        doctest::Approx(std::pow(wilson_ising_estimate(3.0, a2), 2)));

  CHECK(kising::wilson_kitaev_estimate_valid(0.25));
  CHECK_FALSE(kising::wilson_kitaev_estimate_valid(0.35));
  CHECK(kising::wilson_ising_estimate_valid(1.0));
  CHECK_FALSE(kising::wilson_ising_estimate_valid(0.9));
  CHECK_THROWS_AS(wilson_kitaev_estimate(-0.1, r), std::invalid_argument);
  CHECK_THROWS_AS(wilson_ising_estimate(0.0, r), std::invalid_argument);
  CHECK_THROWS_AS(wilson_ising_estimate(-1.0, r), std::invalid_argument);
}

TEST_CASE("reference coupling ratio is a constant, not a fit") {
  CHECK(kising::itf_critical_coupling_ratio == 6.0);
}

TEST_CASE("through-origin fits recover slope and report scatter") {
  const auto exact = fit_through_origin({1, 2, 3}, {2, 4, 6});
  CHECK(exact.slope == doctest::Approx(2.0));
  CHECK(exact.rms_residual == doctest::Approx(0.0));
  const auto noisy = fit_through_origin({1, 2}, {1, 4});
  // slope = (1*1 + 2*4) / (1 + 4)
  CHECK(noisy.slope == doctest::Approx(1.8));
  CHECK(noisy.rms_residual > 0.0);
  CHECK_THROWS_AS(fit_through_origin({1, 2}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(fit_through_origin({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(fit_through_origin({0, 0}, {1, 2}), std::invalid_argument);
}

TEST_CASE("coupling validation is enforced by the analytic layer") {
  CHECK_THROWS_AS(xy_ground_energy(4, {0.0, 1.0, 0.5}), std::invalid_argument);
  CHECK_THROWS_AS(mean_field({1.0, 1.0, -0.2}), std::invalid_argument);
}
