#include "kising/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kising {

namespace {

constexpr double pi = std::numbers::pi;

double mode_energy(double k, double jx, double jy) {
  const double a = (jx + jy) * std::cos(k);
  const double b = (jx - jy) * std::sin(k);
  return 2.0 * std::hypot(a, b);
}

}  // namespace

DispersionPoint xy_mode_energy(double k, const CouplingParams& c) {
  c.validate();
  return {k, mode_energy(k, 2.0 * c.lambda, c.j)};
}

double xy_ground_energy(int n, const CouplingParams& c) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("ladder column count must be even and >= 2");
  }
  c.validate();
  const int l = 2 * n;
  const double jx = 2.0 * c.lambda;
  const double jy = c.j;
  double e_antiperiodic = 0.0;
  double e_periodic = 0.0;
  for (int m = 0; m < l; ++m) {
    e_antiperiodic -= 0.5 * mode_energy(pi * (2 * m + 1) / l, jx, jy);
    e_periodic -= 0.5 * mode_energy(2.0 * pi * m / l, jx, jy);
  }
  return std::min(e_antiperiodic, e_periodic) - c.k * n;
}

double xy_ground_energy_per_spin_limit(const CouplingParams& c,
                                       bool include_constant) {
  c.validate();
  const double jx = 2.0 * c.lambda;
  const double jy = c.j;
  // Midpoint rule; the integrand is smooth except for |cos|-type kinks at
  // the isotropic point, which midpoint still handles at this resolution.
  const int n_points = 1 << 21;
  double acc = 0.0;
  for (int i = 0; i < n_points; ++i) {
    const double k = -pi + (2.0 * pi) * (i + 0.5) / n_points;
    acc += mode_energy(k, jx, jy);
  }
  const double integral = acc * (2.0 * pi / n_points);
  double e = -integral / (4.0 * pi);
  if (include_constant) e -= 0.5 * c.k;
  return e;
}

double mean_field_energy(double theta, double phi, const CouplingParams& c) {
  const double ct = std::cos(theta);
  return -c.j * std::sin(theta) * std::cos(phi) - 4.0 * c.lambda * ct * ct;
}

double mean_field_numeric_minimum(const CouplingParams& c) {
  c.validate();
  const int n_theta = 512;
  const int n_phi = 128;
  double best = mean_field_energy(0.0, 0.0, c);
  double best_theta = 0.0;
  double best_phi = 0.0;
  for (int i = 0; i <= n_theta; ++i) {
    const double theta = pi * i / n_theta;
    for (int jj = 0; jj < n_phi; ++jj) {
      const double phi = 2.0 * pi * jj / n_phi;
      const double e = mean_field_energy(theta, phi, c);
      if (e < best) {
        best = e;
        best_theta = theta;
        best_phi = phi;
      }
    }
  }
  auto ternary = [&](double& coord, double span, bool is_theta) {
    double lo = coord - span;
    double hi = coord + span;
    for (int iter = 0; iter < 200; ++iter) {
      const double m1 = lo + (hi - lo) / 3.0;
      const double m2 = hi - (hi - lo) / 3.0;
      const double e1 = is_theta ? mean_field_energy(m1, best_phi, c)
                                 : mean_field_energy(best_theta, m1, c);
      const double e2 = is_theta ? mean_field_energy(m2, best_phi, c)
                                 : mean_field_energy(best_theta, m2, c);
      if (e1 < e2) {
        hi = m2;
      } else {
        lo = m1;
      }
    }
    coord = 0.5 * (lo + hi);
  };
  for (int round = 0; round < 3; ++round) {
    ternary(best_theta, pi / n_theta, true);
    ternary(best_phi, 2.0 * pi / n_phi, false);
  }
  return mean_field_energy(best_theta, best_phi, c);
}

MeanFieldResult mean_field(const CouplingParams& c) {
  c.validate();
  MeanFieldResult out;
  out.phi = 0.0;
  out.critical_lambda = c.j / 8.0;
  if (c.lambda <= out.critical_lambda) {
    out.theta = pi / 2.0;
    out.x_expectation = 1.0;
    out.z_expectation_branches = {0.0, 0.0};
    out.energy_per_site = -c.j;
  } else {
    const double s = c.j / (8.0 * c.lambda);
    out.theta = std::asin(s);
    out.x_expectation = s;
    const double z = std::sqrt(1.0 - s * s);
    out.z_expectation_branches = {z, -z};
    out.energy_per_site = -4.0 * c.lambda - c.j * c.j / (16.0 * c.lambda);
  }
  const double numeric = mean_field_numeric_minimum(c);
  if (std::abs(numeric - out.energy_per_site) >
      1e-8 * std::max(1.0, std::abs(out.energy_per_site))) {
    throw std::logic_error("mean-field closed form disagrees with minimizer");
  }
  return out;
}

double wilson_kitaev_estimate(double lambda_over_j,
                              const WilsonRegion& region) {
  if (lambda_over_j < 0.0) {
    throw std::invalid_argument("coupling ratio must be non-negative");
  }
  return std::exp(-2.0 * lambda_over_j * lambda_over_j *
                  static_cast<double>(region.perimeter));
}

bool wilson_kitaev_estimate_valid(double lambda_over_j) {
  return lambda_over_j >= 0.0 && lambda_over_j <= wilson_kitaev_validity_limit;
}

double wilson_ising_estimate(double lambda_over_j, const WilsonRegion& region) {
  if (lambda_over_j <= 0.0) {
    throw std::invalid_argument("coupling ratio must be positive");
  }
  const double base =
      2.0 * lambda_over_j / (1.0 + lambda_over_j * lambda_over_j);
  return std::pow(base, static_cast<double>(region.area()));
}

bool wilson_ising_estimate_valid(double lambda_over_j) {
  return lambda_over_j >= 1.0;
}

OriginFit fit_through_origin(const std::vector<double>& x,
                             const std::vector<double>& y) {
  if (x.size() != y.size() || x.empty()) {
    throw std::invalid_argument("fit needs matching non-empty samples");
  }
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit abscissae are all zero");
  }
  OriginFit fit;
  fit.slope = sxy / sxx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - fit.slope * x[i];
    ss += r * r;
  }
  fit.rms_residual = std::sqrt(ss / static_cast<double>(x.size()));
  return fit;
}

}  // namespace kising
