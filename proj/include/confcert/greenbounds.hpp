#pragma once

#include <cmath>
#include <stdexcept>

#include "confcert/certificate.hpp"

namespace confcert {

/// Green's function of B(0, R) in R^n with pole at the center, at radius |x|.
inline double green_ball(double x_norm, double radius, int n) {
  if (n < 3) throw std::domain_error("green_ball: n >= 3 required");
  if (!(x_norm > 0.0) || x_norm > radius) throw std::domain_error("green_ball: need 0 < |x| <= R");
  return (std::pow(x_norm, 2 - n) - std::pow(radius, 2 - n)) / ((n - 2) * sphere_area(n));
}

/// Harnack lower ratio u(x)/u(a) for positive harmonic u on B(a, R) at |x - a| = offset.
inline double harnack_factor(double offset, double radius, int n) {
  if (offset < 0.0 || !(offset < radius)) throw std::domain_error("harnack_factor: need 0 <= offset < R");
  return (radius - offset) * std::pow(radius, n - 2) / std::pow(radius + offset, n - 1);
}

/// exp(-n (R_O - R_C - R_I/2)^+ phi(R_I/2, R_C)); equals 1 when the pole ball already reaches a.
inline double chain_penalty(const RadiiTriple& r, int n) {
  if (n < 3) throw std::domain_error("chain_penalty: n >= 3 required");
  validate(r);
  return std::exp(-spatial_exponent(r, n));
}

struct GreenBoundReport {
  int n = 3;
  double d = 0.0;
  double harnack_factor = 0.0;       // d R_C^{n-2} / (2 R_C - d)^{n-1}
  double ball_minorant = 0.0;        // (2^{n-2} - 1) R_I^{2-n} / ((n-2) sigma_{n-1})
  double chain_penalty = 0.0;
  double density_ratio_bound = 0.0;  // lower bound for sigma_{n-1} g(x) / d
  double limit = 0.0;                // value of the bound as d -> 0
  bool pole_ball_case = false;       // R_O - R_C <= R_I/2, no chain needed
};

/// d -> 0 limit of the density ratio bound, in closed form.
inline double density_ratio_limit(const RadiiTriple& r, int n) {
  return spatial_threshold(n) / (r.curvature * std::pow(r.inner, n - 2)) * chain_penalty(r, n);
}

inline GreenBoundReport density_lower_bound(const RadiiTriple& r, int n, double d) {
  validate(r);
  if (n < 3) throw std::domain_error("density_lower_bound: n >= 3 required");
  if (!(d > 0.0) || !(d < r.curvature)) throw std::domain_error("density_lower_bound: need 0 < d < R_C");
  GreenBoundReport g;
  g.n = n;
  g.d = d;
  g.harnack_factor = harnack_factor(r.curvature - d, r.curvature, n);
  g.ball_minorant = (std::exp2(n - 2) - 1.0) * std::pow(r.inner, 2 - n) / ((n - 2) * sphere_area(n));
  g.chain_penalty = chain_penalty(r, n);
  g.density_ratio_bound = g.harnack_factor / d * sphere_area(n) * g.ball_minorant * g.chain_penalty;
  g.limit = density_ratio_limit(r, n);
  g.pole_ball_case = r.outer - r.curvature <= 0.5 * r.inner;
  return g;
}

}  // namespace confcert
