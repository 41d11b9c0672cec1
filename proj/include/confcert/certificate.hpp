#pragma once

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "confcert/geometry.hpp"

namespace confcert {

/// Logarithmic mean reciprocal: (log a - log b) / (a - b), with phi(a, a) = 1/a.
///
/// Within a relative gap of 1e-8 the three-term expansion about b is used to avoid
/// cancellation; its truncation error is O(gap^3 / b^4).
inline double phi(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("phi: arguments must be positive");
  constexpr double eta = 1e-8;
  const double diff = a - b;
  if (std::abs(diff) > eta * std::max(a, b)) {
    // a - b is exact here (Sterbenz), so log1p keeps full precision near a = b
    if (a <= 2.0 * b && b <= 2.0 * a) return std::log1p(diff / b) / diff;
    return (std::log(a) - std::log(b)) / diff;
  }
  const double m = b;
  return 1.0 / m - diff / (2.0 * m * m) + diff * diff / (3.0 * m * m * m);
}

/// Positive part.
inline double positive_part(double a) { return a > 0.0 ? a : 0.0; }

/// Surface area of the unit sphere in R^n: 2 pi^{n/2} / Gamma(n/2).
inline double sphere_area(int n) {
  if (n < 2) throw std::domain_error("sphere_area: dimension must be at least 2");
  if (n == 2) return 2.0 * std::numbers::pi;
  if (n == 3) return 4.0 * std::numbers::pi;
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::tgamma(0.5 * n);
}

struct DimensionContext {
  int n = 2;
  double sphere_area = 2.0 * std::numbers::pi;
  double density_threshold = 1.0 / (2.0 * std::numbers::pi);

  static DimensionContext of(int n) {
    const double s = confcert::sphere_area(n);
    return {n, s, 1.0 / s};
  }
};

/// Throws unless R_O >= R_I > 0 and R_O >= R_C > 0 (ordering checked to 1e-12 relative).
inline void validate(const RadiiTriple& r) {
  const auto finite = std::isfinite(r.outer) && std::isfinite(r.inner) && std::isfinite(r.curvature);
  if (!finite || !(r.inner > 0.0) || !(r.curvature > 0.0))
    throw std::invalid_argument("radii must be positive and finite");
  const double tol = 1e-12 * r.outer;
  if (r.inner > r.outer + tol || r.curvature > r.outer + tol)
    throw std::invalid_argument("radii ordering violated: need R_O >= R_I and R_O >= R_C");
}

struct PlanarCertificate {
  double lhs = 0.0;
  double scale_invariant_term = 0.0;
  double margin = 0.0;
  bool satisfied = false;
};

/// (R_O - R_C) phi(R_I, R_C) + (1/2) log R_C <= 0 certifies a conformal contraction onto the body.
inline PlanarCertificate certify_planar(const RadiiTriple& r) {
  validate(r);
  PlanarCertificate c;
  c.scale_invariant_term = (r.outer - r.curvature) * phi(r.inner, r.curvature);
  c.lhs = c.scale_invariant_term + 0.5 * std::log(r.curvature);
  c.margin = -c.lhs;
  c.satisfied = c.lhs <= 0.0;
  return c;
}

struct SpatialCertificate {
  int n = 3;
  double exponent = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;  // rhs - lhs
  bool satisfied = false;
};

/// (2^{n-2} - 1) / (2^{n-1} (n - 2)).
inline double spatial_threshold(int n) {
  if (n < 3) throw std::domain_error("spatial certificate needs n >= 3");
  return (std::exp2(n - 2) - 1.0) / (std::exp2(n - 1) * (n - 2));
}

/// n (R_O - R_C - R_I/2)^+ phi(R_I/2, R_C); invariant under scaling of the radii.
inline double spatial_exponent(const RadiiTriple& r, int n) {
  return n * positive_part(r.outer - r.curvature - 0.5 * r.inner) * phi(0.5 * r.inner, r.curvature);
}

/// R_C R_I^{n-2} exp(exponent) <= threshold(n) certifies harmonic-measure density >= 1/sigma_{n-1}.
inline SpatialCertificate certify_spatial(const RadiiTriple& r, const DimensionContext& ctx) {
  if (ctx.n < 3) throw std::domain_error("spatial certificate needs n >= 3");
  validate(r);
  SpatialCertificate c;
  c.n = ctx.n;
  c.exponent = spatial_exponent(r, ctx.n);
  c.lhs = r.curvature * std::pow(r.inner, ctx.n - 2) * std::exp(c.exponent);
  c.rhs = spatial_threshold(ctx.n);
  c.margin = c.rhs - c.lhs;
  c.satisfied = c.lhs <= c.rhs;
  return c;
}

/// Ball radius up to which (R, R, R) passes the spatial certificate.
inline double spatial_ball_threshold(int n) {
  return 0.5 * std::pow((std::exp2(n - 2) - 1.0) / (n - 2), 1.0 / (n - 1));
}

struct ScalingResult {
  double lambda_max = 0.0;
  double residual = 0.0;
};

/// Largest lambda with lambda * body passing the planar certificate:
/// exp(-2 (R_O - R_C) phi(R_I, R_C)) / R_C.
inline ScalingResult max_scaling_planar(const RadiiTriple& r) {
  validate(r);
  ScalingResult s;
  s.lambda_max = std::exp(-2.0 * (r.outer - r.curvature) * phi(r.inner, r.curvature)) / r.curvature;
  s.residual = std::abs(certify_planar(r.scaled(s.lambda_max)).lhs);
  return s;
}

/// Largest lambda with lambda * body passing the spatial certificate: (rhs / lhs)^{1/(n-1)}.
inline ScalingResult max_scaling_spatial(const RadiiTriple& r, const DimensionContext& ctx) {
  const auto c = certify_spatial(r, ctx);
  ScalingResult s;
  s.lambda_max = std::pow(c.rhs / c.lhs, 1.0 / (ctx.n - 1));
  const auto scaled = certify_spatial(r.scaled(s.lambda_max), ctx);
  s.residual = std::abs(scaled.lhs - scaled.rhs);
  return s;
}

}  // namespace confcert
