#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <utility>

#include "confcert/certificate.hpp"
#include "confcert/geometry.hpp"

namespace confcert {

enum class MetricKind { hyperbolic, quasihyperbolic_upper };

template <std::size_t N>
struct MetricValue {
  double value = 0.0;
  MetricKind kind = MetricKind::hyperbolic;
  std::pair<Vec<N>, Vec<N>> endpoints{};
};

/// Hyperbolic distance from the origin in the unit disk: (1/2) log((1 + |z|) / (1 - |z|)).
inline MetricValue<2> hyperbolic_disk(const Vec2& z) {
  const double t = norm(z);
  if (!(t < 1.0)) throw std::domain_error("hyperbolic_disk: point must lie in the unit disk");
  return {std::atanh(t), MetricKind::hyperbolic, {Vec2{}, z}};
}

/// Hyperbolic distance from the center of D(a, R): (1/2) log((R + |z - a|) / (R - |z - a|)).
inline MetricValue<2> hyperbolic_offcenter(const Vec2& a, double radius, const Vec2& z) {
  const double t = distance(z, a);
  if (!(radius > 0.0) || !(t < radius)) throw std::domain_error("hyperbolic_offcenter: point outside the disk");
  return {std::atanh(t / radius), MetricKind::hyperbolic, {a, z}};
}

/// Two-point hyperbolic distance in the unit disk through the pseudo-hyperbolic
/// distance t = |z - w| / |1 - conj(z) w|.
inline MetricValue<2> hyperbolic_disk_pair(const Vec2& z, const Vec2& w) {
  if (!(norm(z) < 1.0) || !(norm(w) < 1.0)) throw std::domain_error("hyperbolic_disk_pair: points must lie in the unit disk");
  const std::complex<double> zc(z[0], z[1]), wc(w[0], w[1]);
  const double t = std::abs(zc - wc) / std::abs(1.0 - std::conj(zc) * wc);
  return {std::atanh(t), MetricKind::hyperbolic, {z, w}};
}

namespace detail {

template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                        int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

/// Adaptive Simpson with Richardson correction; `rel_tol` is relative to a coarse estimate.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol, int max_depth = 40) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, rel_tol * std::abs(whole), max_depth);
}

}  // namespace detail

/// Upper bound for the quasihyperbolic distance: integral of |d zeta| / dist(zeta, boundary)
/// along the straight segment [x, y], which must stay inside the body.
template <std::size_t N>
MetricValue<N> quasihyperbolic_segment_bound(const RoundedConvexBody<N>& body, const Vec<N>& x, const Vec<N>& y) {
  constexpr int checks = 16;
  for (int i = 0; i <= checks; ++i) {
    const double t = static_cast<double>(i) / checks;
    if (!(body.signed_distance(x + t * (y - x)).distance > 0.0))
      throw std::domain_error("quasihyperbolic_segment_bound: segment leaves the domain");
  }
  MetricValue<N> out{0.0, MetricKind::quasihyperbolic_upper, {x, y}};
  const double len = distance(x, y);
  if (len == 0.0) return out;
  auto integrand = [&](double t) { return len / body.signed_distance(x + t * (y - x)).distance; };
  out.value = detail::integrate(integrand, 0.0, 1.0, 1e-10);
  return out;
}

/// |a| phi(R_I, R_C): the bound obtained by integrating 1/(t R_C + (1-t) R_I) from 0 to a.
inline double quasihyperbolic_cone_bound(const RadiiTriple& r, double a_norm) {
  if (a_norm < 0.0 || a_norm > (r.outer - r.curvature) * (1.0 + 1e-12) + 1e-15)
    throw std::domain_error("quasihyperbolic_cone_bound: need 0 <= |a| <= R_O - R_C");
  return a_norm * phi(r.inner, r.curvature);
}

/// The chain of estimates bounding the hyperbolic distance from the origin to a point at
/// boundary offset d, and the offset below which it forces |z| < 1 - d.
struct ProofTrace {
  double d = 0.0;
  double pole_gap_bound = 0.0;         // rho(f(z), a) <= (1/2) log(2 R_C / d)
  double pole_gap_exact = 0.0;         // (1/2) log((2 R_C - d) / d)
  double center_distance_bound = 0.0;  // rho(a, 0) <= (R_O - R_C) phi(R_I, R_C)
  double origin_distance_lower = 0.0;  // (1/2) log((2 - d) / d)
  double offset_lhs = 0.0;             // (1/2) log(1 - d/2)
  double offset_rhs = 0.0;             // (1/2) log R_C + center_distance_bound
  double d_star = 0.0;                 // 2 (1 - exp(2 offset_rhs))
  bool contradiction = false;          // the necessary inequality fails at this d, so |z| < 1 - d
};

inline ProofTrace planar_proof_trace(const RadiiTriple& r, double d) {
  validate(r);
  if (!(d > 0.0) || !(d < r.curvature)) throw std::domain_error("planar_proof_trace: need 0 < d < R_C");
  ProofTrace t;
  t.d = d;
  t.pole_gap_bound = 0.5 * std::log(2.0 * r.curvature / d);
  t.pole_gap_exact = 0.5 * std::log((2.0 * r.curvature - d) / d);
  t.center_distance_bound = (r.outer - r.curvature) * phi(r.inner, r.curvature);
  t.origin_distance_lower = 0.5 * std::log((2.0 - d) / d);
  t.offset_lhs = 0.5 * std::log1p(-0.5 * d);
  t.offset_rhs = 0.5 * std::log(r.curvature) + t.center_distance_bound;
  t.d_star = -2.0 * std::expm1(2.0 * t.offset_rhs) + 0.0;  // no signed zero in reports
  t.contradiction = t.offset_lhs > t.offset_rhs;
  return t;
}

}  // namespace confcert
