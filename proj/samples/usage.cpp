// Certify a rounded triangle, scale it to the certificate boundary, and spot-check the
// harmonic measure density at the farthest boundary point.
#include <cmath>
#include <cstdio>

#include "confcert/certificate.hpp"
#include "confcert/oracle.hpp"

int main() {
  using namespace confcert;
  const double h = 0.1 * std::sqrt(3.0);
  const RoundedConvexBody<2> body({Vec2{0.2, 0}, Vec2{-0.1, h}, Vec2{-0.1, -h}}, 0.4);

  const auto r = radii(body);
  const auto cert = certify_planar(r);
  const auto scale = max_scaling_planar(r);
  std::printf("radii  R_O=%.6f R_I=%.6f R_C=%.6f\n", r.outer, r.inner, r.curvature);
  std::printf("planar lhs=%.9f (%s), lambda_max=%.9f\n", cert.lhs, cert.satisfied ? "satisfied" : "not satisfied",
              scale.lambda_max);

  WosConfig cfg;
  cfg.walkers = 200000;
  const Vec2 w = farthest_boundary_point(body);
  const auto probe = density_at(body, w, r.curvature / 20, cfg);
  std::printf("2 pi density at (%.3f, %.3f): %.4f +- %.4f\n", w[0], w[1], 2 * M_PI * probe.density,
              2 * M_PI * probe.ci95);
}
