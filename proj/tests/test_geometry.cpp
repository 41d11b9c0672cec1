#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "confcert/geometry.hpp"

using namespace confcert;

namespace {

const double kSqrt3 = std::sqrt(3.0);

RoundedConvexBody<2> triangle() { return {{Vec2{0.2, 0}, Vec2{-0.1, 0.1 * kSqrt3}, Vec2{-0.1, -0.1 * kSqrt3}}, 0.4}; }

// Dense boundary sample of a planar body through its parametrization.
std::vector<Vec2> boundary_samples(const RoundedConvexBody<2>& b, std::size_t m) {
  const BoundaryParam2D bp(b);
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < m; ++i) out.push_back(bp.eval(bp.length() * double(i) / double(m)).position);
  return out;
}

// Signed distance of a convex body equals min over unit u of h(u) - <x, u>; sampling u from
// above gives an upper bound that tightens with the direction count.
// h has kinks at facet and edge normals, so the grid minimum is polished by a shrinking
// random pattern search on the sphere.
double support_distance(const RoundedConvexBody<3>& b, const Vec3& x, std::size_t m) {
  auto f = [&](const Vec3& u) { return b.support(u) - dot(x, u); };
  double best = 1e300;
  Vec3 arg{};
  for (std::size_t j = 0; j < m; ++j) {
    const double z = 1.0 - (2.0 * double(j) + 1.0) / double(m);
    const double rho = std::sqrt(1 - z * z), a = std::numbers::pi * (3 - std::sqrt(5.0)) * double(j);
    const Vec3 u{rho * std::cos(a), rho * std::sin(a), z};
    if (f(u) < best) best = f(u), arg = u;
  }
  std::mt19937_64 rng(1);
  std::normal_distribution<double> g;
  for (double step = 0.05; step > 1e-10; step *= 0.7) {
    for (int k = 0; k < 60; ++k) {
      const Vec3 u = normalized(arg + step * Vec3{g(rng), g(rng), g(rng)});
      if (f(u) < best) best = f(u), arg = u;
    }
  }
  return best;
}

}  // namespace

TEST(Radii, SpecExamples) {
  auto r = radii(RoundedConvexBody<2>({Vec2{0, 0}}, 1.0));
  EXPECT_EQ(r.outer, 1.0);
  EXPECT_EQ(r.inner, 1.0);
  EXPECT_EQ(r.curvature, 1.0);

  r = radii(RoundedConvexBody<2>({Vec2{0.9, 0}}, 1.0));
  EXPECT_NEAR(r.outer, 1.9, 1e-15);
  EXPECT_NEAR(r.inner, 0.1, 1e-15);
  EXPECT_EQ(r.curvature, 1.0);

  r = radii(triangle());
  EXPECT_NEAR(r.outer, 0.6, 1e-12);
  EXPECT_NEAR(r.inner, 0.5, 1e-12);
  EXPECT_EQ(r.curvature, 0.4);

  // two unit balls with centers 3 apart, shifted so the origin is the midpoint
  const auto s = radii(RoundedConvexBody<3>({Vec3{-1.5, 0, 0}, Vec3{1.5, 0, 0}}, 1.0));
  EXPECT_NEAR(s.outer, 2.5, 1e-15);
  EXPECT_NEAR(s.inner, 1.0, 1e-15);
  EXPECT_EQ(s.curvature, 1.0);

  const auto ball = radii(RoundedConvexBody<3>({Vec3{0, 0, 0}}, 0.5));
  EXPECT_EQ(ball.outer, 0.5);
  EXPECT_EQ(ball.inner, 0.5);
}

TEST(Radii, InnerRadiusOfRoundedTetrahedronUsesFacetNormals) {
  const double a = 0.2;
  const RoundedConvexBody<3> b({Vec3{a, a, a}, Vec3{a, -a, -a}, Vec3{-a, a, -a}, Vec3{-a, -a, a}}, 0.3);
  const auto r = radii(b);
  // facet planes of this regular tetrahedron sit at distance a/sqrt(3) from the centroid
  EXPECT_NEAR(r.inner, 0.3 + a / std::sqrt(3.0), 1e-12);
  EXPECT_NEAR(r.outer, 0.3 + a * std::sqrt(3.0), 1e-12);
}

TEST(Radii, OriginMustBeInterior) {
  EXPECT_THROW(RoundedConvexBody<2>({Vec2{2, 0}}, 1.0), std::invalid_argument);
  EXPECT_THROW(RoundedConvexBody<2>({Vec2{1, 0}}, 1.0), std::invalid_argument);
  EXPECT_THROW(RoundedConvexBody<2>({Vec2{0, 0}}, 0.0), std::invalid_argument);
  EXPECT_THROW(RoundedConvexBody<2>({Vec2{0, NAN}}, 1.0), std::invalid_argument);
}

TEST(Radii, ScalingCovariance) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1, 1), lam(0.1, 5);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec2> g(1 + t % 6);
    for (auto& p : g) p = {0.5 * u(rng), 0.5 * u(rng)};
    const double r0 = 0.6 + 0.5 * std::abs(u(rng));
    RoundedConvexBody<2> b(g, r0);
    const double l = lam(rng);
    const auto a = radii(b).scaled(l), c = radii(b.scaled(l));
    EXPECT_NEAR(c.outer, a.outer, 1e-12 * a.outer);
    EXPECT_NEAR(c.inner, a.inner, 1e-12 * a.outer);
    EXPECT_NEAR(c.curvature, a.curvature, 1e-12 * a.curvature);
    EXPECT_LE(c.inner, c.outer);
    EXPECT_LE(c.curvature, c.outer);
  }
}

TEST(SignedDistance, SpecExamples) {
  const RoundedConvexBody<2> disk({Vec2{0, 0}}, 1.0);
  EXPECT_EQ(disk.signed_distance({0, 0}).distance, 1.0);
  EXPECT_EQ(disk.signed_distance({2, 0}).distance, -1.0);
  const RoundedConvexBody<2> stadium({Vec2{0, 0}, Vec2{1, 0}}, 1.0);
  EXPECT_NEAR(stadium.signed_distance({0.5, 0.3}).distance, 0.7, 1e-15);
}

TEST(SignedDistance, InsideHullUsesFacetSlack) {
  const auto b = triangle();
  const auto sd = b.signed_distance({0, 0});
  EXPECT_NEAR(sd.distance, 0.5, 1e-12);
  EXPECT_EQ(sd.region, BoundaryRegion::facet);
  EXPECT_NEAR(b.signed_distance(sd.nearest).distance, 0.0, 1e-12);
}

TEST(SignedDistance, MatchesDenseBoundarySampling2D) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 100; ++t) {
    std::vector<Vec2> g(1 + t % 7);
    for (auto& p : g) p = {0.4 * u(rng), 0.4 * u(rng)};
    RoundedConvexBody<2> b(g, 0.5 + 0.2 * std::abs(u(rng)));
    const auto samples = boundary_samples(b, 10000);
    for (int k = 0; k < 10; ++k) {
      const Vec2 x{1.5 * u(rng), 1.5 * u(rng)};
      double best = 1e300;
      for (const auto& w : samples) best = std::min(best, distance(x, w));
      const double sd = b.signed_distance(x).distance;
      EXPECT_NEAR(std::abs(sd), best, 1e-3 * std::max(best, 1e-2)) << "body " << t;
    }
  }
}

TEST(SignedDistance, MatchesSupportFunction3D) {
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 40; ++t) {
    std::vector<Vec3> g(1 + t % 8);
    for (auto& p : g) p = {0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng)};
    RoundedConvexBody<3> b(g, 0.6);
    for (int k = 0; k < 10; ++k) {
      const Vec3 x{1.5 * u(rng), 1.5 * u(rng), 1.5 * u(rng)};
      const auto sd = b.signed_distance(x);
      const double oracle = support_distance(b, x, 40000);
      EXPECT_LE(sd.distance, oracle + 1e-12) << "body " << t;
      EXPECT_NEAR(sd.distance, oracle, 1e-4) << "body " << t;
      EXPECT_NEAR(b.signed_distance(sd.nearest).distance, 0.0, 1e-9);
      EXPECT_NEAR(norm(sd.normal), 1.0, 1e-12);
    }
  }
}

TEST(SignedDistance, RegionsOfRoundedCube) {
  std::vector<Vec3> g;
  for (int i = 0; i < 8; ++i) g.push_back({(i & 1) ? 0.3 : -0.3, (i & 2) ? 0.3 : -0.3, (i & 4) ? 0.3 : -0.3});
  const RoundedConvexBody<3> b(g, 0.2);
  EXPECT_EQ(b.signed_distance({1, 0, 0}).region, BoundaryRegion::facet);
  EXPECT_EQ(b.signed_distance({1, 1, 0}).region, BoundaryRegion::edge);
  EXPECT_EQ(b.signed_distance({1, 1, 1}).region, BoundaryRegion::vertex_sphere);
  EXPECT_NEAR(b.signed_distance({1, 0, 0}).distance, -0.5, 1e-12);
}

TEST(BoundaryParam, LengthsAndPieces) {
  const BoundaryParam2D disk(RoundedConvexBody<2>({Vec2{0, 0}}, 1.0));
  EXPECT_EQ(disk.pieces().size(), 1u);
  EXPECT_NEAR(disk.length(), 2 * std::numbers::pi, 1e-14);

  const BoundaryParam2D st(RoundedConvexBody<2>({Vec2{-0.3, 0}, Vec2{0.4, 0}}, 0.5));
  EXPECT_NEAR(st.length(), 2 * 0.7 + 2 * std::numbers::pi * 0.5, 1e-13);

  const BoundaryParam2D tri(triangle());
  ASSERT_EQ(tri.pieces().size(), 6u);
  int arcs = 0;
  for (const auto& p : tri.pieces()) arcs += p.kind == BoundaryPiece2D::Kind::arc;
  EXPECT_EQ(arcs, 3);
  EXPECT_NEAR(tri.length(), 3 * 0.2 * kSqrt3 + 0.8 * std::numbers::pi, 1e-13);
}

TEST(BoundaryParam, UnitTangentAndCurvature) {
  const auto b = triangle();
  const BoundaryParam2D bp(b);
  const double h = 1e-7;
  for (int i = 0; i < 997; ++i) {
    const double s = bp.length() * (i + 0.37) / 997.0;
    const auto p = bp.eval(s);
    const Vec2 t = (1.0 / (2 * h)) * (bp.eval(s + h).position - bp.eval(s - h).position);
    EXPECT_NEAR(norm(t), 1.0, 1e-6);
    EXPECT_NEAR(dot(t, p.outward_normal), 0.0, 1e-6);
    EXPECT_NEAR(b.signed_distance(p.position).distance, 0.0, 1e-12);
    EXPECT_TRUE(p.curvature == 0.0 || std::abs(p.curvature - 1.0 / 0.4) < 1e-15);
  }
}

TEST(BoundaryParam, PatchLengthMatchesSampling) {
  const auto b = triangle();
  const BoundaryParam2D bp(b);
  const std::size_t m = 400000;
  const double ds = bp.length() / double(m);
  for (int k = 0; k < 12; ++k) {
    const Vec2 w = bp.eval(bp.length() * k / 12.0 + 0.013).position;
    for (double delta : {0.02, 0.04, 0.3}) {
      double count = 0;
      for (std::size_t i = 0; i < m; ++i)
        if (distance(bp.eval((double(i) + 0.5) * ds).position, w) < delta) count += ds;
      EXPECT_NEAR(bp.patch_length(w, delta), count, 3 * ds);
    }
  }
}

TEST(ProbePoints, SpecExamples) {
  const auto disk = probe_points(RoundedConvexBody<2>({Vec2{0, 0}}, 1.0), 4);
  EXPECT_EQ(disk.size(), 5u);
  const auto tri = probe_points(triangle(), 0);
  // the farthest point is an arc midpoint of the equilateral triangle, so it is deduplicated
  EXPECT_EQ(tri.size(), 6u);
  const auto off = probe_points(RoundedConvexBody<2>({Vec2{0.9, 0}}, 1.0), 0);
  bool found = false;
  for (const auto& p : off) found = found || distance(p.position, Vec2{1.9, 0}) < 1e-12;
  EXPECT_TRUE(found);
}

TEST(ProbePoints, AllOnTheBoundary) {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vec2> g2(1 + t % 6);
    for (auto& p : g2) p = {0.4 * u(rng), 0.4 * u(rng)};
    RoundedConvexBody<2> b2(g2, 0.6);
    for (const auto& p : probe_points(b2, 16)) EXPECT_LE(std::abs(b2.signed_distance(p.position).distance), 1e-9);
    std::vector<Vec3> g3(1 + t % 9);
    for (auto& p : g3) p = {0.4 * u(rng), 0.4 * u(rng), 0.4 * u(rng)};
    RoundedConvexBody<3> b3(g3, 0.7);
    for (const auto& p : probe_points(b3, 16)) EXPECT_LE(std::abs(b3.signed_distance(p.position).distance), 1e-9);
  }
}

TEST(ProbePoints, ThreeDimensionalCube) {
  std::vector<Vec3> g;
  for (int i = 0; i < 8; ++i) g.push_back({(i & 1) ? 0.3 : -0.3, (i & 2) ? 0.3 : -0.3, (i & 4) ? 0.3 : -0.3});
  const auto p = probe_points(RoundedConvexBody<3>(g, 0.2), 0);
  // 6 facet centroids, 12 edge midpoints, 8 vertex-sphere points; the farthest point is a vertex-sphere point
  EXPECT_EQ(p.size(), 26u);
}
