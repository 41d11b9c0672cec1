#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "confcert/hull.hpp"
#include "confcert/vec.hpp"

namespace confcert {

/// Outer, inner and curvature radii of a convex body about the origin.
struct RadiiTriple {
  double outer = 0.0;
  double inner = 0.0;
  double curvature = 0.0;

  RadiiTriple scaled(double lambda) const { return {lambda * outer, lambda * inner, lambda * curvature}; }
};

/// Which boundary piece carries the nearest boundary point.
enum class BoundaryRegion { facet, edge, vertex_sphere };

inline const char* to_string(BoundaryRegion r) {
  switch (r) {
    case BoundaryRegion::facet: return "facet";
    case BoundaryRegion::edge: return "edge";
    case BoundaryRegion::vertex_sphere: return "vertex-sphere";
  }
  return "?";
}

template <std::size_t N>
struct SignedDistanceResult {
  double distance = 0.0;  // positive inside
  Vec<N> nearest{};
  Vec<N> normal{};        // outward unit normal at `nearest`
  BoundaryRegion region = BoundaryRegion::vertex_sphere;
};

/// The body conv(generators) + rounding * (closed unit ball).
///
/// Generators are reduced to hull extreme points at construction. The origin is
/// required to lie in the interior; every quantity here is measured about it.
template <std::size_t N>
class RoundedConvexBody {
 public:
  static_assert(N == 2 || N == 3);

  RoundedConvexBody(std::span<const Vec<N>> generators, double rounding) : rounding_(rounding) {
    if (!(rounding > 0.0) || !std::isfinite(rounding)) throw std::invalid_argument("rounding radius must be positive");
    for (const auto& p : generators)
      for (double c : p)
        if (!std::isfinite(c)) throw std::invalid_argument("generator coordinates must be finite");
    hull_ = convex_hull<N>(generators);
    if (!(signed_distance(Vec<N>{}).distance > 0.0))
      throw std::invalid_argument("the origin must lie in the interior of the body");
  }

  RoundedConvexBody(std::initializer_list<Vec<N>> generators, double rounding)
      : RoundedConvexBody(std::span<const Vec<N>>(generators.begin(), generators.size()), rounding) {}

  static constexpr std::size_t dim() { return N; }
  double rounding() const { return rounding_; }
  const std::vector<Vec<N>>& generators() const { return hull_.vertices; }
  const ConvexHull<N>& hull() const { return hull_; }

  RoundedConvexBody scaled(double lambda) const {
    std::vector<Vec<N>> g;
    for (const auto& p : hull_.vertices) g.push_back(lambda * p);
    return RoundedConvexBody(g, lambda * rounding_);
  }

  /// Support function h(u) = max <p, u> + r.
  double support(const Vec<N>& u) const {
    double h = -std::numeric_limits<double>::infinity();
    for (const auto& p : hull_.vertices) h = std::max(h, dot(p, u));
    return h + rounding_;
  }

  /// Distance to the boundary, positive inside; r - dist(x, K) outside K and
  /// r + dist(x, boundary of K) inside K.
  SignedDistanceResult<N> signed_distance(const Vec<N>& x) const {
    SignedDistanceResult<N> out;
    const auto& verts = hull_.vertices;
    if (hull_.full_dimensional()) {
      double slack = std::numeric_limits<double>::infinity();
      std::size_t best = 0;
      for (std::size_t i = 0; i < hull_.facets.size(); ++i) {
        const double s = hull_.facets[i].offset - dot(hull_.facets[i].normal, x);
        if (s < slack) slack = s, best = i;
      }
      if (slack >= 0.0) {
        const Vec<N>& n = hull_.facets[best].normal;
        out.distance = rounding_ + slack;
        out.normal = n;
        out.nearest = x + (slack + rounding_) * n;
        out.region = BoundaryRegion::facet;
        return out;
      }
    }

    Vec<N> proj{};
    std::size_t support_size = 1;
    if (verts.size() == 1) {
      proj = verts[0];
    } else if constexpr (N == 2) {
      proj = project_2d(x, support_size);
    } else {
      proj = project_onto_hull<N>(verts, x).point;
    }
    const Vec<N> diff = x - proj;
    const double d = norm(diff);
    out.distance = rounding_ - d;
    out.normal = d > 0.0 ? (1.0 / d) * diff : fallback_normal(x);
    out.nearest = proj + rounding_ * out.normal;
    if constexpr (N == 2) {
      out.region = support_size <= 1 ? BoundaryRegion::vertex_sphere : BoundaryRegion::facet;
    } else {
      out.region = classify(proj, out.normal);
    }
    return out;
  }

  /// Outward normal at a boundary point (the direction from its projection onto K).
  Vec<N> normal_at(const Vec<N>& w) const { return signed_distance(w).normal; }

 private:
  Vec<N> project_2d(const Vec<N>& x, std::size_t& support_size) const {
    const auto& v = hull_.vertices;
    const std::size_t m = v.size();
    const std::size_t edges = m == 2 ? 1 : m;
    double best = std::numeric_limits<double>::infinity();
    Vec<N> proj{};
    for (std::size_t i = 0; i < edges; ++i) {
      const Vec<N>& a = v[i];
      const Vec<N>& b = v[(i + 1) % m];
      const Vec<N> ab = b - a;
      double t = dot(x - a, ab) / dot(ab, ab);
      std::size_t s = 2;
      if (t <= 0.0) t = 0.0, s = 1;
      if (t >= 1.0) t = 1.0, s = 1;
      const Vec<N> c = a + t * ab;
      const double d = distance(x, c);
      if (d < best) best = d, proj = c, support_size = s;
    }
    return proj;
  }

  // Which piece of the boundary a projection onto K (with outward normal n) belongs to.
  // The Wolfe support set is not used: on a square face it may be a diagonal pair.
  BoundaryRegion classify(const Vec<N>& proj, const Vec<N>& n) const {
    const auto& v = hull_.vertices;
    double scale = 1.0;
    for (const auto& p : v) scale = std::max(scale, norm(p));
    const double tol = 1e-9 * scale;
    for (const auto& p : v)
      if (distance(p, proj) <= tol) return BoundaryRegion::vertex_sphere;
    if (hull_.full_dimensional()) {
      int active = 0;
      for (const auto& f : hull_.facets) active += std::abs(dot(f.normal, proj) - f.offset) <= tol;
      return active <= 1 ? BoundaryRegion::facet : BoundaryRegion::edge;
    }
    if (hull_.affine_dim == 2) {
      const Vec<N> pn = normalized(cross(v[1] - v[0], v[2] - v[0]));
      return std::abs(std::abs(dot(pn, n)) - 1.0) <= 1e-9 ? BoundaryRegion::facet : BoundaryRegion::edge;
    }
    return BoundaryRegion::edge;
  }

  Vec<N> fallback_normal(const Vec<N>& x) const {
    if (hull_.full_dimensional()) {
      double worst = -std::numeric_limits<double>::infinity();
      Vec<N> n{};
      for (const auto& f : hull_.facets) {
        const double s = dot(f.normal, x) - f.offset;
        if (s > worst) worst = s, n = f.normal;
      }
      return n;
    }
    if (hull_.vertices.size() >= 2) {
      const Vec<N> dir = normalized(hull_.vertices[1] - hull_.vertices[0]);
      if constexpr (N == 3) {
        if (hull_.vertices.size() >= 3) {
          return normalized(cross(dir, hull_.vertices[2] - hull_.vertices[0]));
        }
      }
      return any_orthogonal(dir);
    }
    Vec<N> e{};
    e[0] = 1.0;
    return e;
  }

  double rounding_;
  ConvexHull<N> hull_;
};

/// Radii of the body about the origin: R_O = max|p| + r, R_I = dist(0, boundary), R_C = r.
template <std::size_t N>
RadiiTriple radii(const RoundedConvexBody<N>& body) {
  RadiiTriple t;
  double far = 0.0;
  for (const auto& p : body.generators()) far = std::max(far, norm(p));
  t.outer = far + body.rounding();
  t.inner = body.signed_distance(Vec<N>{}).distance;
  t.curvature = body.rounding();
  if (!(t.inner > 0.0)) throw std::invalid_argument("origin is not interior");
  return t;
}

/// Farthest boundary point from the origin: a farthest generator pushed radially by r.
template <std::size_t N>
Vec<N> farthest_boundary_point(const RoundedConvexBody<N>& body) {
  const Vec<N>* far = &body.generators().front();
  for (const auto& p : body.generators())
    if (norm(p) > norm(*far)) far = &p;
  Vec<N> dir = normalized(*far);
  if (norm(dir) == 0.0) dir[0] = 1.0;
  return *far + body.rounding() * dir;
}

/// Point on the planar boundary at a given arclength.
struct BoundaryPoint2D {
  double arclength = 0.0;
  Vec2 position{};
  Vec2 outward_normal{};
  double curvature = 0.0;
};

/// Straight piece (curvature 0) or circular arc of radius r about a hull vertex.
struct BoundaryPiece2D {
  enum class Kind { segment, arc } kind = Kind::arc;
  double start_arclength = 0.0;
  double length = 0.0;
  // segment
  Vec2 start{};
  Vec2 direction{};
  Vec2 normal{};
  // arc
  Vec2 center{};
  double start_angle = 0.0;
  double span = 0.0;
  std::size_t vertex = 0;
};

/// Arclength parametrization of the boundary of a planar rounded hull: for each hull
/// vertex (counterclockwise) an arc followed by the offset copy of the next edge.
class BoundaryParam2D {
 public:
  explicit BoundaryParam2D(const RoundedConvexBody<2>& body) : radius_(body.rounding()) {
    const auto& v = body.generators();
    const std::size_t m = v.size();
    if (m == 1) {
      add_arc(v[0], 0.0, 2.0 * std::numbers::pi, 0);
      return;
    }
    std::vector<Vec2> normals(m);
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2 t = normalized(v[(i + 1) % m] - v[i]);
      normals[i] = {t[1], -t[0]};
    }
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& nin = normals[(i + m - 1) % m];
      const Vec2& nout = normals[i];
      const double a0 = std::atan2(nin[1], nin[0]);
      double span = std::atan2(nout[1], nout[0]) - a0;
      while (span <= 0.0) span += 2.0 * std::numbers::pi;
      while (span > 2.0 * std::numbers::pi) span -= 2.0 * std::numbers::pi;
      add_arc(v[i], a0, span, i);
      BoundaryPiece2D seg;
      seg.kind = BoundaryPiece2D::Kind::segment;
      seg.start = v[i] + radius_ * nout;
      const Vec2 edge = v[(i + 1) % m] - v[i];
      seg.length = norm(edge);
      seg.direction = normalized(edge);
      seg.normal = nout;
      seg.vertex = i;
      push(seg);
    }
  }

  const std::vector<BoundaryPiece2D>& pieces() const { return pieces_; }
  double length() const { return length_; }
  double rounding() const { return radius_; }

  BoundaryPoint2D eval(double s) const {
    s = std::fmod(s, length_);
    if (s < 0.0) s += length_;
    auto it = std::upper_bound(pieces_.begin(), pieces_.end(), s,
                               [](double v, const BoundaryPiece2D& p) { return v < p.start_arclength; });
    const BoundaryPiece2D& p = *(it == pieces_.begin() ? it : std::prev(it));
    return eval_piece(p, s - p.start_arclength, s);
  }

  BoundaryPoint2D eval_piece(const BoundaryPiece2D& p, double local, double s) const {
    BoundaryPoint2D out;
    out.arclength = s;
    if (p.kind == BoundaryPiece2D::Kind::segment) {
      out.position = p.start + local * p.direction;
      out.outward_normal = p.normal;
      out.curvature = 0.0;
    } else {
      const double a = p.start_angle + local / radius_;
      out.outward_normal = {std::cos(a), std::sin(a)};
      out.position = p.center + radius_ * out.outward_normal;
      out.curvature = 1.0 / radius_;
    }
    return out;
  }

  /// Exact arclength of the boundary inside the open disk B(w, delta).
  double patch_length(const Vec2& w, double delta) const {
    double total = 0.0;
    for (const auto& p : pieces_) {
      if (p.kind == BoundaryPiece2D::Kind::segment) {
        const Vec2 q = w - p.start;
        const double m = dot(q, p.direction);
        const double disc = m * m - dot(q, q) + delta * delta;
        if (disc <= 0.0) continue;
        const double r = std::sqrt(disc);
        total += std::max(0.0, std::min(p.length, m + r) - std::max(0.0, m - r));
      } else {
        total += radius_ * arc_overlap(p, w, delta);
      }
    }
    return total;
  }

 private:
  // Angular measure of the arc piece inside B(w, delta).
  double arc_overlap(const BoundaryPiece2D& p, const Vec2& w, double delta) const {
    const double two_pi = 2.0 * std::numbers::pi;
    const Vec2 q = w - p.center;
    const double rq = norm(q);
    if (rq == 0.0) return radius_ < delta ? p.span : 0.0;
    const double c = (radius_ * radius_ + rq * rq - delta * delta) / (2.0 * radius_ * rq);
    if (c >= 1.0) return 0.0;
    if (c <= -1.0) return p.span;
    const double half = std::acos(c);
    double start = std::atan2(q[1], q[0]) - half - p.start_angle;
    start = std::fmod(start, two_pi);
    if (start < 0.0) start += two_pi;
    const double end = start + 2.0 * half;
    auto overlap = [](double a0, double a1, double b0, double b1) { return std::max(0.0, std::min(a1, b1) - std::max(a0, b0)); };
    return overlap(start, end, 0.0, p.span) + overlap(start, end, two_pi, two_pi + p.span);
  }

  void add_arc(const Vec2& center, double a0, double span, std::size_t vertex) {
    BoundaryPiece2D arc;
    arc.kind = BoundaryPiece2D::Kind::arc;
    arc.center = center;
    arc.start_angle = a0;
    arc.span = span;
    arc.length = radius_ * span;
    arc.vertex = vertex;
    push(arc);
  }

  void push(BoundaryPiece2D p) {
    p.start_arclength = length_;
    length_ += p.length;
    pieces_.push_back(p);
  }

  double radius_;
  double length_ = 0.0;
  std::vector<BoundaryPiece2D> pieces_;
};

inline BoundaryParam2D boundary_param_2d(const RoundedConvexBody<2>& body) { return BoundaryParam2D(body); }

template <std::size_t N>
struct ProbePoint {
  Vec<N> position{};
  std::string label;
};

namespace detail {

template <std::size_t N>
void add_probe(std::vector<ProbePoint<N>>& out, const Vec<N>& p, std::string label) {
  for (const auto& q : out)
    if (distance(q.position, p) <= 1e-12) return;
  out.push_back({p, std::move(label)});
}

inline Vec3 fibonacci_direction(std::size_t j, std::size_t k) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * static_cast<double>(j) + 1.0) / static_cast<double>(k);
  const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = golden * static_cast<double>(j);
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

}  // namespace detail

/// Deterministic boundary probes: piece representatives, the farthest point from the
/// origin, and k further points spread over the boundary.
inline std::vector<ProbePoint<2>> probe_points(const RoundedConvexBody<2>& body, std::size_t k) {
  std::vector<ProbePoint<2>> out;
  const BoundaryParam2D bp(body);
  const bool full_circle = bp.pieces().size() == 1;
  for (const auto& p : bp.pieces()) {
    if (full_circle) break;
    const auto mid = bp.eval_piece(p, 0.5 * p.length, p.start_arclength + 0.5 * p.length);
    detail::add_probe(out, mid.position, p.kind == BoundaryPiece2D::Kind::segment ? "facet-midpoint" : "arc-midpoint");
  }
  detail::add_probe(out, farthest_boundary_point(body), "farthest");
  for (std::size_t j = 0; j < k; ++j) {
    const double s = (static_cast<double>(j) + 0.5) * bp.length() / static_cast<double>(k);
    detail::add_probe(out, bp.eval(s).position, "arclength");
  }
  return out;
}

inline std::vector<ProbePoint<3>> probe_points(const RoundedConvexBody<3>& body, std::size_t k) {
  std::vector<ProbePoint<3>> out;
  const auto& hull = body.hull();
  const double r = body.rounding();
  const auto& v = hull.vertices;
  for (const auto& f : hull.facets) {
    Vec3 c{};
    for (auto i : f.vertices) c += v[i];
    c = (1.0 / static_cast<double>(f.vertices.size())) * c;
    detail::add_probe(out, c + r * f.normal, "facet-centroid");
  }
  for (const auto& e : hull.edges) {
    const Vec3 mid = 0.5 * (v[e.a] + v[e.b]);
    detail::add_probe(out, mid + r * normalized(e.normal_left + e.normal_right), "edge-midpoint");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    Vec3 dir = normalized(v[i]);
    // Use the radial direction when it lies in the vertex's normal cone.
    bool radial = norm(dir) > 0.0;
    for (const auto& q : v) {
      if (radial && dot(q - v[i], dir) > 1e-12) radial = false;
    }
    if (!radial) {
      Vec3 acc{};
      for (const auto& f : hull.facets)
        if (std::find(f.vertices.begin(), f.vertices.end(), i) != f.vertices.end()) acc += f.normal;
      dir = normalized(acc);
    }
    if (norm(dir) == 0.0) continue;
    detail::add_probe(out, v[i] + r * dir, "vertex-sphere");
  }
  detail::add_probe(out, farthest_boundary_point(body), "farthest");
  for (std::size_t j = 0; j < k; ++j) {
    const Vec3 u = detail::fibonacci_direction(j, k);
    const Vec3* best = &v.front();
    for (const auto& p : v)
      if (dot(p, u) > dot(*best, u)) best = &p;
    detail::add_probe(out, *best + r * u, "direction");
  }
  return out;
}

}  // namespace confcert
