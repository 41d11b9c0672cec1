#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "confcert/vec.hpp"

namespace confcert {

/// A supporting hyperplane {x : <normal, x> = offset} carrying a facet of the hull.
/// `vertices` index ConvexHull::vertices: an edge (i, i+1) in 2D, a polygon
/// counterclockwise seen from outside in 3D.
template <std::size_t N>
struct Facet {
  Vec<N> normal{};
  double offset = 0.0;
  std::vector<std::size_t> vertices;
};

/// Hull edge in 3D together with the outward normals of its two facets.
struct HullEdge {
  std::size_t a = 0;
  std::size_t b = 0;
  Vec3 normal_left{};
  Vec3 normal_right{};
};

template <std::size_t N>
struct ConvexHull {
  std::vector<Vec<N>> vertices;   // extreme points, canonical order
  std::vector<Facet<N>> facets;   // empty unless the hull is full-dimensional
  std::vector<HullEdge> edges;    // 3D only
  int affine_dim = 0;

  bool full_dimensional() const { return !facets.empty(); }
};

/// Nearest point of conv(vertices) to a query, with the vertices carrying positive weight.
template <std::size_t N>
struct HullProjection {
  Vec<N> point{};
  std::vector<std::size_t> support;
  std::vector<double> weights;
};

namespace detail {

template <std::size_t N>
bool lex_less(const Vec<N>& a, const Vec<N>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

template <std::size_t N>
std::vector<Vec<N>> sorted_unique(std::span<const Vec<N>> points) {
  std::vector<Vec<N>> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), lex_less<N>);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

template <std::size_t N>
double spread(const std::vector<Vec<N>>& pts) {
  double s = 0.0;
  for (const auto& p : pts) s = std::max(s, distance(p, pts.front()));
  return s;
}

/// Andrew's monotone chain on lexicographically sorted, distinct points.
/// Returns indices of the strict extreme points, counterclockwise, starting at pts[0].
inline std::vector<std::size_t> monotone_chain(const std::vector<Vec2>& pts, double tol) {
  const std::size_t n = pts.size();
  if (n <= 1) return n == 1 ? std::vector<std::size_t>{0} : std::vector<std::size_t>{};
  std::vector<std::size_t> h(2 * n);
  std::size_t k = 0;
  auto turn = [&](std::size_t o, std::size_t a, std::size_t b) {
    return cross(pts[a] - pts[o], pts[b] - pts[o]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && turn(h[k - 2], h[k - 1], i) <= tol) --k;
    h[k++] = i;
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && turn(h[k - 2], h[k - 1], i) <= tol) --k;
    h[k++] = i;
  }
  h.resize(k - 1);
  if (h.size() == 2 && distance(pts[h[0]], pts[h[1]]) == 0.0) h.resize(1);
  return h;
}

inline ConvexHull<2> hull_2d(std::span<const Vec2> input) {
  if (input.empty()) throw std::invalid_argument("hull_reduce: empty point set");
  const auto pts = sorted_unique<2>(input);
  const double s = spread(pts);
  const auto idx = monotone_chain(pts, 1e-12 * s * s);

  ConvexHull<2> hull;
  for (auto i : idx) hull.vertices.push_back(pts[i]);
  const std::size_t m = hull.vertices.size();
  hull.affine_dim = m >= 3 ? 2 : static_cast<int>(m) - 1;
  if (m >= 3) {
    for (std::size_t i = 0; i < m; ++i) {
      const Vec2& a = hull.vertices[i];
      const Vec2& b = hull.vertices[(i + 1) % m];
      const Vec2 t = normalized(b - a);
      Facet<2> f;
      f.normal = {t[1], -t[0]};
      f.offset = dot(f.normal, a);
      f.vertices = {i, (i + 1) % m};
      hull.facets.push_back(std::move(f));
    }
  }
  return hull;
}

struct Tri {
  std::size_t a, b, c;
  Vec3 n;
  double off;
  bool alive;
};

inline Tri make_tri(const std::vector<Vec3>& p, std::size_t a, std::size_t b, std::size_t c) {
  const Vec3 n = normalized(cross(p[b] - p[a], p[c] - p[a]));
  return {a, b, c, n, dot(n, p[a]), true};
}

/// Planar or lower-dimensional point set in 3D: extreme points only, no facets.
inline ConvexHull<3> degenerate_hull_3d(const std::vector<Vec3>& pts, std::size_t i0, std::size_t i1, std::size_t i2,
                                        int dim, double s) {
  ConvexHull<3> hull;
  hull.affine_dim = dim;
  if (dim == 0) {
    hull.vertices = {pts[i0]};
    return hull;
  }
  const Vec3 u = normalized(pts[i1] - pts[i0]);
  if (dim == 1) {
    auto lo = pts[i0], hi = pts[i0];
    double tlo = 0.0, thi = 0.0;
    for (const auto& p : pts) {
      const double t = dot(p - pts[i0], u);
      if (t < tlo) tlo = t, lo = p;
      if (t > thi) thi = t, hi = p;
    }
    hull.vertices = {lo, hi};
    if (lex_less<3>(hi, lo)) std::swap(hull.vertices[0], hull.vertices[1]);
    return hull;
  }
  Vec3 n = normalized(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
  for (double c : n) {
    if (c != 0.0) {
      if (c < 0.0) n = -n;
      break;
    }
  }
  const Vec3 e1 = any_orthogonal(n);
  const Vec3 e2 = cross(n, e1);
  std::vector<std::pair<Vec2, std::size_t>> plane;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 d = pts[i] - pts[i0];
    plane.push_back({{dot(d, e1), dot(d, e2)}, i});
  }
  std::sort(plane.begin(), plane.end(), [](const auto& x, const auto& y) { return lex_less<2>(x.first, y.first); });
  std::vector<Vec2> flat;
  for (const auto& q : plane) flat.push_back(q.first);
  for (auto k : monotone_chain(flat, 1e-12 * s * s)) hull.vertices.push_back(pts[plane[k].second]);
  return hull;
}

inline ConvexHull<3> hull_3d(std::span<const Vec3> input) {
  if (input.empty()) throw std::invalid_argument("hull_reduce: empty point set");
  const auto pts = sorted_unique<3>(input);
  const double s = spread(pts);
  const double eps = 1e-10 * std::max(s, 1e-300);

  const std::size_t i0 = 0;
  std::size_t i1 = 0, i2 = 0, i3 = 0;
  double best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double d = distance(pts[i], pts[i0]);
    if (d > best) best = d, i1 = i;
  }
  if (best <= eps) return degenerate_hull_3d(pts, i0, i0, i0, 0, s);
  const Vec3 u = normalized(pts[i1] - pts[i0]);
  best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const Vec3 d = pts[i] - pts[i0];
    const double off = norm(d - dot(d, u) * u);
    if (off > best) best = off, i2 = i;
  }
  if (best <= eps) return degenerate_hull_3d(pts, i0, i1, i1, 1, s);
  const Vec3 pn = normalized(cross(pts[i1] - pts[i0], pts[i2] - pts[i0]));
  best = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double h = std::abs(dot(pts[i] - pts[i0], pn));
    if (h > best) best = h, i3 = i;
  }
  if (best <= eps) return degenerate_hull_3d(pts, i0, i1, i2, 2, s);

  std::vector<Tri> tris;
  const std::size_t tet[4] = {i0, i1, i2, i3};
  for (int k = 0; k < 4; ++k) {
    std::size_t f[3], j = 0;
    for (int q = 0; q < 4; ++q)
      if (q != k) f[j++] = tet[q];
    Tri t = make_tri(pts, f[0], f[1], f[2]);
    if (dot(t.n, pts[tet[k]]) - t.off > 0.0) t = make_tri(pts, f[0], f[2], f[1]);
    tris.push_back(t);
  }

  for (std::size_t p = 0; p < pts.size(); ++p) {
    if (p == i0 || p == i1 || p == i2 || p == i3) continue;
    std::map<std::pair<std::size_t, std::size_t>, bool> visible_edges;
    bool any = false;
    for (auto& t : tris) {
      if (!t.alive || dot(t.n, pts[p]) - t.off <= eps) continue;
      any = true;
      t.alive = false;
      visible_edges[{t.a, t.b}] = true;
      visible_edges[{t.b, t.c}] = true;
      visible_edges[{t.c, t.a}] = true;
    }
    if (!any) continue;
    for (const auto& [e, _] : visible_edges) {
      if (visible_edges.count({e.second, e.first}) == 0) tris.push_back(make_tri(pts, e.first, e.second, p));
    }
    std::erase_if(tris, [](const Tri& t) { return !t.alive; });
  }

  // Merge coplanar triangles into polygonal facets.
  struct Group {
    Vec3 n;
    double off;
    std::vector<std::size_t> ids;
  };
  std::vector<Group> groups;
  for (const auto& t : tris) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const Group& g) {
      return norm(g.n - t.n) < 1e-9 && std::abs(g.off - t.off) < eps;
    });
    if (it == groups.end()) {
      groups.push_back({t.n, t.off, {t.a, t.b, t.c}});
    } else {
      it->ids.insert(it->ids.end(), {t.a, t.b, t.c});
    }
  }

  std::vector<std::vector<std::size_t>> polys;
  std::vector<bool> extreme(pts.size(), false);
  for (auto& g : groups) {
    std::sort(g.ids.begin(), g.ids.end());
    g.ids.erase(std::unique(g.ids.begin(), g.ids.end()), g.ids.end());
    const Vec3 e1 = any_orthogonal(g.n);
    const Vec3 e2 = cross(g.n, e1);
    std::vector<std::pair<Vec2, std::size_t>> plane;
    for (auto i : g.ids) plane.push_back({{dot(pts[i], e1), dot(pts[i], e2)}, i});
    std::sort(plane.begin(), plane.end(), [](const auto& x, const auto& y) { return lex_less<2>(x.first, y.first); });
    std::vector<Vec2> flat;
    for (const auto& q : plane) flat.push_back(q.first);
    std::vector<std::size_t> poly;
    for (auto k : monotone_chain(flat, 1e-12 * s * s)) {
      poly.push_back(plane[k].second);
      extreme[plane[k].second] = true;
    }
    polys.push_back(std::move(poly));
  }

  ConvexHull<3> hull;
  hull.affine_dim = 3;
  std::vector<std::size_t> remap(pts.size(), 0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (!extreme[i]) continue;
    remap[i] = hull.vertices.size();
    hull.vertices.push_back(pts[i]);  // pts already lexicographic
  }
  for (auto& poly : polys) {
    for (auto& i : poly) i = remap[i];
    std::rotate(poly.begin(), std::min_element(poly.begin(), poly.end()), poly.end());
    Vec3 n{};
    for (std::size_t k = 0; k < poly.size(); ++k) {
      const Vec3& a = hull.vertices[poly[k]];
      const Vec3& b = hull.vertices[poly[(k + 1) % poly.size()]];
      n += cross(a, b);
    }
    Facet<3> f;
    f.normal = normalized(n);
    f.offset = dot(f.normal, hull.vertices[poly.front()]);
    for (auto i : poly) f.offset = std::max(f.offset, dot(f.normal, hull.vertices[i]));
    f.vertices = std::move(poly);
    hull.facets.push_back(std::move(f));
  }
  std::sort(hull.facets.begin(), hull.facets.end(),
            [](const Facet<3>& x, const Facet<3>& y) { return x.vertices < y.vertices; });

  std::map<std::pair<std::size_t, std::size_t>, std::vector<Vec3>> edge_normals;
  for (const auto& f : hull.facets) {
    for (std::size_t k = 0; k < f.vertices.size(); ++k) {
      auto a = f.vertices[k], b = f.vertices[(k + 1) % f.vertices.size()];
      edge_normals[{std::min(a, b), std::max(a, b)}].push_back(f.normal);
    }
  }
  for (const auto& [e, ns] : edge_normals) {
    if (ns.size() != 2) continue;
    hull.edges.push_back({e.first, e.second, ns[0], ns[1]});
  }
  return hull;
}

/// Solves the small dense system A x = b in place; returns false when singular.
inline bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t n) {
  double scale = 0.0;
  for (double v : a) scale = std::max(scale, std::abs(v));
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a[r * n + c]) > std::abs(a[piv * n + c])) piv = r;
    if (std::abs(a[piv * n + c]) <= 1e-13 * scale) return false;
    if (piv != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
      std::swap(b[c], b[piv]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      b[r] -= f * b[c];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    double v = b[c];
    for (std::size_t k = c + 1; k < n; ++k) v -= a[c * n + k] * b[k];
    b[c] = v / a[c * n + c];
  }
  return true;
}

/// Minimizer of |sum alpha_i q_i| over the affine hull of the active points.
template <std::size_t N>
bool affine_minimizer(const std::vector<Vec<N>>& q, const std::vector<std::size_t>& active, std::vector<double>& alpha) {
  const std::size_t k = active.size();
  alpha.assign(k, 0.0);
  if (k == 1) {
    alpha[0] = 1.0;
    return true;
  }
  const std::size_t m = k - 1;
  const Vec<N>& q0 = q[active[0]];
  std::vector<Vec<N>> d(m);
  for (std::size_t i = 0; i < m; ++i) d[i] = q[active[i + 1]] - q0;
  std::vector<double> g(m * m), rhs(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) g[i * m + j] = dot(d[i], d[j]);
    rhs[i] = -dot(d[i], q0);
  }
  if (!solve_dense(g, rhs, m)) return false;
  double sum = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    alpha[i + 1] = rhs[i];
    sum += rhs[i];
  }
  alpha[0] = 1.0 - sum;
  return true;
}

}  // namespace detail

/// Builds the hull: extreme points in canonical order (2D counterclockwise from the
/// lexicographically smallest vertex, 3D lexicographic) and, when full-dimensional, facets.
template <std::size_t N>
ConvexHull<N> convex_hull(std::span<const Vec<N>> points) {
  static_assert(N == 2 || N == 3, "only planar and spatial hulls are supported");
  if constexpr (N == 2) {
    return detail::hull_2d(points);
  } else {
    return detail::hull_3d(points);
  }
}

template <std::size_t N>
std::vector<Vec<N>> hull_reduce(std::span<const Vec<N>> points) {
  return convex_hull<N>(points).vertices;
}

/// Euclidean projection of x onto conv(vertices) by Wolfe's minimum-norm-point
/// active-set iteration. Stops when the duality gap falls below 1e-12 of the squared scale.
template <std::size_t N>
HullProjection<N> project_onto_hull(std::span<const Vec<N>> vertices, const Vec<N>& x) {
  if (vertices.empty()) throw std::invalid_argument("project_onto_hull: empty vertex set");
  std::vector<Vec<N>> q;
  q.reserve(vertices.size());
  double scale2 = 0.0;
  std::size_t first = 0;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    q.push_back(vertices[i] - x);
    const double n2 = dot(q.back(), q.back());
    scale2 = std::max(scale2, n2);
    if (n2 < dot(q[first], q[first])) first = i;
  }

  std::vector<std::size_t> active{first};
  std::vector<double> lambda{1.0};
  Vec<N> w = q[first];
  auto rebuild = [&] {
    w = Vec<N>{};
    for (std::size_t i = 0; i < active.size(); ++i) w += lambda[i] * q[active[i]];
  };

  const double gap_tol = 1e-12 * scale2;
  std::vector<double> alpha;
  bool stalled = false;
  for (std::size_t iter = 0; !stalled && iter < 64 * (vertices.size() + N); ++iter) {
    const double ww = dot(w, w);
    if (ww <= 1e-28 * scale2) break;
    std::size_t j = 0;
    double best = dot(w, q[0]);
    for (std::size_t i = 1; i < q.size(); ++i) {
      const double v = dot(w, q[i]);
      if (v < best) best = v, j = i;
    }
    if (ww - best <= gap_tol) break;
    if (std::find(active.begin(), active.end(), j) != active.end()) break;
    if (active.size() == N + 1) break;
    active.push_back(j);
    lambda.push_back(0.0);

    for (;;) {
      if (!detail::affine_minimizer(q, active, alpha)) {
        active.pop_back();
        lambda.pop_back();
        rebuild();
        stalled = true;
        break;
      }
      if (std::all_of(alpha.begin(), alpha.end(), [](double a) { return a > 1e-15; })) {
        lambda = alpha;
        rebuild();
        break;
      }
      double theta = 1.0;
      std::size_t drop = 0;
      for (std::size_t i = 0; i < active.size(); ++i) {
        if (alpha[i] <= 1e-15) {
          const double t = lambda[i] / (lambda[i] - alpha[i]);
          if (t < theta) theta = t, drop = i;
        }
      }
      for (std::size_t i = 0; i < active.size(); ++i) lambda[i] = (1.0 - theta) * lambda[i] + theta * alpha[i];
      lambda[drop] = 0.0;
      for (std::size_t i = active.size(); i-- > 0;) {
        if (lambda[i] <= 1e-15) {
          active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
          lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
        }
      }
      double sum = 0.0;
      for (double l : lambda) sum += l;
      for (double& l : lambda) l /= sum;
      rebuild();
    }
  }
  HullProjection<N> out;
  out.point = x + w;
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (lambda[i] > 1e-12) {
      out.support.push_back(active[i]);
      out.weights.push_back(lambda[i]);
    }
  }
  if (out.support.empty()) {
    out.support = active;
    out.weights = lambda;
  }
  return out;
}

}  // namespace confcert
