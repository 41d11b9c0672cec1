#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "confcert/certificate.hpp"
#include "confcert/geometry.hpp"
#include "confcert/metrics.hpp"
#include "confcert/philox.hpp"

namespace confcert {

/// Walk-on-spheres parameters. Estimates depend on (seed, walkers) only, never on workers.
struct WosConfig {
  double epsilon = 0.0;  // absorption shell; 0 selects 1e-5 * R_I
  std::uint64_t max_steps = 1'000'000;
  std::uint64_t walkers = 1'000'000;
  std::uint64_t seed = 0;
  unsigned workers = 0;  // 0 selects the hardware concurrency

  template <std::size_t N>
  WosConfig resolved(const RoundedConvexBody<N>& body) const {
    WosConfig c = *this;
    const double inner = radii(body).inner;
    if (c.epsilon == 0.0) c.epsilon = 1e-5 * inner;
    if (c.workers == 0) c.workers = std::max(1u, std::thread::hardware_concurrency());
    if (!(c.epsilon > 0.0) || c.epsilon > inner / 100.0)
      throw std::invalid_argument("epsilon must lie in (0, R_I/100]");
    if (c.walkers == 0) throw std::invalid_argument("walkers must be positive");
    if (c.max_steps == 0) throw std::invalid_argument("max_steps must be positive");
    return c;
  }
};

template <std::size_t N>
struct ExitSample {
  Vec<N> point{};
  std::uint32_t steps = 0;
  bool overflow = false;
};

namespace detail {

template <std::size_t N>
Vec<N> uniform_direction(PhiloxStream& rng) {
  const double t = 2.0 * std::numbers::pi * rng.uniform();
  if constexpr (N == 2) {
    return {std::cos(t), std::sin(t)};
  } else {
    const double z = 2.0 * rng.uniform() - 1.0;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {rho * std::cos(t), rho * std::sin(t), z};
  }
}

/// Runs fn(i) for i in [0, count) over `workers` threads in contiguous blocks.
template <typename Fn>
void parallel_for(std::uint64_t count, unsigned workers, const Fn& fn) {
  workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, workers), std::max<std::uint64_t>(count, 1)));
  if (workers == 1) {
    for (std::uint64_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk, hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([lo, hi, &fn] {
      for (std::uint64_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace detail

/// One walker: jump to a uniform point on the largest inscribed sphere until within
/// epsilon of the boundary, then snap to the nearest boundary point.
/// `config` must already be resolved.
template <std::size_t N>
ExitSample<N> wos_exit(const RoundedConvexBody<N>& body, const Vec<N>& start, const WosConfig& config,
                       std::uint64_t walker_index) {
  PhiloxStream rng(config.seed, walker_index);
  Vec<N> x = start;
  for (std::uint64_t step = 0; step < config.max_steps; ++step) {
    const auto sd = body.signed_distance(x);
    if (sd.distance < config.epsilon) return {sd.nearest, static_cast<std::uint32_t>(step), false};
    x += sd.distance * detail::uniform_direction<N>(rng);
  }
  return {x, static_cast<std::uint32_t>(std::min<std::uint64_t>(config.max_steps, UINT32_MAX)), true};
}

/// Exit points of walkers 0..walkers-1, indexed by walker.
template <std::size_t N>
std::vector<ExitSample<N>> sample_exits(const RoundedConvexBody<N>& body, const Vec<N>& start, const WosConfig& config) {
  const WosConfig c = config.resolved(body);
  if (!(body.signed_distance(start).distance > c.epsilon))
    throw std::invalid_argument("walk start must lie deeper than epsilon inside the domain");
  std::vector<ExitSample<N>> exits(c.walkers);
  detail::parallel_for(c.walkers, c.workers, [&](std::uint64_t i) { exits[i] = wos_exit(body, start, c, i); });
  return exits;
}

/// Partition of the boundary into `count` bins by a classifier of exit points.
template <std::size_t N>
struct BoundaryPartition {
  std::string description;
  std::size_t count = 0;
  std::function<std::size_t(const Vec<N>&)> bin;
};

/// k equal angular sectors about `center`, sector 0 starting at angle 0.
inline BoundaryPartition<2> angular_bins(const Vec2& center, std::size_t k) {
  return {std::to_string(k) + " angular sectors", k, [center, k](const Vec2& p) {
            double a = std::atan2(p[1] - center[1], p[0] - center[0]);
            if (a < 0.0) a += 2.0 * std::numbers::pi;
            const auto i = static_cast<std::size_t>(a / (2.0 * std::numbers::pi) * static_cast<double>(k));
            return std::min(i, k - 1);
          }};
}

/// The eight coordinate octants about `center`; bit i set when coordinate i is negative.
inline BoundaryPartition<3> octant_bins(const Vec3& center) {
  return {"octants", 8, [center](const Vec3& p) {
            std::size_t i = 0;
            for (std::size_t c = 0; c < 3; ++c)
              if (p[c] < center[c]) i |= std::size_t{1} << c;
            return i;
          }};
}

struct HarmonicMeasureEstimate {
  std::string bins;
  std::vector<std::uint64_t> hits;
  std::uint64_t overflow = 0;
  std::uint64_t walkers = 0;
  bool overflow_flagged = false;  // more than 1e-4 of the mass hit max_steps

  double probability(std::size_t i) const { return static_cast<double>(hits[i]) / static_cast<double>(walkers); }
  double std_error(std::size_t i) const {
    const double p = probability(i);
    return std::sqrt(p * (1.0 - p) / static_cast<double>(walkers));
  }
  double overflow_fraction() const { return static_cast<double>(overflow) / static_cast<double>(walkers); }
};

template <std::size_t N>
HarmonicMeasureEstimate harmonic_measure(const RoundedConvexBody<N>& body, const Vec<N>& start,
                                         const BoundaryPartition<N>& bins, const WosConfig& config) {
  const auto exits = sample_exits(body, start, config);
  HarmonicMeasureEstimate est;
  est.bins = bins.description;
  est.hits.assign(bins.count, 0);
  est.walkers = exits.size();
  for (const auto& e : exits) {
    if (e.overflow) {
      ++est.overflow;
    } else {
      ++est.hits.at(bins.bin(e.point));
    }
  }
  est.overflow_flagged = est.overflow_fraction() > 1e-4;
  return est;
}

/// Poisson kernel of B(c, R) in R^n: (R^2 - |pole - c|^2) / (sigma_{n-1} R |w - pole|^n).
template <std::size_t N>
double poisson_density(const Vec<N>& center, double radius, int n, const Vec<N>& pole, const Vec<N>& w) {
  const double pc = distance(pole, center);
  if (!(pc < radius)) throw std::domain_error("poisson_density: pole must lie inside the ball");
  if (std::abs(distance(w, center) - radius) > 1e-9 * radius)
    throw std::domain_error("poisson_density: w must lie on the sphere");
  return (radius * radius - pc * pc) / (sphere_area(n) * radius * std::pow(distance(w, pole), n));
}

namespace detail {

// Boundary point on the line q + lambda n, lambda in [-r, 0]; the crossing is unique since the
// signed distance is concave along lines.
inline Vec3 boundary_below(const RoundedConvexBody<3>& body, const Vec3& q, const Vec3& n) {
  double lo = -body.rounding(), hi = 0.0;
  for (int it = 0; it < 64; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (body.signed_distance(q + mid * n).distance > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return q + hi * n;
}

// Patch area by polar quadrature over the tangent plane at w, the boundary being a
// graph over it within distance r/10.
inline double patch_area_numeric(const RoundedConvexBody<3>& body, const Vec3& w, double delta) {
  const Vec3 n = body.normal_at(w);
  const Vec3 e1 = any_orthogonal(n);
  const Vec3 e2 = cross(n, e1);
  auto radial_integral = [&](double theta) {
    const Vec3 t = std::cos(theta) * e1 + std::sin(theta) * e2;
    auto point = [&](double rho) { return boundary_below(body, w + rho * t, n); };
    double lo = 0.0, hi = delta;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (distance(point(mid), w) < delta) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double rho_max = 0.5 * (lo + hi);
    auto integrand = [&](double rho) {
      const Vec3 p = point(rho);
      return rho / std::max(1e-12, dot(body.normal_at(p), n));
    };
    double sum = 0.0;
    constexpr int panels = 4;
    for (int k = 0; k < panels; ++k)
      sum += integrate(integrand, rho_max * k / panels, rho_max * (k + 1) / panels, 1e-8, 20);
    return sum;
  };
  double area = 0.0;
  constexpr int panels = 16;
  for (int k = 0; k < panels; ++k) {
    const double a = 2.0 * std::numbers::pi * k / panels, b = 2.0 * std::numbers::pi * (k + 1) / panels;
    area += integrate(radial_integral, a, b, 1e-7, 12);
  }
  return area;
}

}  // namespace detail

/// Boundary measure of B(w, delta) intersected with the boundary: exact arclength in 2D; in 3D
/// pi delta^2 when the patch lies inside one flat or spherical piece, quadrature otherwise.
template <std::size_t N>
double patch_measure(const RoundedConvexBody<N>& body, const Vec<N>& w, double delta) {
  if constexpr (N == 2) {
    return BoundaryParam2D(body).patch_length(w, delta);
  } else {
    const double r = body.rounding();
    const auto sd = body.signed_distance(w);
    const Vec3 base = w - r * sd.normal;  // projection onto the hull
    const auto& hull = body.hull();
    const double flat = std::numbers::pi * delta * delta;
    if (sd.region == BoundaryRegion::vertex_sphere) {
      const double alpha = 2.0 * std::asin(delta / (2.0 * r));
      bool inside = true;
      for (const auto& q : hull.vertices) {
        const Vec3 d = q - base;
        const double len = norm(d);
        if (len > 1e-12 && dot(d, sd.normal) > -len * std::sin(alpha)) inside = false;
      }
      if (inside) return flat;
    } else if (sd.region == BoundaryRegion::facet && hull.full_dimensional()) {
      for (const auto& f : hull.facets) {
        if (norm(f.normal - sd.normal) > 1e-9) continue;
        bool inside = true;
        for (std::size_t k = 0; k < f.vertices.size(); ++k) {
          const Vec3& a = hull.vertices[f.vertices[k]];
          const Vec3& b = hull.vertices[f.vertices[(k + 1) % f.vertices.size()]];
          const Vec3 inward = normalized(cross(f.normal, b - a));
          if (dot(base - a, inward) < delta) inside = false;
        }
        if (inside) return flat;
      }
    }
    return detail::patch_area_numeric(body, w, delta);
  }
}

template <std::size_t N>
struct DensityProbe {
  Vec<N> point{};
  std::string label;
  double delta = 0.0;
  double patch_measure = 0.0;
  std::uint64_t hits = 0;
  std::uint64_t walkers = 0;
  double probability = 0.0;
  double density = 0.0;
  double std_error = 0.0;  // of the density
  double ci95 = 0.0;       // half-width, 1.96 standard errors
  bool flagged = false;    // no hits: only an upper confidence bound is available
};

namespace detail {

template <std::size_t N>
DensityProbe<N> score_probe(const RoundedConvexBody<N>& body, const std::vector<ExitSample<N>>& exits, const Vec<N>& w,
                            double delta, std::string label) {
  DensityProbe<N> p;
  p.point = w;
  p.label = std::move(label);
  p.delta = delta;
  p.patch_measure = patch_measure(body, w, delta);
  p.walkers = exits.size();
  const double d2 = delta * delta;
  for (const auto& e : exits) {
    if (e.overflow) continue;
    const Vec<N> diff = e.point - w;
    if (dot(diff, diff) < d2) ++p.hits;
  }
  const double total = static_cast<double>(p.walkers);
  p.probability = static_cast<double>(p.hits) / total;
  p.density = p.probability / p.patch_measure;
  p.std_error = std::sqrt(p.probability * (1.0 - p.probability) / total) / p.patch_measure;
  p.ci95 = 1.96 * p.std_error;
  p.flagged = p.hits == 0;
  return p;
}

template <std::size_t N>
void check_probe_args(const RoundedConvexBody<N>& body, const Vec<N>& w, double delta) {
  if (std::abs(body.signed_distance(w).distance) > 1e-9) throw std::invalid_argument("probe point must lie on the boundary");
  if (!(delta > 0.0) || delta > body.rounding() / 10.0 * (1.0 + 1e-12))
    throw std::invalid_argument("patch radius must lie in (0, R_C/10]");
}

}  // namespace detail

/// Monte Carlo density of harmonic measure (pole at the origin) near boundary point w.
template <std::size_t N>
DensityProbe<N> density_at(const RoundedConvexBody<N>& body, const Vec<N>& w, double delta, const WosConfig& config) {
  detail::check_probe_args(body, w, delta);
  const auto exits = sample_exits(body, Vec<N>{}, config);
  return detail::score_probe(body, exits, w, delta, "point");
}

enum class Verdict { verified, refuted, inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::verified: return "verified";
    case Verdict::refuted: return "refuted";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

template <std::size_t N>
struct VerificationReport {
  std::vector<DensityProbe<N>> probes;
  double threshold = 0.0;       // 1 / sigma_{n-1}
  double min_normalized = 0.0;  // min density * sigma_{n-1}
  double slack = 0.05;
  double sigmas = 3.0;          // band half-width in standard errors
  std::uint64_t walkers = 0;
  double overflow_fraction = 0.0;
  Verdict verdict = Verdict::inconclusive;
  std::string confidence;
  std::string note;
};

/// Scores one shared exit sample against every probe patch and decides:
/// refuted if some probe has density + 3 se < threshold, verified if every probe has
/// density - 3 se >= (1 - slack) threshold, inconclusive otherwise.
template <std::size_t N>
VerificationReport<N> verify_density(const RoundedConvexBody<N>& body, const WosConfig& config, double delta,
                                     std::size_t probe_count, double slack = 0.05) {
  const auto pts = probe_points(body, probe_count);
  for (const auto& p : pts) detail::check_probe_args(body, p.position, delta);
  if (!(slack >= 0.0) || slack >= 1.0) throw std::invalid_argument("slack must lie in [0, 1)");
  const auto exits = sample_exits(body, Vec<N>{}, config);

  VerificationReport<N> rep;
  const double area = sphere_area(static_cast<int>(N));
  rep.threshold = 1.0 / area;
  rep.slack = slack;
  rep.walkers = exits.size();
  std::uint64_t overflow = 0;
  for (const auto& e : exits) overflow += e.overflow ? 1 : 0;
  rep.overflow_fraction = static_cast<double>(overflow) / static_cast<double>(exits.size());
  rep.confidence = "3 standard errors (two-sided ~99.7%) per probe";
  rep.note = "probes are heuristic boundary samples; a verified verdict means no probe refutes the bound";

  bool refuted = false, all_pass = true;
  rep.min_normalized = std::numeric_limits<double>::infinity();
  for (const auto& p : pts) {
    auto probe = detail::score_probe(body, exits, p.position, delta, p.label);
    rep.min_normalized = std::min(rep.min_normalized, probe.density * area);
    const double band = rep.sigmas * probe.std_error;
    if (probe.flagged) {
      all_pass = false;
    } else {
      if (probe.density + band < rep.threshold) refuted = true;
      if (probe.density - band < rep.threshold * (1.0 - slack)) all_pass = false;
    }
    rep.probes.push_back(std::move(probe));
  }
  if (refuted) {
    rep.verdict = Verdict::refuted;
  } else if (all_pass && rep.overflow_fraction <= 1e-4) {
    rep.verdict = Verdict::verified;
  } else {
    rep.verdict = Verdict::inconclusive;
  }
  return rep;
}

}  // namespace confcert
