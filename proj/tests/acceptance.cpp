// Acceptance gate: one PASS/FAIL line per criterion.
//
//   acceptance        run all criteria
//   acceptance 4 6    run the listed ones
//
// Exit status is 0 only when every selected criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "commands.hpp"

using namespace confcert;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Check {
  std::string what;
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  double budget_s;
  std::function<void(std::vector<Check>&)> body;
};

std::string fmt(const char* f, double a) {
  char buf[96];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string fmt(const char* f, double a, double b) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a, b);
  return buf;
}

DomainSpec load(const std::string& name) {
  return parse_domain(read_text_file(std::string(FIXTURE_DIR) + "/" + name));
}

WosConfig walkers(std::uint64_t n, std::uint64_t seed = 0) {
  WosConfig c;
  c.walkers = n;
  c.seed = seed;
  return c;
}

void ac1(std::vector<Check>& out) {
  const double lhs1 = certify_planar({1, 1, 1}).lhs;
  out.push_back({"planar lhs(1,1,1) = 0", std::abs(lhs1) <= 1e-15, fmt("lhs=%.3g", lhs1)});
  bool flips = true;
  for (double R : {0.5, 0.9, 0.999999, 1.0}) flips = flips && certify_planar({R, R, R}).satisfied;
  for (double R : {1.0 + 1e-12, 1.000001, 1.1, 2.0}) flips = flips && !certify_planar({R, R, R}).satisfied;
  out.push_back({"planar ball verdict flips at R = 1", flips, ""});

  const auto ctx = DimensionContext::of(3);
  bool sflips = true;
  for (double R : {0.1, 0.4, 0.499999, 0.5}) sflips = sflips && certify_spatial({R, R, R}, ctx).satisfied;
  for (double R : {0.5 + 1e-12, 0.500001, 0.6, 1.0}) sflips = sflips && !certify_spatial({R, R, R}, ctx).satisfied;
  out.push_back({"spatial ball verdict flips at R = 0.5 (n = 3)", sflips, ""});

  bool below = true, increasing = true;
  double prev = 0.0;
  for (int n = 3; n <= 50; ++n) {
    const double t = spatial_ball_threshold(n);
    below = below && t < 1.0;
    increasing = increasing && t > prev;
    prev = t;
  }
  out.push_back({"ball threshold < 1 and increasing for n = 3..50", below && increasing,
                 fmt("t(3)=%.6f t(50)=%.6f", spatial_ball_threshold(3), spatial_ball_threshold(50))});
}

void ac2(std::vector<Check>& out) {
  const auto body = make_body<2>(load("rounded_triangle.json"));
  const auto r = radii(body);
  const double err = std::max({std::abs(r.outer - 0.6), std::abs(r.inner - 0.5), std::abs(r.curvature - 0.4)});
  out.push_back({"radii (0.6, 0.5, 0.4) to 1e-9", err <= 1e-9, fmt("max error %.2g", err)});
  const auto c = certify_planar(r);
  out.push_back({"lhs = -0.011857 +- 1e-6", std::abs(c.lhs - (-0.011857)) <= 1e-6 && c.satisfied,
                 fmt("lhs=%.10f, |diff|=%.3g", c.lhs, std::abs(c.lhs + 0.011857))});
  const auto s = max_scaling_planar(r);
  out.push_back({"lambda_max = 1.023914 +- 1e-5", std::abs(s.lambda_max - 1.023914) <= 1e-5,
                 fmt("lambda_max=%.10f, |diff|=%.3g", s.lambda_max, std::abs(s.lambda_max - 1.023914))});
  out.push_back({"boundary residual <= 1e-12", s.residual <= 1e-12, fmt("residual=%.3g", s.residual)});
}

void ac3(std::vector<Check>& out) {
  const RadiiTriple r{0.75, 0.5, 0.5};
  const auto c = certify_spatial(r, DimensionContext::of(3));
  out.push_back({"lhs = rhs = 0.25 to 1e-12", std::abs(c.lhs - 0.25) <= 1e-12 && std::abs(c.rhs - 0.25) <= 1e-12,
                 fmt("lhs=%.15g rhs=%.15g", c.lhs, c.rhs)});
  out.push_back({"verdict satisfied", c.satisfied, ""});
  const double limit = density_ratio_limit(r, 3);
  out.push_back({"d -> 0 limit = 1 to 1e-12", std::abs(limit - 1.0) <= 1e-12, fmt("limit=%.15g", limit)});
  const auto fr = radii(make_body<3>(load("capsule_3d.json")));
  const bool same = std::abs(fr.outer - 0.75) <= 1e-12 && std::abs(fr.inner - 0.5) <= 1e-12 && fr.curvature == 0.5;
  out.push_back({"capsule fixture has radii (0.75, 0.5, 0.5)", same,
                 fmt("R_O=%.15g R_I=%.15g", fr.outer, fr.inner)});
}

void ac4(std::vector<Check>& out) {
  const auto body = make_body<2>(load("offcenter_disk.json"));
  const auto c = certify_planar(radii(body));
  out.push_back({"lhs = 2.302585 +- 1e-6, not satisfied", std::abs(c.lhs - 2.302585) <= 1e-6 && !c.satisfied,
                 fmt("lhs=%.10f", c.lhs)});
  const Vec2 w{1.9, 0};
  const double exact = poisson_density<2>({0.9, 0}, 1.0, 2, {0, 0}, w);
  out.push_back({"2 pi Poisson density at (1.9, 0) = 0.052632 +- 1e-6", std::abs(kTwoPi * exact - 0.052632) <= 1e-6,
                 fmt("2 pi density=%.10f", kTwoPi * exact)});
  const auto rep = verify_density(body, walkers(1'000'000), 0.05, 16);
  out.push_back({"verify_density refutes at 1e6 walkers", rep.verdict == Verdict::refuted,
                 std::string("verdict=") + to_string(rep.verdict)});
  const DensityProbe<2>* far = nullptr;
  for (const auto& p : rep.probes)
    if (distance(p.point, w) < 1e-12) far = &p;
  const bool agree = far && std::abs(far->density - exact) <= 3.0 * far->std_error;
  out.push_back({"MC probe at (1.9, 0) within 3 sigma of analytic", agree,
                 far ? fmt("2 pi MC=%.5f, 3 sigma=%.5f", kTwoPi * far->density, kTwoPi * 3 * far->std_error) : "no probe"});
}

void ac5(std::vector<Check>& out) {
  const auto body = make_body<2>(load("unit_disk.json"));
  const double target = 1.0 / kTwoPi;
  auto cfg = walkers(1'000'000);
  const auto rep = verify_density(body, cfg, 0.05, 16);
  double worst = 0.0;
  for (const auto& p : rep.probes) worst = std::max(worst, std::abs(p.density - target) / p.std_error);
  out.push_back({"every probe within 3 sigma of 1/(2 pi)", worst <= 3.0,
                 fmt("%.0f probes, worst |z|=%.2f", static_cast<double>(rep.probes.size()), worst)});

  const auto hm = harmonic_measure(body, Vec2{0, 0}, angular_bins({0, 0}, 2), cfg);
  const double dev = std::max(std::abs(hm.probability(0) - 0.5), std::abs(hm.probability(1) - 0.5));
  out.push_back({"half-circle measure 0.5 +- 0.003", dev <= 0.003, fmt("max |p - 0.5|=%.5f", dev)});

  cfg.epsilon = 0.5e-5 * radii(body).inner;
  const auto half = verify_density(body, cfg, 0.05, 16);
  double shift = 0.0;
  bool within = true;
  for (std::size_t i = 0; i < rep.probes.size(); ++i) {
    const double d = std::abs(half.probes[i].density - rep.probes[i].density);
    shift = std::max(shift, d / rep.probes[i].std_error);
    within = within && d < 3.0 * rep.probes[i].std_error;
  }
  out.push_back({"halving epsilon stays inside the 3 sigma band", within, fmt("max shift=%.3f sigma", shift)});
}

void ac6(std::vector<Check>& out) {
  const auto body = make_body<2>(load("rounded_triangle.json"));
  const auto rep = verify_density(body, walkers(1'000'000), radii(body).curvature / 20, 16, 0.05);
  out.push_back({"rounded triangle verified with slack 0.05", rep.verdict == Verdict::verified,
                 std::string("verdict=") + to_string(rep.verdict) + fmt(", min normalized=%.4f", rep.min_normalized)});
}

void ac7(std::vector<Check>& out) {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  bool ordered = true;
  int n = 0;
  while (n < 1000) {
    const Vec2 z{u(rng), u(rng)};
    if (!(norm(z) < 1.0)) continue;
    ++n;
    const double t = norm(z);
    const double k = -std::log1p(-t);
    const double rho = hyperbolic_disk(z).value;
    ordered = ordered && 0.25 * k <= rho && rho <= k;
  }
  out.push_back({"k/4 <= rho <= k for 1000 random z", ordered, ""});

  const auto disk = make_body<2>(load("unit_disk.json"));
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double s = 0.01 * i;
    worst = std::max(worst, std::abs(quasihyperbolic_segment_bound(disk, {0, 0}, {s, 0}).value + std::log1p(-s)));
  }
  out.push_back({"radial segment bound = -log(1 - s) within 1e-7", worst <= 1e-7, fmt("max error %.3g", worst)});

  bool dominated = true;
  double margin = 1e300;
  auto check = [&](const auto& body) {
    const auto r = radii(body);
    for (const auto& p : probe_points(body, 16)) {
      const auto a = p.position - r.curvature * body.signed_distance(p.position).normal;
      const double seg = quasihyperbolic_segment_bound(body, decltype(a){}, a).value;
      const double cone = quasihyperbolic_cone_bound(r, norm(a));
      dominated = dominated && seg <= cone * (1 + 1e-6);
      margin = std::min(margin, cone - seg);
    }
  };
  for (const char* f : {"unit_disk.json", "rounded_triangle.json", "offcenter_disk.json", "stadium.json"})
    check(make_body<2>(load(f)));
  for (const char* f : {"ball_half.json", "capsule_3d.json", "rounded_tetrahedron.json"}) check(make_body<3>(load(f)));
  out.push_back({"segment bound <= cone bound at all fixture probe centers", dominated,
                 fmt("min(cone - segment)=%.3g", margin)});
}

void ac8(std::vector<Check>& out) {
  bool sound = true, monotone = true;
  int pairs = 0;
  for (int i = 1; i <= 40; ++i) {
    const double R = 0.05 * i;
    double prev = 0.0;
    for (int j = 1; j <= 25; ++j, ++pairs) {
      const double d = R * j / 26.0;
      const auto g = density_lower_bound({R, R, R}, 3, d);
      const double truth = sphere_area(3) * green_ball(R - d, R, 3) / d;
      sound = sound && g.density_ratio_bound <= truth;
      monotone = monotone && g.density_ratio_bound > prev;
      prev = g.density_ratio_bound;
    }
  }
  out.push_back({"bound <= sigma_2 g / d on the ball grid", sound, fmt("%.0f (R, d) pairs", pairs)});
  out.push_back({"bound increasing in d", monotone, ""});

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(0.05, 2.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double rc = u(rng), ri = u(rng);
    const RadiiTriple r{std::max(rc, ri) + u(rng), ri, rc};
    const auto c = certify_spatial(r, DimensionContext::of(3));
    const double want = c.rhs / c.lhs;
    worst = std::max(worst, std::abs(density_ratio_limit(r, 3) - want) / want);
  }
  out.push_back({"limit = rhs/lhs to 1e-12 (relative) on 1000 radii", worst <= 1e-12, fmt("max rel error %.3g", worst)});
}

void ac9(std::vector<Check>& out) {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "confcert_acceptance";
  fs::create_directories(dir);
  auto csv_for = [&](unsigned workers, int tag) {
    cli::Options o;
    o.file = std::string(FIXTURE_DIR) + "/rounded_triangle.json";
    o.wos.seed = 17;
    o.wos.workers = workers;
    o.out = (dir / ("run" + std::to_string(tag) + ".csv")).string();
    std::ostringstream sink;
    cli::run_guarded([&] { return cli::cmd_verify(o, sink, sink); }, sink);
    return read_text_file(o.out);
  };
  const std::string base = csv_for(1, 0);
  out.push_back({"repeat run is byte-identical", csv_for(1, 1) == base, fmt("%.0f bytes", static_cast<double>(base.size()))});
  bool same = true;
  for (unsigned w : {4u, 8u}) same = same && csv_for(w, static_cast<int>(w)) == base;
  out.push_back({"workers 1, 4, 8 give byte-identical CSV", same, ""});
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "ball boundary cases", 1.0, ac1},
      {2, "rounded-triangle certificate", 1.0, ac2},
      {3, "spatial example on the boundary", 1.0, ac3},
      {4, "off-center disk refuted", 120.0, ac4},
      {5, "unit-disk calibration", 120.0, ac5},
      {6, "rounded triangle verified by Monte Carlo", 180.0, ac6},
      {7, "metric comparisons", 10.0, ac7},
      {8, "Green bound soundness", 5.0, ac8},
      {9, "determinism", 300.0, ac9},
  };
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));
  bool all_ok = true;
  for (const auto& c : all) {
    if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end()) continue;
    std::vector<Check> checks;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.body(checks);
    } catch (const std::exception& e) {
      checks.push_back({"no exception", false, e.what()});
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    checks.push_back({"runtime budget", secs < c.budget_s, fmt("%.2f s of %.0f s", secs, c.budget_s)});
    bool ok = true;
    for (const auto& k : checks) ok = ok && k.ok;
    all_ok = all_ok && ok;
    std::printf("AC%d %s: %s\n", c.id, ok ? "PASS" : "FAIL", c.title.c_str());
    for (const auto& k : checks)
      std::printf("    [%s] %s%s%s\n", k.ok ? " ok " : "FAIL", k.what.c_str(), k.detail.empty() ? "" : ": ",
                  k.detail.c_str());
  }
  return all_ok ? 0 : 1;
}
