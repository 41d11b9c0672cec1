#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "confcert/certificate.hpp"
#include "confcert/domain_file.hpp"
#include "confcert/geometry.hpp"
#include "confcert/greenbounds.hpp"
#include "confcert/metrics.hpp"
#include "confcert/oracle.hpp"
#include "confcert/svg.hpp"

namespace confcert::cli {

enum ExitCode : int { kPass = 0, kFail = 1, kInconclusive = 2, kInputError = 3, kInternalError = 4 };

struct Options {
  std::string file;
  std::optional<int> n;
  WosConfig wos;
  std::optional<double> delta;
  std::size_t probes = 16;
  double slack = 0.05;
  std::optional<double> d;
  std::string out;   // CSV path for verify, directory for report
  std::string json;  // where to write the RunReport
  bool timing = false;
};

inline std::string g12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

namespace detail {

struct Loaded {
  std::string hash;
  DomainSpec dom;
};

inline Loaded load(const Options& o) {
  if (o.file.empty()) throw InputError("a domain file is required");
  const std::string text = read_text_file(o.file);
  return {fnv1a_hex(text), parse_domain(text)};
}

/// Calls fn(body) with the body of the file's dimension.
template <typename Fn>
auto with_body(const DomainSpec& dom, Fn&& fn) {
  if (dom.dim == 2) return fn(make_body<2>(dom));
  return fn(make_body<3>(dom));
}

inline int dimension_for(const Options& o, int dim) {
  const int n = o.n.value_or(dim);
  if (n < 2) throw InputError("--n must be at least 2");
  if (dim == 3 && n < 3) throw InputError("--n must be at least 3 for a spatial domain");
  return n;
}

inline nlohmann::json base_report(const std::string& command, const Options& o, const Loaded& in, const RadiiTriple& r) {
  nlohmann::json j;
  j["command"] = command;
  j["input_file"] = std::filesystem::path(o.file).filename().string();
  j["input_hash"] = in.hash;
  j["dim"] = in.dom.dim;
  j["radii"] = {{"outer", r.outer}, {"inner", r.inner}, {"curvature", r.curvature}};
  return j;
}

inline void finish_report(nlohmann::json& j, const Options& o, std::chrono::steady_clock::time_point t0) {
  if (o.timing)
    j["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (o.json.empty()) return;
  std::ofstream f(o.json, std::ios::binary);
  if (!f) throw InputError("cannot write " + o.json);
  f << j.dump(2) << "\n";
}

inline nlohmann::json certificate_json(const RadiiTriple& r, int n) {
  if (n == 2) {
    const auto c = certify_planar(r);
    return {{"criterion", "planar"}, {"lhs", c.lhs}, {"scale_invariant_term", c.scale_invariant_term},
            {"margin", c.margin}, {"satisfied", c.satisfied}};
  }
  const auto c = certify_spatial(r, DimensionContext::of(n));
  return {{"criterion", "spatial"}, {"n", n}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"exponent", c.exponent},
          {"margin", c.margin}, {"satisfied", c.satisfied}};
}

inline ScalingResult scaling_for(const RadiiTriple& r, int n) {
  return n == 2 ? max_scaling_planar(r) : max_scaling_spatial(r, DimensionContext::of(n));
}

}  // namespace detail

/// Fixed CSV layout of a probe table.
inline const char* kProbeCsvHeader =
    "probe,label,x,y,z,delta,patch_measure,hits,walkers,probability,density,normalized_density,std_error,ci95,flagged\n";

template <std::size_t N>
std::string probe_csv(const VerificationReport<N>& rep) {
  std::string s = kProbeCsvHeader;
  const double area = 1.0 / rep.threshold;
  for (std::size_t i = 0; i < rep.probes.size(); ++i) {
    const auto& p = rep.probes[i];
    s += std::to_string(i) + "," + p.label + "," + g12(p.point[0]) + "," + g12(p.point[1]) + "," +
         g12(N == 3 ? p.point[N - 1] : 0.0) + "," + g12(p.delta) + "," + g12(p.patch_measure) + "," +
         std::to_string(p.hits) + "," + std::to_string(p.walkers) + "," + g12(p.probability) + "," + g12(p.density) +
         "," + g12(p.density * area) + "," + g12(p.std_error) + "," + g12(p.ci95) + "," + (p.flagged ? "1" : "0") + "\n";
  }
  return s;
}

template <std::size_t N>
nlohmann::json verification_json(const VerificationReport<N>& rep) {
  nlohmann::json probes = nlohmann::json::array();
  for (const auto& p : rep.probes) {
    probes.push_back({{"label", p.label}, {"point", p.point}, {"delta", p.delta}, {"patch_measure", p.patch_measure},
                      {"hits", p.hits}, {"density", p.density}, {"normalized_density", p.density / rep.threshold},
                      {"ci95", p.ci95}, {"flagged", p.flagged}});
  }
  return {{"probes", probes},
          {"threshold", rep.threshold},
          {"min_normalized", rep.min_normalized},
          {"slack", rep.slack},
          {"walkers", rep.walkers},
          {"overflow_fraction", rep.overflow_fraction},
          {"verdict", to_string(rep.verdict)},
          {"confidence", rep.confidence},
          {"note", rep.note}};
}

template <std::size_t N>
void print_probe_table(std::ostream& out, const VerificationReport<N>& rep) {
  const double area = 1.0 / rep.threshold;
  char line[200];
  std::snprintf(line, sizeof line, "%-4s %-15s %12s %12s %10s %10s %8s\n", "#", "label", "x", "y", "hits", "density*s", "ci95*s");
  out << line;
  for (std::size_t i = 0; i < rep.probes.size(); ++i) {
    const auto& p = rep.probes[i];
    std::snprintf(line, sizeof line, "%-4zu %-15s %12.6f %12.6f %10llu %10.5f %8.5f\n", i, p.label.c_str(), p.point[0],
                  p.point[1], static_cast<unsigned long long>(p.hits), p.density * area, p.ci95 * area);
    out << line;
  }
}

inline int cmd_radii(const Options& o, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = detail::load(o);
  const auto r = detail::with_body(in.dom, [](const auto& b) { return radii(b); });
  out << "R_O = " << g12(r.outer) << "\nR_I = " << g12(r.inner) << "\nR_C = " << g12(r.curvature) << "\n";
  auto j = detail::base_report("radii", o, in, r);
  detail::finish_report(j, o, t0);
  return kPass;
}

inline int cmd_certify(const Options& o, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = detail::load(o);
  const int n = detail::dimension_for(o, in.dom.dim);
  const auto r = detail::with_body(in.dom, [](const auto& b) { return radii(b); });
  auto j = detail::base_report("certify", o, in, r);
  const auto cert = detail::certificate_json(r, n);
  j["certificate"] = cert;
  j["scaling"] = {{"lambda_max", detail::scaling_for(r, n).lambda_max}};
  const bool ok = cert["satisfied"].get<bool>();
  out << "criterion = " << cert["criterion"].get<std::string>() << " (n = " << n << ")\n";
  out << "lhs = " << g12(cert["lhs"].get<double>()) << "\n";
  if (n > 2) out << "rhs = " << g12(cert["rhs"].get<double>()) << "\n";
  out << "margin = " << g12(cert["margin"].get<double>()) << "\n";
  out << "verdict = " << (ok ? "satisfied" : "not satisfied") << "\n";
  j["verdict"] = ok ? "satisfied" : "not satisfied";
  detail::finish_report(j, o, t0);
  return ok ? kPass : kFail;
}

/// Writes the rescaled domain file to `out`; the scaling factor goes to `err`.
inline int cmd_scale(const Options& o, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = detail::load(o);
  const int n = detail::dimension_for(o, in.dom.dim);
  const auto r = detail::with_body(in.dom, [](const auto& b) { return radii(b); });
  const auto s = detail::scaling_for(r, n);
  out << serialize_domain(scaled_domain(in.dom, s.lambda_max));
  err << "lambda_max = " << g12(s.lambda_max) << "\nresidual = " << g12(s.residual) << "\n";
  auto j = detail::base_report("scale", o, in, r);
  j["scaling"] = {{"lambda_max", s.lambda_max}, {"residual", s.residual}, {"n", n}};
  detail::finish_report(j, o, t0);
  return kPass;
}

namespace detail {

template <std::size_t N>
VerificationReport<N> run_verification(const RoundedConvexBody<N>& body, const Options& o) {
  const double delta = o.delta.value_or(body.rounding() / 20.0);
  return verify_density(body, o.wos, delta, o.probes, o.slack);
}

inline int verdict_code(Verdict v) {
  switch (v) {
    case Verdict::verified: return kPass;
    case Verdict::refuted: return kFail;
    case Verdict::inconclusive: return kInconclusive;
  }
  return kInternalError;
}

inline void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path.string());
  f << text;
}

}  // namespace detail

inline int cmd_verify(const Options& o, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = detail::load(o);
  return detail::with_body(in.dom, [&](const auto& body) {
    const auto r = radii(body);
    const auto rep = detail::run_verification(body, o);
    print_probe_table(out, rep);
    out << "min normalized density = " << g12(rep.min_normalized) << "\n";
    out << "verdict = " << to_string(rep.verdict) << "\n";
    if (!o.out.empty()) detail::write_file(o.out, probe_csv(rep));
    auto j = detail::base_report("verify", o, in, r);
    j["verification"] = verification_json(rep);
    j["verdict"] = to_string(rep.verdict);
    j["seed"] = o.wos.seed;
    detail::finish_report(j, o, t0);
    return detail::verdict_code(rep.verdict);
  });
}

inline int cmd_trace(const Options& o, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto in = detail::load(o);
  const int n = detail::dimension_for(o, in.dom.dim);
  const auto r = detail::with_body(in.dom, [](const auto& b) { return radii(b); });
  const double d = o.d.value_or(0.5 * r.curvature);
  auto j = detail::base_report("trace", o, in, r);
  if (n == 2) {
    const auto t = planar_proof_trace(r, d);
    out << "d                     = " << g12(t.d) << "\n"
        << "pole gap (exact)      = " << g12(t.pole_gap_exact) << "\n"
        << "pole gap bound        = " << g12(t.pole_gap_bound) << "\n"
        << "center distance bound = " << g12(t.center_distance_bound) << "\n"
        << "origin distance lower = " << g12(t.origin_distance_lower) << "\n"
        << "offset lhs            = " << g12(t.offset_lhs) << "\n"
        << "offset rhs            = " << g12(t.offset_rhs) << "\n"
        << "d_star                = " << g12(t.d_star) << "\n"
        << "contradiction at d    = " << (t.contradiction ? "yes" : "no") << "\n";
    j["trace"] = {{"d", t.d},
                  {"pole_gap_bound", t.pole_gap_bound},
                  {"pole_gap_exact", t.pole_gap_exact},
                  {"center_distance_bound", t.center_distance_bound},
                  {"origin_distance_lower", t.origin_distance_lower},
                  {"offset_lhs", t.offset_lhs},
                  {"offset_rhs", t.offset_rhs},
                  {"d_star", t.d_star},
                  {"contradiction", t.contradiction}};
  } else {
    const auto g = density_lower_bound(r, n, d);
    out << "n                   = " << n << "\n"
        << "d                   = " << g12(g.d) << "\n"
        << "harnack_factor      = " << g12(g.harnack_factor) << "\n"
        << "ball_minorant       = " << g12(g.ball_minorant) << "\n"
        << "chain_penalty       = " << g12(g.chain_penalty) << (g.pole_ball_case ? " (no chain needed)" : "") << "\n"
        << "density_ratio_bound = " << g12(g.density_ratio_bound) << "\n"
        << "limit d->0          = " << g12(g.limit) << "\n";
    j["trace"] = {{"n", n},
                  {"d", g.d},
                  {"harnack_factor", g.harnack_factor},
                  {"ball_minorant", g.ball_minorant},
                  {"chain_penalty", g.chain_penalty},
                  {"density_ratio_bound", g.density_ratio_bound},
                  {"limit", g.limit},
                  {"pole_ball_case", g.pole_ball_case}};
  }
  detail::finish_report(j, o, t0);
  return kPass;
}

inline std::string domain_svg(const RoundedConvexBody<2>& body, const VerificationReport<2>& rep) {
  const auto r = radii(body);
  svg::Document doc(1.15 * r.outer);
  const BoundaryParam2D bp(body);
  doc.path(svg::boundary_path(bp), "#dfe8f5", "#1f3b73");
  doc.circle({0, 0}, r.outer, "#555555", "4 2");
  doc.circle({0, 0}, r.inner, "#2a7a2a", "2 2");
  const Vec2 far = farthest_boundary_point(body);
  doc.circle(far - r.curvature * normalized(far.at(0) == 0 && far.at(1) == 0 ? Vec2{1, 0} : far), r.curvature, "#a0522d");
  doc.dot({0, 0}, "black");
  for (const auto& p : rep.probes) doc.dot(p.point, svg::density_color(p.density / rep.threshold));
  doc.caption("R_O=" + g12(r.outer) + " R_I=" + g12(r.inner) + " R_C=" + g12(r.curvature));
  doc.caption("min normalized density=" + svg::num(rep.min_normalized) + " (" + to_string(rep.verdict) + ")");
  return doc.str();
}

inline int cmd_report(const Options& o, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  if (o.out.empty()) throw InputError("report needs --out <directory>");
  const auto in = detail::load(o);
  const std::filesystem::path dir(o.out);
  std::filesystem::create_directories(dir);
  return detail::with_body(in.dom, [&](const auto& body) {
    constexpr std::size_t N = std::decay_t<decltype(body)>::dim();
    const auto r = radii(body);
    const auto rep = detail::run_verification(body, o);
    detail::write_file(dir / "report.csv", probe_csv(rep));
    out << "wrote " << (dir / "report.csv").string() << "\n";
    if constexpr (N == 2) {
      detail::write_file(dir / "domain.svg", domain_svg(body, rep));
      out << "wrote " << (dir / "domain.svg").string() << "\n";
    }
    auto j = detail::base_report("report", o, in, r);
    j["verification"] = verification_json(rep);
    j["certificate"] = detail::certificate_json(r, static_cast<int>(N));
    j["seed"] = o.wos.seed;
    detail::finish_report(j, o, t0);
    return kPass;
  });
}

/// Self-test: every unit-disk probe must agree with 1/(2 pi) within three standard errors.
inline int cmd_oracle_disk(const Options& o, std::ostream& out, std::ostream&) {
  const RoundedConvexBody<2> disk({Vec2{0, 0}}, 1.0);
  const auto rep = detail::run_verification(disk, o);
  print_probe_table(out, rep);
  bool ok = true;
  for (const auto& p : rep.probes) ok = ok && std::abs(p.density - rep.threshold) <= 3.0 * p.std_error;
  out << "oracle-disk: " << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kPass : kFail;
}

/// Runs a command, mapping input problems to exit code 3 and anything else to 4.
inline int run_guarded(const std::function<int()>& fn, std::ostream& err) {
  try {
    return fn();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace confcert::cli
