#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

using namespace confcert::cli;

namespace {

void add_common(CLI::App* sub, Options& o, bool needs_file = true) {
  if (needs_file) sub->add_option("file", o.file, "domain file (JSON)")->required();
  sub->add_option("--json", o.json, "write the run report as JSON to this path");
  sub->add_flag("--timing", o.timing, "include wall time in the JSON report");
}

void add_monte_carlo(CLI::App* sub, Options& o) {
  sub->add_option("--walkers", o.wos.walkers, "number of walkers")->capture_default_str();
  sub->add_option("--seed", o.wos.seed, "random seed")->capture_default_str();
  sub->add_option("--epsilon", o.wos.epsilon, "stopping distance (0 = 1e-5 R_I)");
  sub->add_option("--workers", o.wos.workers, "threads (0 = all cores)");
  sub->add_option("--max-steps", o.wos.max_steps, "step cap per walker")->capture_default_str();
  sub->add_option("--delta", o.delta, "probe patch radius (default R_C/20)");
  sub->add_option("--probes", o.probes, "extra evenly spaced probes")->capture_default_str();
  sub->add_option("--slack", o.slack, "relative slack of the verified verdict")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"confcert: rounded convex domains, conformal contraction certificates and harmonic measure checks"};
  app.require_subcommand(1);
  Options o;

  auto* radii = app.add_subcommand("radii", "print R_O, R_I, R_C");
  add_common(radii, o);

  auto* certify = app.add_subcommand("certify", "evaluate the radius certificate");
  add_common(certify, o);
  certify->add_option("--n", o.n, "ambient dimension used by the certificate");

  auto* scale = app.add_subcommand("scale", "largest certified scaling; scaled domain on stdout");
  add_common(scale, o);
  scale->add_option("--n", o.n, "ambient dimension used by the certificate");

  auto* verify = app.add_subcommand("verify", "Monte Carlo density check against the threshold");
  add_common(verify, o);
  add_monte_carlo(verify, o);
  verify->add_option("--out", o.out, "CSV probe table path");

  auto* trace = app.add_subcommand("trace", "intermediate bounds of the argument at distance d");
  add_common(trace, o);
  trace->add_option("--n", o.n, "ambient dimension");
  trace->add_option("--d", o.d, "distance from the tangent point (default R_C/2)");

  auto* report = app.add_subcommand("report", "probe table CSV and, in 2D, an SVG drawing");
  add_common(report, o);
  add_monte_carlo(report, o);
  report->add_option("--out", o.out, "output directory")->required();

  auto* oracle = app.add_subcommand("oracle-disk", "self-test on the unit disk");
  add_common(oracle, o, false);
  add_monte_carlo(oracle, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  auto run = [&](auto cmd) { return run_guarded([&] { return cmd(o, std::cout, std::cerr); }, std::cerr); };
  if (*radii) return run(cmd_radii);
  if (*certify) return run(cmd_certify);
  if (*scale) return run(cmd_scale);
  if (*verify) return run(cmd_verify);
  if (*trace) return run(cmd_trace);
  if (*report) return run(cmd_report);
  if (*oracle) return run(cmd_oracle_disk);
  return kInternalError;
}
