#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "torlin/cli.hpp"

int main(int argc, char** argv) {
  using torlin::cli::ExperimentConfig;
  using torlin::cli::Format;

  CLI::App app{"Linear torus flows: small divisors, curve currents and linearization experiments"};
  app.require_subcommand(1);

  ExperimentConfig config;
  std::string format;
  std::int64_t radius = 0;
  double tau = 0.0;
  double eps_res = 0.0;

  const std::map<std::string, std::string> about{
      {"diophantine-check", "Certify min |n.alpha| |n|^tau over a lattice ball, or list resonances"},
      {"solve-cohomology", "Solve L_X h = f - c for a function or the flow contraction of a form"},
      {"excise", "Remove retraced arcs from a curve family until none remain"},
      {"linearize-demo", "Raw and twisted battery evaluations of curves"},
      {"equivariance-test", "Check l(phi^t y) = l(y) + t c and the Albanese map on random samples"},
      {"liouville-sweep", "Amplification at the convergent modes of a Liouville direction"}};
  for (const auto& name : torlin::cli::commands()) {
    CLI::App* sub = app.add_subcommand(name, about.at(name));
    sub->add_option("--alpha", config.alpha_path, "direction vector JSON");
    sub->add_option("--function", config.function_path, "trigonometric polynomial JSON");
    sub->add_option("--form", config.form_path, "one-form JSON");
    sub->add_option("--curve", config.curve_path, "curve or curve family JSON");
    sub->add_option("--radius", radius, "lattice ball radius");
    sub->add_option("--tau", tau, "Diophantine exponent");
    sub->add_option("--cutoff", config.cutoff, "battery mode cutoff")->capture_default_str();
    sub->add_option("--samples", config.samples, "random samples")->capture_default_str();
    sub->add_option("--seed", config.seed, "random seed")->capture_default_str();
    sub->add_option("--out", config.out_dir, "output directory");
    sub->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--eps-res", eps_res, "resonance threshold");
    sub->add_option("--schedule", config.schedule, "Liouville exponents")->delimiter(',')->capture_default_str();
    sub->add_option("--basepoint", config.basepoint, "basepoint coordinates")->delimiter(',');
    sub->callback([&config, name] { config.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << torlin::cli::error_record("MalformedInput", e.what()) << '\n';
    return 2;
  }

  for (const auto* sub : app.get_subcommands()) {
    if (sub->count("--radius") > 0) config.radius = radius;
    if (sub->count("--tau") > 0) config.tau = tau;
    if (sub->count("--eps-res") > 0) config.eps_res = eps_res;
  }
  if (!format.empty()) config.format = format == "csv" ? Format::csv : Format::json;
  return torlin::cli::run(config, std::cout, std::cerr);
}
