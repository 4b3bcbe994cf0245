#include <iostream>

#include "CLI11.hpp"
#include "cubetest/commands.hpp"

int main(int argc, char** argv) {
  cubetest::RunConfig cfg;
  CLI::App app{"Property testing of cochains on complete cubical complexes"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--n", cfg.n, "number of vertices");
    sub->add_option("--d", cfg.d, "cochain dimension (1 or 2)");
    sub->add_option("--seed", cfg.seed, "random seed");
  };

  auto* gen = app.add_subcommand("gen", "write a planted cochain in CUBECHAIN format");
  add_common(gen);
  gen->add_option("--kind", cfg.kind, "coboundary, cocycle, noisy or random");
  gen->add_option("--noise", cfg.noise, "per-cell flip probability for --kind noisy");
  gen->add_option("--theta", cfg.theta, "planted theta (1 or -1)");
  gen->add_option("--pi", cfg.pi, "planted pi (1 or -1, d=2)");
  gen->add_option("--out", cfg.out, "output file (default stdout)");

  auto* test = app.add_subcommand("test", "run the one-sided tester on a cochain file");
  test->add_option("--in", cfg.in, "input CUBECHAIN file")->required();
  test->add_option("--trials", cfg.trials, "number of sampled cells");
  test->add_option("--seed", cfg.seed, "random seed");

  auto* decode = app.add_subcommand("decode", "decode a nearby coboundary and report the certificate");
  decode->add_option("--in", cfg.in, "input CUBECHAIN file")->required();
  decode->add_option("--budget", cfg.budget, "tuples per detector estimate (0 = 64 n^2)");
  decode->add_option("--seed", cfg.seed, "random seed");
  decode->add_option("--out", cfg.out, "write the recovered cochain here");
  decode->add_flag("--exact", cfg.exact, "compute the delta norm exactly regardless of size");

  auto* coh = app.add_subcommand("cohomology", "exact dimensions of Z, B and H");
  coh->add_option("--n", cfg.n, "number of vertices");
  coh->add_option("--d", cfg.d, "degree (1 or 2)");
  coh->add_flag("--force", cfg.force, "allow n below the range where the dimension is known");

  auto* exp = app.add_subcommand("expansion", "expansion constant, exact (d=1) or probed (d=2)");
  add_common(exp);
  exp->add_option("--mode", cfg.mode, "auto, exact or probe");
  exp->add_option("--trials", cfg.trials, "number of probes");

  auto* bench = app.add_subcommand("bench", "rejection rate against distance, as CSV");
  add_common(bench);
  bench->add_option("--grid", cfg.grid, "noise rates")->delimiter(',');
  bench->add_option("--trials", cfg.trials, "tester trials per row");
  bench->add_option("--budget", cfg.budget, "tuples per detector estimate (0 = 64 n^2)");
  bench->add_option("--theta", cfg.theta, "planted theta (1 or -1)");
  bench->add_option("--pi", cfg.pi, "planted pi (1 or -1, d=2)");
  bench->add_option("--out", cfg.out, "CSV file (default stdout)");
  bench->add_flag("--exact", cfg.exact, "compute delta norms exactly regardless of size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cubetest::kExitUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  return cubetest::run_command(cfg, std::cout, std::cerr);
}
