#include <iostream>

#include "CLI11.hpp"
#include "orlicz/cli.hpp"

int main(int argc, char** argv) {
  orlicz::ExperimentConfig cfg;
  CLI::App app{"Numerical laboratory for Orlicz-space multipliers"};
  app.require_subcommand(1);
  app.fallthrough();  // let global flags appear after the subcommand

  app.add_option("--out", cfg.out, "output path (default: stdout)");
  app.add_option("--format", cfg.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--plot", cfg.plot, "write an svg line plot of the figure series");
  app.add_option("--seed", cfg.seed, "seed for randomized suites");

  auto add_phi_gamma = [&](CLI::App* sub, bool required) {
    auto* p = sub->add_option("--phi", cfg.phi, "defining-function spec");
    auto* g = sub->add_option("--gamma", cfg.gamma, "gain-function spec");
    if (required) {
      p->required();
      g->required();
    }
  };
  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--t-min", cfg.t_min, "grid lower bound");
    sub->add_option("--t-max", cfg.t_max, "grid upper bound");
    sub->add_option("--grid", cfg.grid, "geometric:N or linear:N");
  };

  auto* ca = app.add_subcommand("check-admissible", "shift-ratio boundedness evidence");
  add_phi_gamma(ca, true);
  add_grid(ca);

  auto* cn = app.add_subcommand("check-nabla", "lower shift-growth condition");
  add_phi_gamma(cn, true);
  add_grid(cn);
  cn->add_option("--eps", cfg.eps, "exponent slack");

  auto* cp = app.add_subcommand("compose-psi", "compose phi with the gain inverse");
  add_phi_gamma(cp, true);
  cp->add_option("--t-max", cfg.t_max, "sampling upper bound");

  auto* st = app.add_subcommand("staircase", "piecewise-affine convex staircase");
  st->add_option("--gamma-exp", cfg.gamma_exp, "breakpoint growth exponent");
  st->add_option("--n", cfg.n, "number of breakpoints");
  st->add_option("--beta", cfg.beta, "domination exponent");

  auto* ce = app.add_subcommand("counterexample", "unbounded product-modular constructions");
  ce->add_option("variant", cfg.variant, "prop34 | thm43 | thm42")
      ->required()
      ->check(CLI::IsMember({"prop34", "thm43", "thm42"}));
  add_phi_gamma(ce, false);
  ce->add_option("--n", cfg.n, "levels (prop34) or staircase size (thm43)");
  ce->add_option("--k", cfg.k, "product depth (thm43) or log depth (thm42)");
  ce->add_option("--n-lo", cfg.n_lo, "first tower index (thm42)");
  ce->add_option("--n-hi", cfg.n_hi, "last tower index (thm42)");

  auto* en = app.add_subcommand("envelope", "multiplier log-modulus envelope");
  en->add_option("--phi", cfg.phi, "defining-function spec")->required();
  en->add_option("--eta", cfg.eta, "weight exponent slack");

  auto* mo = app.add_subcommand("modular", "modular of a step function or extremal profile");
  mo->add_option("--phi", cfg.phi, "defining-function spec")->required();
  mo->add_option("--arcs", cfg.arcs, "measure:log_value,... (default: extremal profile)");
  mo->add_option("--eta", cfg.eta, "profile exponent slack");

  auto* lu = app.add_subcommand("luxemburg", "Luxemburg functional");
  lu->add_option("--phi", cfg.phi, "defining-function spec")->required();
  lu->add_option("--arcs", cfg.arcs, "measure:log_value,... (default: indicator)");
  lu->add_option("--m", cfg.m, "indicator measure");

  auto* ou = app.add_subcommand("outer", "outer function from a positioned boundary modulus");
  ou->add_option("--arcs", cfg.arcs, "start:length:log_value,...")->required();
  ou->add_option("--re", cfg.re, "evaluation point, real part");
  ou->add_option("--im", cfg.im, "evaluation point, imaginary part");

  auto* in = app.add_subcommand("interp-demo", "non-Carleson free-interpolation pipeline");
  in->add_option("--q", cfg.q, "radial ratio");
  in->add_option("--n", cfg.n, "sequence length")->required();
  in->add_option("--psi", cfg.psi, "direct-form spec (default exp_pow(alpha=0.5))");
  in->add_option("--theta", cfg.theta, "tail exponent for the gains");

  auto* cd = app.add_subcommand("calderon", "randomized split identities");
  cd->add_option("--cases", cfg.cases, "number of random sequences");

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    orlicz::ReportDocument rep = orlicz::run_experiment(cfg);
    orlicz::emit(rep, cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
