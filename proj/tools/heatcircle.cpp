// Command-line driver: one subcommand per experiment.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "heatcircle/cli.hpp"

namespace hc = heatcircle;
namespace cli = heatcircle::cli;

int main(int argc, char** argv) {
  CLI::App app{"Discrete heat flow on the circle: chains, walks, spectra and martingales"};
  app.require_subcommand(1);

  cli::EvolveConfig evolve_cfg;
  auto* evolve = app.add_subcommand("evolve", "Explicit +-2 heat scheme on a grid function");
  evolve->add_option("--grid-file", evolve_cfg.grid_file, "Input grid-function file")->required();
  evolve->add_option("--nu", evolve_cfg.nu, "Steps per unit time; needs 2r = 1/(2 h^2 nu) <= 1")
      ->required();
  evolve->add_option("--steps", evolve_cfg.steps, "Number of time steps")->required();
  evolve->add_option("--out", evolve_cfg.out, "Output grid-function file")->required();

  cli::CompareConfig compare_cfg;
  auto* compare = app.add_subcommand(
      "compare", "Run the chain, the 2r = 1 scheme and the walk density on one input");
  compare->add_option("--grid-file", compare_cfg.grid_file,
                      "Nonnegative input grid function (default: random on --eta points)");
  compare->add_option("--eta", compare_cfg.eta, "Grid size for random input");
  compare->add_option("--seed", compare_cfg.seed, "Seed for random input");
  compare->add_option("--steps", compare_cfg.steps, "Number of steps")->required();
  compare->add_option("--threshold", compare_cfg.threshold,
                      "Largest accepted pairwise discrepancy; exceeding it exits with 3")
      ->capture_default_str();
  compare->add_option("--out", compare_cfg.out, "Optional CSV (pair, max_abs_diff)");

  cli::MixingConfig mixing_cfg;
  auto* mixing = app.add_subcommand("mixing", "Exact mixing of the +-2 chain against its bound");
  mixing->add_option("--states", mixing_cfg.states, "Odd number of states N, 3..2048")->required();
  mixing->add_option("--steps", mixing_cfg.steps, "Largest n")->required();
  mixing->add_option("--trials", mixing_cfg.trials, "Coupling trials")->capture_default_str();
  mixing->add_option("--seed", mixing_cfg.seed, "Coupling seed")->capture_default_str();
  mixing->add_option("--workers", mixing_cfg.workers, "Threads (results do not depend on it)")
      ->capture_default_str();
  mixing->add_option("--out", mixing_cfg.out,
                     "CSV: n, tv_exact, epsilon_bound, coupling_survival")
      ->required();

  cli::CltConfig clt_cfg;
  std::string n_list;
  auto* clt = app.add_subcommand("clt-error", "Binomial against Gaussian point masses");
  clt->add_option("--n-list", n_list, "Odd n values: '3,5,7' or ranges '3:2001'")->required();
  clt->add_option("--out", clt_cfg.out, "CSV: n, max_err, scaled_err")->required();

  cli::SpectralConfig spectral_cfg;
  auto* spectral = app.add_subcommand("spectral", "Mode-by-mode propagation and comparisons");
  spectral->add_option("--grid-file", spectral_cfg.grid_file, "Input grid-function file")
      ->required();
  spectral->add_option("--nu", spectral_cfg.nu, "Steps per unit time")->required();
  spectral->add_option("--steps", spectral_cfg.steps, "Number of time steps")->required();
  spectral->add_flag("--compare-classical", spectral_cfg.compare_classical,
                     "Add the classical Fourier-series solution at t = steps / nu");
  spectral->add_option("--out", spectral_cfg.out, "Per-mode CSV")->required();

  cli::KernelConfig kernel_cfg;
  auto* kernel = app.add_subcommand("kernel-solve", "Convolve with the sampled heat kernel");
  kernel->add_option("--grid-file", kernel_cfg.grid_file, "Input grid-function file")->required();
  kernel->add_option("--t", kernel_cfg.t, "Time t > 0")->required();
  kernel->add_option("--stride", kernel_cfg.stride, "Sublattice stride in grid points")
      ->capture_default_str();
  kernel->add_option("--offset", kernel_cfg.offset, "Sublattice offset in grid points")
      ->capture_default_str();
  kernel->add_option("--truncation", kernel_cfg.truncation,
                     "Half-width of the kernel sum (default max(12 sqrt(t), 8 stride h))");
  kernel->add_option("--out", kernel_cfg.out, "Output grid-function file")->required();

  cli::MartingaleConfig mart_cfg;
  auto* mart = app.add_subcommand("martingale-check", "Reverse-martingale identity on dyadic levels");
  mart->add_option("--eta", mart_cfg.eta, "Grid size for random input");
  mart->add_option("--kappa", mart_cfg.kappa, "Number of refinement levels, <= 16")->required();
  mart->add_option("--init", mart_cfg.init, "Initial grid function (default: random)");
  mart->add_option("--seed", mart_cfg.seed, "Seed for random input");
  mart->add_option("--out", mart_cfg.out, "Optional CSV: from_level, to_level, max_dev");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kValidationFailure;
  }

  if (*evolve) return cli::run_evolve(evolve_cfg, std::cout, std::cerr);
  if (*compare) return cli::run_compare(compare_cfg, std::cout, std::cerr);
  if (*mixing) return cli::run_mixing(mixing_cfg, std::cout, std::cerr);
  if (*clt) {
    return cli::guarded(std::cerr, [&] {
      clt_cfg.n_list = cli::parse_n_list(n_list);
      return cli::run_clt_error(clt_cfg, std::cout, std::cerr);
    });
  }
  if (*spectral) return cli::run_spectral(spectral_cfg, std::cout, std::cerr);
  if (*kernel) return cli::run_kernel_solve(kernel_cfg, std::cout, std::cerr);
  if (*mart) return cli::run_martingale_check(mart_cfg, std::cout, std::cerr);
  return cli::kValidationFailure;
}
