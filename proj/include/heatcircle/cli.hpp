#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "heatcircle/circle_grid.hpp"
#include "heatcircle/csv.hpp"
#include "heatcircle/errors.hpp"
#include "heatcircle/grid_io.hpp"
#include "heatcircle/heat_explicit.hpp"
#include "heatcircle/local_clt.hpp"
#include "heatcircle/markov_chain.hpp"
#include "heatcircle/martingale.hpp"
#include "heatcircle/rng.hpp"
#include "heatcircle/spectral.hpp"
#include "heatcircle/walk_model.hpp"

namespace heatcircle::cli {

enum ExitCode : int {
  kOk = 0,
  kIoFailure = 1,
  kValidationFailure = 2,
  kThresholdViolation = 3,
};

/// Largest chain accepted by `mixing`.
inline constexpr std::size_t kMaxStates = 2048;

/// Values uniform in [0, 1) from stream 0 of the counter generator.
inline GridFunction random_nonnegative(const CircleGrid& grid, std::uint64_t seed) {
  CounterRng rng(seed, 0);
  GridFunction f(grid);
  for (std::size_t i = 0; i < grid.size(); ++i) f[i] = rng.uniform();
  return f;
}

struct EvolveConfig {
  std::string grid_file;
  double nu = 0.0;
  std::size_t steps = 0;
  std::string out;
};

struct CompareConfig {
  /// Input grid function; when empty a random one is drawn on `eta` points.
  std::string grid_file;
  std::size_t eta = 0;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  double threshold = 1e-10;
  std::string out;  // optional CSV
};

struct MixingConfig {
  std::size_t states = 0;
  std::size_t steps = 0;
  std::size_t trials = 10000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  std::string out;
};

struct CltConfig {
  std::vector<std::int64_t> n_list;
  std::string out;
};

struct SpectralConfig {
  std::string grid_file;
  double nu = 0.0;
  std::size_t steps = 0;
  bool compare_classical = false;
  std::string out;
};

struct KernelConfig {
  std::string grid_file;
  double t = 0.0;
  std::int64_t stride = 1;
  std::int64_t offset = 0;
  double truncation = 0.0;
  std::string out;
};

struct MartingaleConfig {
  std::size_t eta = 0;
  std::size_t kappa = 0;
  std::string init;  // optional grid file
  std::uint64_t seed = 0;
  std::string out;   // optional CSV
};

/**
 * Parses "3,5,7" and odd ranges "3:11" (3, 5, ..., 11), mixed freely.
 */
inline std::vector<std::int64_t> parse_n_list(const std::string& text) {
  std::vector<std::int64_t> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    const std::string item = text.substr(pos, comma - pos);
    const std::size_t colon = item.find(':');
    if (colon == std::string::npos) {
      out.push_back(detail::parse_int(item, "--n-list", 0, "entry"));
    } else {
      const auto lo = detail::parse_int(item.substr(0, colon), "--n-list", 0, "range start");
      const auto hi = detail::parse_int(item.substr(colon + 1), "--n-list", 0, "range end");
      if (hi < lo) throw DomainError("--n-list range " + item + " is empty");
      for (std::int64_t n : odd_range(lo, hi)) out.push_back(n);
    }
    pos = comma + 1;
  }
  return out;
}

/// Runs `body`, mapping library errors to exit codes with a diagnostic on `err`.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kIoFailure;
  }
}

inline int run_evolve(const EvolveConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GridFunction f = load_grid_function(cfg.grid_file);
    const SchemeParams p(f.grid(), cfg.nu);
    p.require_stable();
    const GridFunction result = evolve(p, f, cfg.steps);
    write_text_file(cfg.out, grid_function_text(result));
    out << "evolved " << cfg.steps << " steps, 2r = " << format_number(p.stability_ratio())
        << ", t = " << format_number(p.time(cfg.steps)) << '\n';
    return kOk;
  });
}

struct CompareResult {
  double markov_heat = 0.0;
  double markov_walk = 0.0;
  double heat_walk = 0.0;

  double max() const { return std::max({markov_heat, markov_walk, heat_walk}); }
};

/// The +-2 chain on the values, the 2r = 1 scheme and the binomial walk
/// density, each run for `steps` steps from f.
inline CompareResult compare_representations(const GridFunction& f, std::size_t steps) {
  const WalkEnsemble walk(f, steps);  // validates f >= 0
  const ChainSpec chain(f.grid().size());
  const Distribution d = evolve(chain, Distribution::signed_measure(f.real_part()), steps);
  const GridFunction markov = GridFunction::from_real(f.grid(), d.weights());
  const GridFunction heat = evolve(SchemeParams::chain_coupled(f.grid()), f, steps);
  const GridFunction density = density_binomial(walk, steps);
  return {max_abs_diff(markov, heat), max_abs_diff(markov, density), max_abs_diff(heat, density)};
}

inline int run_compare(const CompareConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!(cfg.threshold >= 0.0)) throw DomainError("--threshold must be >= 0");
    const GridFunction f = cfg.grid_file.empty()
                               ? random_nonnegative(CircleGrid::unit(cfg.eta), cfg.seed)
                               : load_grid_function(cfg.grid_file);
    const CompareResult r = compare_representations(f, cfg.steps);
    CsvTable table({"pair", "max_abs_diff"});
    table.add_row({std::string("markov-heat"), r.markov_heat});
    table.add_row({std::string("markov-walk"), r.markov_walk});
    table.add_row({std::string("heat-walk"), r.heat_walk});
    if (!cfg.out.empty()) emit_csv(cfg.out, table);
    out << csv_text(table) << "max pairwise discrepancy " << format_number(r.max()) << '\n';
    if (r.max() > cfg.threshold) {
      err << "discrepancy exceeds threshold " << format_number(cfg.threshold) << '\n';
      return kThresholdViolation;
    }
    return kOk;
  });
}

/// Rows n = 0..steps: exact TV distance of delta_0 to uniform, the mixing
/// bound, and the Monte Carlo coupling survival P(T > n).
inline CsvTable mixing_table(const MixingConfig& cfg) {
  const ChainSpec chain(cfg.states);
  chain.require_odd("mixing");
  const auto survival = coupling_simulate(
      chain, 0, Distribution::uniform(cfg.states),
      CouplingOptions{cfg.steps, cfg.trials, cfg.seed, cfg.workers});
  CsvTable table({"n", "tv_exact", "epsilon_bound", "coupling_survival"});
  Distribution d = Distribution::delta(cfg.states, 0);
  for (std::size_t n = 0; n <= cfg.steps; ++n) {
    if (n > 0) d = step(chain, d);
    table.add_row({static_cast<std::int64_t>(n), tv_distance_to_uniform(chain, d),
                   epsilon_bound(cfg.states, n), survival[n]});
  }
  return table;
}

inline int run_mixing(const MixingConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    ChainSpec(cfg.states).require_odd("mixing");
    if (cfg.states < 3) throw DomainError("--states must be >= 3");
    if (cfg.states > kMaxStates) {
      throw DomainError("--states must be <= " + std::to_string(kMaxStates));
    }
    if (cfg.trials == 0) throw DomainError("--trials must be >= 1");
    const CsvTable table = mixing_table(cfg);
    emit_csv(cfg.out, table);
    out << "wrote " << table.rows().size() << " rows to " << cfg.out << '\n';
    return kOk;
  });
}

inline int run_clt_error(const CltConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.n_list.empty()) throw DomainError("--n-list is empty");
    for (std::int64_t n : cfg.n_list) {
      if (n < 3 || n % 2 == 0) throw DomainError("--n-list entries must be odd and >= 3");
    }
    const auto rows = clt_error_profile(cfg.n_list);
    CsvTable table({"n", "max_err", "scaled_err"});
    for (const auto& r : rows) table.add_row({r.n, r.max_err, r.scaled_err});
    emit_csv(cfg.out, table);
    out << "sup scaled_err " << format_number(empirical_clt_constant(rows)) << '\n';
    return kOk;
  });
}

inline int run_spectral(const SpectralConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const GridFunction f = load_grid_function(cfg.grid_file);
    const SchemeParams p(f.grid(), cfg.nu);
    p.require_stable();
    const double t = p.time(cfg.steps);
    if (cfg.compare_classical && !(t > 0.0)) {
      throw DomainError("--compare-classical needs steps > 0");
    }

    const GridFunction spectral = spectral_propagate(f, cfg.nu, cfg.steps);
    const GridFunction explicit_result = evolve(p, f, cfg.steps);
    const Spectrum initial = fourier_coeffs(f);
    const Spectrum s_spec = fourier_coeffs(spectral);
    const Spectrum s_expl = fourier_coeffs(explicit_result);

    std::vector<std::string> cols{"mode",        "coeff_re", "coeff_im",
                                  "spectral_re", "spectral_im", "explicit_dev"};
    std::optional<GridFunction> classical;
    std::optional<Spectrum> s_class;
    if (cfg.compare_classical) {
      classical = classical_solution(initial, t);
      s_class = fourier_coeffs(*classical);
      for (const char* c : {"classical_re", "classical_im", "classical_dev"}) cols.emplace_back(c);
    }
    CsvTable table(cols);
    for (std::size_t i = 0; i < initial.modes().count; ++i) {
      std::vector<CsvCell> row{initial.modes().mode(i),       initial.coeffs()[i].real(),
                               initial.coeffs()[i].imag(),    s_spec.coeffs()[i].real(),
                               s_spec.coeffs()[i].imag(),
                               std::abs(s_spec.coeffs()[i] - s_expl.coeffs()[i])};
      if (s_class) {
        row.emplace_back(s_class->coeffs()[i].real());
        row.emplace_back(s_class->coeffs()[i].imag());
        row.emplace_back(std::abs(s_expl.coeffs()[i] - s_class->coeffs()[i]));
      }
      table.add_row(std::move(row));
    }
    emit_csv(cfg.out, table);
    out << "max |spectral - explicit| " << format_number(max_abs_diff(spectral, explicit_result))
        << '\n';
    if (classical) {
      out << "max |explicit - classical| at t = " << format_number(t) << ": "
          << format_number(max_abs_diff(explicit_result, *classical)) << '\n';
    }
    return kOk;
  });
}

inline int run_kernel_solve(const KernelConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const KernelSpec k{cfg.t, cfg.truncation, cfg.stride, cfg.offset};
    k.validate();
    const GridFunction f = load_grid_function(cfg.grid_file);
    const GridFunction result = heat_kernel_convolution(f, k);
    write_text_file(cfg.out, grid_function_text(result));
    out << "kernel mass " << format_number(kernel_mass(k, f.grid().spacing())) << '\n';
    return kOk;
  });
}

inline int run_martingale_check(const MartingaleConfig& cfg, std::ostream& out,
                                std::ostream& err) {
  return guarded(err, [&] {
    if (cfg.kappa > kMaxKappa) {
      throw KappaTooLarge("kappa " + std::to_string(cfg.kappa) + " > " +
                          std::to_string(kMaxKappa));
    }
    const GridFunction f = cfg.init.empty() ? random_nonnegative(CircleGrid::unit(cfg.eta), cfg.seed)
                                            : load_grid_function(cfg.init);
    if (!cfg.init.empty() && cfg.eta != 0 && cfg.eta != f.size()) {
      throw LengthMismatch("--eta " + std::to_string(cfg.eta) + " but " + cfg.init + " has " +
                           std::to_string(f.size()) + " points");
    }
    if (!f.is_real()) throw DomainError("martingale-check needs real initial data");

    const DyadicField field = build_reverse_field(f, cfg.kappa);
    const MartingaleReport rep = martingale_check(field);
    const auto readout = feynman_kac_readout(field);
    double fk_dev = 0.0;
    for (std::size_t j = 0; j < readout.size(); ++j) {
      fk_dev = std::max(fk_dev, std::abs(readout[j] - field.level(cfg.kappa)[j]));
    }

    CsvTable table({"from_level", "to_level", "max_dev"});
    for (const auto& p : rep.pairs) {
      table.add_row({static_cast<std::int64_t>(p.from_level), static_cast<std::int64_t>(p.to_level),
                     p.max_dev});
    }
    if (!cfg.out.empty()) emit_csv(cfg.out, table);
    out << csv_text(table) << "max deviation " << format_number(rep.max_dev) << " (tolerance "
        << format_number(rep.tolerance) << ")\n"
        << "feynman-kac readout deviation " << format_number(fk_dev) << '\n';
    if (!rep.holds || fk_dev > rep.tolerance) {
      err << "identity fails between levels " << rep.worst.from_level << " and "
          << rep.worst.to_level << " at cell " << rep.worst.worst_cell << " (base point "
          << rep.worst_base << ")\n";
      return kThresholdViolation;
    }
    return kOk;
  });
}

}  // namespace heatcircle::cli
