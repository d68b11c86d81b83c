#pragma once

#include <memory>

#include "config.hpp"
#include "feffstein.hpp"

namespace dunkl {

// Symbol table files: CSV rows "direction components..., re, im".
void write_symbol_csv(const Symbol& s, const std::string& path);
Symbol read_symbol_csv(const std::string& path, int dim);

// "riesz", "hilbert-pair", or a JSON manifest listing symbol files.
MultiplierSystem load_system(const std::string& spec, int dim);

// Band-limited test inputs. Spectra are synthesized on annuli away from the
// frequency origin (the measure kink radiates algebraic tails otherwise) and
// optionally Dunkl-translated off the spatial origin.
GridFunction annulus_packet(const Transformer& T, double xi_center, double xi_width,
                            double chirp, double x_offset);
std::vector<GridFunction> bandlimited_family(const Transformer& T, int count, std::uint64_t seed,
                                             double xi_lo, double xi_hi);
// Compactly supported BMO model: max(0, -log(|x| / radius)), heat-mollified.
GridFunction truncated_log_input(const Transformer& T, double radius, double smoothing = 0.02);

struct Session {
  RunConfig cfg;
  WeightConfig wcfg;
  GridPtr space, freq;
  std::shared_ptr<Transformer> transform;
  MultiplierSystem system;
  int threads = 1;

  explicit Session(RunConfig config);

  Transformer& atoms_transformer();
  CalderonBumps& calderon();
  GridFunction load_input();

 private:
  GridPtr atoms_freq_;
  std::shared_ptr<Transformer> atoms_transform_;
  std::shared_ptr<CalderonBumps> bumps_;
};

// Executes one CLI subcommand; returns the process exit code
// (0 ok, 1 check failure, 2 config error, 3 non-convergence) and fills
// error_json on nonzero exits.
int run_subcommand(Session& s, const std::string& name, std::string* error_json);

}  // namespace dunkl
