#pragma once

#include "multiplier.hpp"

namespace dunkl {

// Derived decomposition orders for a configuration: the Calderon bump order
// M1 (smallest integer making the N0/N1 constraint chain feasible) and the
// decay exponents used by the auxiliary sequences and b_Q envelopes.
struct DyadicOrders {
  int M1 = 3;
  double N0 = 4.5;
  double N1 = 6.0;
  double N2 = 4.0;  // N1 - homogeneous dim
};

DyadicOrders derive_orders(const WeightConfig& cfg);

// Radial Calderon pair: eta = gamma Delta_k(b^{*8}) for a base bump b of
// support 1/32, phi = Delta_k^{M1} eta, both supported in B(0, 1/4).
// Everything is carried spectrally: Phi(s) = c_k F phi at radius s, with the
// normalization gamma fixed by int_0^inf Phi(s)^4 ds/s = 1.
class CalderonBumps {
 public:
  explicit CalderonBumps(const WeightConfig& cfg);

  const WeightConfig& config() const { return cfg_; }
  int order() const { return orders_.M1; }
  const DyadicOrders& orders() const { return orders_; }
  double normalization() const { return gamma_; }

  double phi_hat(double s) const;  // c_k F phi
  double eta_hat(double s) const;  // c_k F eta

  // Cumulative Calderon mass int_0^s Phi^4 du/u (1 at the upper end).
  double calderon_mass(double s) const;
  // Mass captured by scales t in [t1, t2] at frequency radius xi.
  double coverage(double xi, double t1, double t2) const;

  double peak() const { return s_peak_; }           // argmax Phi
  double band_lo() const { return s_lo_; }          // Phi^4 mass edges (1e-4)
  double band_hi() const { return s_hi_; }
  double safe_edge() const { return s_edge_; }      // Phi^2 <= 1e-7 peak^2 beyond

  // Space-side radial profiles by inverse radial transform.
  double eta_profile(double r) const;
  double phi_profile(double r) const;

 private:
  WeightConfig cfg_;
  DyadicOrders orders_;
  double gamma_ = 1.0;
  double step_ = 1.0 / 16.0;
  double s_max_ = 1200.0;
  std::vector<double> bhat_;   // base bump transform table
  std::vector<double> cum_;    // cumulative Phi^4 ds/s
  double s_peak_ = 0.0, s_lo_ = 0.0, s_hi_ = 0.0, s_edge_ = 0.0;

  double table_interp(const std::vector<double>& tab, double s) const;
  double bhat(double s) const;
  double phi_hat_unnormalized(double s) const;
};

struct DyadicCube {
  int level = 0;              // side = base * 2^{-level}
  std::vector<long> index;    // lattice index per axis
  std::vector<double> center;
  double side = 1.0;

  bool in_diamond(const WeightConfig& cfg, std::span<const double> x) const;  // Q-diamond membership
};

struct AtomEntry {
  DyadicCube cube;
  double lambda = 0.0;
  GridFunction a;        // a_Q
  GridFunction a_tilde;  // atilde_Q with a = Delta_k^{2 M1} atilde
  double sup_a = 0.0;
};

struct LevelInfo {
  int level = 0;
  double side = 0.0;
  double slab_energy = 0.0;
  double max_lambda = 0.0;
  int active_cubes = 0;
  bool resolved = true;  // atom spectra fit inside the frequency window
};

struct ChangFeffermanResult {
  std::vector<AtomEntry> entries;
  std::vector<LevelInfo> levels;
  double coverage_tail_energy = 0.0;  // |f|_2^2 outside the covered scales
  double f_l2 = 0.0;
};

struct ChangFeffermanOptions {
  double base_scale = 1.0;
  int t_nodes = 8;
  double prune_rel = 3e-5;       // lambda threshold relative to the global max
  double energy_floor_rel = 1e-5;  // skip levels below this slab-energy share
  bool build_atoms = true;
  bool strict_range_check = true;
};

ChangFeffermanResult chang_fefferman(const Transformer& T, const CalderonBumps& bumps,
                                     const GridFunction& f, int j_min, int j_max,
                                     const ChangFeffermanOptions& opts = {});

// Spectral oracle for the reconstruction: the slab projection of f onto the
// covered scale range, computed with the exact Calderon mass multiplier.
GridFunction slab_projection(const Transformer& T, const CalderonBumps& bumps, const GridFunction& f,
                             double t_min, double t_max);

// Sum of lambda_Q a_Q over a subset of entries.
GridFunction atom_sum(const Transformer& T, std::span<const AtomEntry> entries,
                      std::span<const std::size_t> subset);
double subcollection_bound(const Transformer& T, std::span<const AtomEntry> entries,
                           std::span<const std::size_t> subset, double f_l2);

struct AtomReport {
  double support_leakage = 0.0;      // relative to sup |a_Q| outside Q-diamond
  double cancellation = 0.0;         // |int a dw| / (w(Q)^{1/2} |a|_2)
  double derivative_cancellation = 0.0;  // same for T_1 a
  double envelope_constant = 0.0;    // sup |a| (1 + |x - z|/l)
  double tilde_relation_defect = 0.0;  // spectral a = Delta^{2M1} atilde check
  // With a symbol: S a_Q diagnostics (size envelope, cancellation).
  double s_envelope_constant = 0.0;
  double s_cancellation = 0.0;
};

AtomReport atom_diagnostics(const Transformer& T, const CalderonBumps& bumps, const AtomEntry& e,
                            const Symbol* s = nullptr, double envelope_M = 0.0);

// Convergence guard: recompute one lambda with doubled t-nodes.
double lambda_refinement_delta(const Transformer& T, const CalderonBumps& bumps,
                               const GridFunction& f, const AtomEntry& e, int t_nodes);

}  // namespace dunkl
