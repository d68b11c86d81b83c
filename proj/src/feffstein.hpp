#pragma once

#include "spaces.hpp"

namespace dunkl {

// C^d-valued field on a grid with the R^{2d} real-pairing semantics.
struct VectorField {
  GridPtr grid;
  std::vector<std::vector<cplx>> comps;

  VectorField() = default;
  VectorField(GridPtr g, std::size_t d)
      : grid(std::move(g)), comps(d, std::vector<cplx>(grid->size(), cplx{0.0, 0.0})) {}

  std::size_t components() const { return comps.size(); }
  std::size_t size() const { return comps.empty() ? 0 : comps.front().size(); }

  double pointwise_norm(std::size_t i) const {
    double s = 0.0;
    for (const auto& c : comps) s += std::norm(c[i]);
    return std::sqrt(s);
  }

  // <V(field(i)), V(v)> = Re <field(i), v>_{C^d}.
  double real_pairing(std::size_t i, std::span<const cplx> v) const {
    double s = 0.0;
    for (std::size_t j = 0; j < comps.size(); ++j) s += (comps[j][i] * std::conj(v[j])).real();
    return s;
  }

  VectorField& operator+=(const VectorField& o);
  double sup_norm() const;
  double l2_norm() const;  // of the pointwise Euclidean norm
};

struct BQResult {
  VectorField b;
  double reconstruction_residual = 0.0;  // |sum_j S^{j*} b_j - a|_2 / |a|_2
  double max_pairing = 0.0;              // sup_x |<V(b(x)), V(nu)>| / (1 + |b(x)|)
  double integral_defect = 0.0;          // |int b dw| / (w(Q)^{1/2} |a|_2)
  double envelope_constant = 0.0;        // C11-style fit
};

// b_Q^{j} = F^{-1}(Theta_j(., nu) F Re a + i Theta_j(., i nu) F Im a).
// thetas_nu / thetas_inu come from uchiyama_theta at nu and i nu.
BQResult build_bq(const Transformer& T, const MultiplierSystem& sys,
                  std::span<const Symbol> thetas_nu, std::span<const Symbol> thetas_inu,
                  const AtomEntry& entry, std::span<const cplx> nu, const DyadicOrders& orders,
                  bool full_residual_check = false);

struct LevelDiagnostics {
  int level = 0;
  double h_sup = 0.0;
  double tau_sup = 0.0;
  double max_pairing = 0.0;        // worst (c10) residual across cubes
  double g_norm_defect = 0.0;      // max | |g_l(x)| - 1 | after normalization
  double a2_fit = 0.0;             // max |1 - |G_l|| / (tau_l sigma_l)
  double recursion_defect = 0.0;   // max |g_l - g_{l-1} - h_l - E_l| (machine 0)
  int guard_trips = 0;
  double bq_residual = 0.0;        // worst (c1)-per-cube residual
};

struct KeyIterationResult {
  VectorField g_tilde;       // sum h_l + E^0 chi_{B(0, A0 r/2)}
  GridFunction g0_tilde;     // g_0 - F chi_{B(0, A0 r)^c}
  GridFunction f1;           // -F chi_{B(0, A0 r)}
  GridFunction g0_raw;       // the coarse-scale part f - f0
  std::vector<LevelDiagnostics> levels;
  double support_radius = 0.0;       // of the input
  double f1_support_radius = 0.0;    // theoretical A0 * r (clamped to the grid)
  double reconstruction_residual = 0.0;  // |f - S* g~ - g0~ - f1|_2 / |f|_2
  double fitted_C11 = 0.0;
  double fitted_C13 = 0.0;  // |g0|_inf / bmo
  int guard_trips_total = 0;
  bool eps_warning = false;  // input BMO level above the configured eps0
};

struct KeyIterationOptions {
  double support_radius = 0.0;  // 0: measured from f
  int max_levels = 8;           // cap on l (further limited by slab energy)
  int t_nodes = 8;
  double energy_floor_rel = 1e-5;
  bool full_residual_checks = false;
  double bmo = -1.0;   // caller-supplied BMO norm of f (for diagnostics only)
  double eps0 = 0.0;   // calibrated threshold; a breach only raises a flag
};

KeyIterationResult key_iteration(const Transformer& T, const MultiplierSystem& sys,
                                 const CalderonBumps& bumps, const GridFunction& f,
                                 const KeyIterationOptions& opts = {});

struct OuterStep {
  double bmo = 0.0;
  double support_radius = 0.0;
  double residual_ratio = 0.0;
};

struct DecompositionOutput {
  std::vector<GridFunction> g;  // g[0] = g_0, g[j] = g_j for the system's S^{j}
  std::vector<OuterStep> history;
  double input_bmo = 0.0;
  double epsilon = 0.0;
  double reconstruction_defect = 0.0;  // |f - g_0 - sum_j S^{j*} g_j|_2 / |f|_2
  double sup_sum = 0.0;                // sum_j |g_j|_inf
  double l2_sum = 0.0;                 // sum_j |g_j|_2
  bool contracted = true;
  int guard_trips = 0;
};

struct FeffermanSteinOptions {
  double epsilon = 0.0;    // 0: epsilon_0 / 4 from the ledger inputs
  int max_outer = 6;
  double tol_rel = 1e-3;   // stop when residual BMO < tol_rel * epsilon
  KeyIterationOptions inner;
};

DecompositionOutput fefferman_stein(const Transformer& T, const MultiplierSystem& sys,
                                    const CalderonBumps& bumps, const GridFunction& f,
                                    const BallFamily& balls, const FeffermanSteinOptions& opts = {});

// Appendix-style constants ledger: formula-bound rows computed from fitted
// inputs, every entry tagged.
struct LedgerEntry {
  std::string name;
  double value = 0.0;
  enum class Kind { Formula, Fitted, Parameter } kind = Kind::Parameter;
};

struct ConstantsLedger {
  std::vector<LedgerEntry> entries;

  double get(const std::string& name) const;
  void set(const std::string& name, double value, LedgerEntry::Kind kind);
  // Largest relative defect of the formula rows recomputed from inputs.
  double relation_defect() const;
};

ConstantsLedger ledger_build(const WeightConfig& cfg, const DyadicOrders& orders, double fitted_C10,
                             double fitted_C11, double fitted_C12, double fitted_C13);

}  // namespace dunkl
