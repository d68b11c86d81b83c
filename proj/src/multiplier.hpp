#pragma once

#include <optional>
#include <string>

#include "transform.hpp"

namespace dunkl {

// Degree-zero homogeneous symbol: values on a symmetric sphere sample.
// 1-D: exactly the two values theta(+1), theta(-1). 2-D: an even number of
// equally spaced angles (antipode = index shift by half), linear interpolation.
class Symbol {
 public:
  static Symbol constant(int dim, cplx value);
  static Symbol riesz(int dim, int axis);  // -i xi_axis / |xi|
  static Symbol from_function(int dim, const std::function<cplx(std::span<const double>)>& fn,
                              int directions = 256);

  int dim() const { return dim_; }
  std::size_t pair_count() const { return values_.size() / 2; }

  // Representative unit vector of pair p and the two values (at +dir, -dir).
  void pair_direction(std::size_t p, std::span<double> out) const;
  cplx value_plus(std::size_t p) const { return values_[p]; }
  cplx value_minus(std::size_t p) const { return values_[p + pair_count()]; }
  void set_pair(std::size_t p, cplx plus, cplx minus);

  cplx eval_direction(std::span<const double> unit) const;
  cplx eval_xi(std::span<const double> xi) const;

  Symbol conjugate() const;                    // adjoint symbol
  Symbol pointwise_product(const Symbol& o) const;
  double sup_abs() const;
  // Real kernel iff theta(xi) = conj(theta(-xi)) on the sample.
  bool is_real_kernel(double tol = 1e-12) const;
  // w-weighted sphere mean (the point-mass split constant c_1).
  cplx sphere_mean(const WeightConfig& cfg) const;

 private:
  int dim_ = 1;
  // Layout: values_[p] at +dir_p, values_[p + pairs] at -dir_p.
  std::vector<cplx> values_;
  std::vector<double> angles_;  // dim 2 only: angle of +dir_p
};

GridFunction apply_symbol(const Transformer& T, const Symbol& s, const GridFunction& f);
GridFunction apply_symbol_spectral(const Transformer& T, const Symbol& s, GridFunction spectrum);
Symbol adjoint(const Symbol& s);

struct TriangleCertificate {
  bool pass = false;
  double min_singular_value = 0.0;
  std::vector<double> witness;  // direction realizing the minimum
};

class MultiplierSystem {
 public:
  MultiplierSystem() = default;
  explicit MultiplierSystem(std::vector<Symbol> symbols, std::vector<std::string> names = {});

  std::size_t size() const { return symbols_.size(); }
  const Symbol& symbol(std::size_t j) const { return symbols_[j]; }
  const std::string& name(std::size_t j) const { return names_[j]; }
  int dim() const { return symbols_.front().dim(); }
  double min_singular_value() const { return cached_min_sv_; }

  TriangleCertificate check_triangle(double threshold = 1e-6) const;

  // The system (Id, R_1, ..., R_N).
  static MultiplierSystem riesz_system(int dim);
  // The 1-D pair (1, -i sgn xi).
  static MultiplierSystem hilbert_pair();

 private:
  std::vector<Symbol> symbols_;
  std::vector<std::string> names_;
  double cached_min_sv_ = 0.0;
};

// Uchiyama symbols Theta_j(., nu): per antipodal pair the minimum-norm
// solution of (Uchi1) at both directions plus the two real (Uchi2) rows.
struct UchiyamaResult {
  std::vector<Symbol> thetas;
  double max_residual = 0.0;
  double min_conditioning = 0.0;  // smallest pivot of the 6x6 normal systems
  bool feasible = true;
  std::vector<double> witness;  // offending direction when infeasible
};

UchiyamaResult uchiyama_theta(const MultiplierSystem& sys, std::span<const cplx> nu,
                              double pivot_tol = 1e-12);

// Smoothness diagnostic: max angular finite-difference modulus of the Theta
// table (2-D only; 1-D returns 0).
double uchiyama_modulus(const UchiyamaResult& r);

// Regular kernel view of a symbol: point mass c1 plus dyadic pieces S_j cut
// spectrally with a Littlewood-Paley annulus bump.
class KernelPieces {
 public:
  KernelPieces(const WeightConfig& cfg, Symbol s);

  cplx point_mass() const { return c1_; }
  const Symbol& mean_free_symbol() const { return reduced_; }
  double lp_bump(double r) const;  // supported in [1/4, 1], telescoping

  // S_j = F^{-1}(theta_0 * phi(2^{-j} .)), theta_0 the mean-free symbol.
  GridFunction piece(const Transformer& T, int j) const;
  // Valid j range for a transformer (annulus inside the frequency window).
  std::pair<int, int> piece_range(const Transformer& T) const;

  // c1 + sum_{|j| <= J} of the spectral pieces, evaluated on the sphere table.
  Symbol reconstruct_symbol(int J) const;

 private:
  Symbol full_;
  Symbol reduced_;
  cplx c1_{0.0, 0.0};
};

// Fitted-constant report for the kernel bound (3.2 shape, I = J = 0):
// |S(x, y)| * (|x-y| / d(x,y)) * w(B(x, d(x,y))) <= C.
struct KernelBoundReport {
  double fitted_C = 0.0;
  std::size_t samples = 0;
};

KernelBoundReport kernel_bound_report(const Transformer& T, const KernelPieces& kp,
                                      std::span<const double> xs, std::span<const double> ys,
                                      int j_lo, int j_hi);

// Fitted constants for the four convolution bounds of translated bump pairs
// psi_t * phi_s (s <= t): decay factor, support cutoff, Lipschitz variants.
struct ConvBoundReport {
  double fitted_a = 0.0;  // s/t decay bound
  double fitted_b = 0.0;  // (s/t)^m variant
  double cutoff_leak = 0.0;  // max |psi_t * phi_s| at d(x,y) > 2t, relative
  std::size_t samples = 0;
};

// psi_hat/phi_hat are radial multiplier profiles (c_k * F of the bumps).
ConvBoundReport conv_bound_report(const Transformer& T, const std::function<double(double)>& psi_hat,
                                  const std::function<double(double)>& phi_hat, int m, double s,
                                  double t, std::span<const double> x_samples);

}  // namespace dunkl
