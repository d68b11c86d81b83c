#pragma once

#include "dyadic.hpp"

namespace dunkl {

// Finite surrogate for "sup over all balls": centers on a coarse lattice
// crossed with dyadic radii.
struct BallFamily {
  struct Ball {
    std::vector<double> center;
    double radius;
  };
  std::vector<Ball> balls;
  double half_width = 0.0;

  static BallFamily make_default(const WeightConfig& cfg, double half_width);
  BallFamily refined() const;  // doubled center density, interleaved radii
};

double bmo_norm(const GridFunction& f, const BallFamily& balls);

// Mean of f over a Euclidean ball (grid quadrature).
cplx ball_mean(const GridFunction& f, std::span<const double> center, double radius);

struct LogLemmaReport {
  double radii_constant = 0.0;      // mean shift across radii / log factor
  double centers_constant = 0.0;    // mean shift across nearby centers
  double reflection_constant = 0.0; // mean shift across the orbit / log factor
  double john_nirenberg_constant = 0.0;  // quadratic means, s = 2
};

LogLemmaReport log_lemma_checks(const GridFunction& f, const BallFamily& balls, double bmo);

// Nontangential heat maximal function over a finite (x', t) sample set with
// t dyadic in [t_min, t_max] and |x - x'|^2 <= t.
GridFunction maximal_function(const Transformer& T, const GridFunction& f, double t_min = 1.0 / 256.0,
                              double t_max = 64.0);
double h1_maximal_norm(const Transformer& T, const GridFunction& f, double t_min = 1.0 / 256.0,
                       double t_max = 64.0);

// |f|_1 + sum_j |R_j f|_1 with the spectral Riesz transforms.
double h1_riesz_norm(const Transformer& T, const GridFunction& f);

struct AtomValidation {
  bool pass = false;
  bool support_ok = false;
  bool size_ok = false;
  bool integral_ok = false;
};

AtomValidation atom_validate(const GridFunction& a, std::span<const double> center, double radius,
                             double q);

// sup over the family of w(B)^{-1} int_0^r int_B |b * phi_t|^2 dw dt/t, with a
// radial multiplier profile phi_hat (= c_k F phi).
double carleson_ratio(const Transformer& T, const GridFunction& b,
                      const std::function<double(double)>& phi_hat, const BallFamily& balls,
                      int nodes_per_octave = 6);

// Poisson-gradient variant with the (N+1)-component field t grad P_t b.
double poisson_carleson(const Transformer& T, const GridFunction& b, const BallFamily& balls,
                        int nodes_per_octave = 6);

// Auxiliary sequences tau_j, sigma_m built from decomposition coefficients.
struct AuxSequences {
  int j_min = 0, j_max = 0;
  double N0 = 0.0;
  std::vector<GridFunction> tau;    // index j - j_min
  std::vector<GridFunction> sigma;  // sigma_m = (9/10) sigma_{m-1} + tau_m

  const GridFunction& tau_at(int j) const { return tau[static_cast<std::size_t>(j - j_min)]; }
  const GridFunction& sigma_at(int j) const { return sigma[static_cast<std::size_t>(j - j_min)]; }
};

AuxSequences aux_sequences(GridPtr grid, std::span<const AtomEntry> entries, int j_min, int j_max,
                           double N0, double base_scale = 1.0);

// Level-j partial sum sup bound against (r 2^j)^N |f|_BMO (Lemma 5.10 shape).
double small_support_bound(const Transformer& T, std::span<const AtomEntry> entries, int level,
                           double support_radius, double bmo);

}  // namespace dunkl
