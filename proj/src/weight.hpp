#pragma once

#include <array>
#include <span>
#include <vector>

#include "common.hpp"

namespace dunkl {

// Root-system configuration for Z2^N: roots +-sqrt(2) e_i with one
// multiplicity per coordinate. Immutable after creation; all cached
// normalizations are computed in create().
struct WeightConfig {
  int dim = 1;
  std::vector<double> multiplicities;  // k_i >= 0, one per axis
  double homogeneous_dim = 1.0;        // N + 2 sum k_i
  double normalization = 1.0;          // c_k = int exp(-|x|^2/2) dw
  std::vector<double> axis_normalization;  // per-axis c_{k_i}
  double poisson_constant = 1.0;       // c_{N,k}: mass-one Cauchy kernel

  static WeightConfig create(int dim, std::span<const double> multiplicities);

  double multiplicity(int axis) const { return multiplicities[static_cast<std::size_t>(axis)]; }
};

// Per-axis closed form c_k = 2^{2k+1/2} Gamma(k+1/2).
double axis_normalization_closed_form(double k);

double weight_density(const WeightConfig& cfg, std::span<const double> x);

// Gaussian integral against dw by quadrature; throws ConvergenceError when a
// grid refinement moves the value by more than 1e-10 relative.
double normalization_ck_quadrature(const WeightConfig& cfg, int nodes_per_axis = 400);

// w(B(x, r)) for the Euclidean ball. Closed form in 1-D, slice quadrature in 2-D.
double ball_volume(const WeightConfig& cfg, std::span<const double> center, double r);

// w-measure of an axis-aligned box [lo, hi) (exact closed form).
double box_measure(const WeightConfig& cfg, std::span<const double> lo, std::span<const double> hi);

// Orbit distance d(x, y) = min over sign flips of |sigma(x) - y|.
double orbit_distance(const WeightConfig& cfg, std::span<const double> x, std::span<const double> y);

// The 2^N sign-flip reflections.
struct OrbitGroup {
  int dim;
  explicit OrbitGroup(int n) : dim(n) {}
  int size() const { return 1 << dim; }
  void apply(int element, std::span<const double> x, std::span<double> out) const;
};

// Dunkl kernel E(x, y) for real arguments (tensor product of 1-D series).
double dunkl_kernel(const WeightConfig& cfg, std::span<const double> x, std::span<const double> y);

// Product over axes of e_{k_i}(-i xi_i x_i): the transform kernel E(-i xi, x).
cplx dunkl_kernel_unitary(const WeightConfig& cfg, std::span<const double> xi, std::span<const double> x);

// Heat kernel h_t(x) = c_k^{-1} (2t)^{-N/2} exp(-|x|^2 / 4t)  (N = homogeneous dim).
double heat_profile(const WeightConfig& cfg, double t, std::span<const double> x);

// Two-point heat kernel h_t(x, y) = c_k^{-1}(2t)^{-N/2} e^{-(|x|^2+|y|^2)/4t} E(x/sqrt(2t), y/sqrt(2t)).
double heat_kernel2(const WeightConfig& cfg, double t, std::span<const double> x, std::span<const double> y);

// k-Cauchy (Poisson) kernel p(x) = c_{N,k} (1 + |x|^2)^{-(N+1)/2}.
double poisson_profile(const WeightConfig& cfg, std::span<const double> x);

// w-measure of the unit sphere, int_{S^{N-1}} w(omega) d sigma.
double sphere_measure(const WeightConfig& cfg);

// V(x, y, t) = max(w(B(x,t)), w(B(y,t))).
double vmax_ball(const WeightConfig& cfg, std::span<const double> x, std::span<const double> y, double t);

}  // namespace dunkl
