#pragma once

#include <complex>
#include <vector>

#include "common.hpp"

namespace dunkl {

// Riemann zeta on the real line (s != 1). Direct Dirichlet series plus an
// Euler-Maclaurin tail for s > 1; reflection formula for s <= 0.
double riemann_zeta(double s);

// Hurwitz zeta at offset 1/2: zeta(s, 1/2) = (2^s - 1) zeta(s).
double hurwitz_zeta_half(double s);

// Normalized Bessel function j_nu(s) = Gamma(nu+1) (s/2)^{-nu} J_nu(s),
// j_nu(0) = 1, even in s. Valid for nu >= -1/2. Power series for small |s|,
// Hankel asymptotics beyond.
double normalized_bessel_j(double nu, double s);

// One-dimensional Dunkl kernel profile for a purely imaginary first argument:
// e_k(-i s) = j_{k-1/2}(s) - i * s/(2k+1) * j_{k+1/2}(s).
// This is the bounded unitary-branch value used by the transform; |e_k| <= 1.
cplx dunkl_profile_imag(double k, double s);

// One-dimensional Dunkl kernel at a real product t = x*y, by the defining
// series c_0 = 1, c_n = c_{n-1} / (n + k (1 - (-1)^n)), value sum c_n t^n.
// Truncates when the tail drops below 1e-13 of the partial sum. Throws
// std::domain_error for |t| > 700 (overflow guard).
double dunkl_kernel_series(double k, double t);

// Gauss-Legendre nodes/weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// C-infinity bump exp(-1 / (1 - (r/a)^2)) for |r| < a, 0 outside.
double smooth_bump(double r, double a);

// C-infinity transition: 1 for x <= lo, 0 for x >= hi, monotone between.
double smooth_step_down(double x, double lo, double hi);

}  // namespace dunkl
