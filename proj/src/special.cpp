#include "special.hpp"

#include <cmath>
#include <stdexcept>

namespace dunkl {

namespace {

double zeta_gt1(double s) {
  // Dirichlet series to N with Euler-Maclaurin tail.
  const int N = 40;
  long double sum = 0.0L;
  for (int n = 1; n <= N; ++n) sum += std::pow(static_cast<long double>(n), -static_cast<long double>(s));
  long double Nl = N;
  long double tail = std::pow(Nl, 1.0L - s) / (s - 1.0L) - 0.5L * std::pow(Nl, -static_cast<long double>(s));
  tail += s / 12.0L * std::pow(Nl, -s - 1.0L);
  tail -= s * (s + 1.0L) * (s + 2.0L) / 720.0L * std::pow(Nl, -s - 3.0L);
  tail += s * (s + 1.0L) * (s + 2.0L) * (s + 3.0L) * (s + 4.0L) / 30240.0L * std::pow(Nl, -s - 5.0L);
  return static_cast<double>(sum + tail);
}

}  // namespace

double riemann_zeta(double s) {
  if (s == 1.0) throw std::domain_error("riemann_zeta: pole at s = 1");
  if (s > 1.0) return zeta_gt1(s);
  if (s == 0.0) return -0.5;
  if (s < 0.0 && std::fmod(s, 2.0) == 0.0) return 0.0;  // trivial zeros
  // Reflection: zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s).
  double z1 = zeta_gt1(1.0 - s);
  return std::pow(2.0, s) * std::pow(kPi, s - 1.0) * std::sin(kPi * s / 2.0) *
         std::tgamma(1.0 - s) * z1;
}

double hurwitz_zeta_half(double s) {
  if (s == 0.0) return 0.0;  // (2^0 - 1) kills the value
  return (std::pow(2.0, s) - 1.0) * riemann_zeta(s);
}

namespace {

double bessel_series(double nu, double s) {
  // sum_m (-(s/2)^2)^m / (m! (nu+1)_m), long double accumulation.
  long double z = -0.25L * static_cast<long double>(s) * static_cast<long double>(s);
  long double term = 1.0L, sum = 1.0L;
  for (int m = 1; m <= 400; ++m) {
    term *= z / (static_cast<long double>(m) * (static_cast<long double>(nu) + m));
    sum += term;
    if (std::abs(static_cast<double>(term)) <= 1e-18 * (1.0 + std::abs(static_cast<double>(sum))) && m > std::abs(s)) break;
  }
  return static_cast<double>(sum);
}

double bessel_asymptotic(double nu, double s) {
  // Hankel expansion, normalized: j = Gamma(nu+1) (s/2)^{-nu} sqrt(2/(pi s)) (P cos w - Q sin w).
  double mu = 4.0 * nu * nu;
  double P = 1.0, Q = 0.0;
  double u = 1.0;
  double prev = 1.0;
  for (int m = 1; m <= 40; ++m) {
    double odd = 2.0 * m - 1.0;
    u *= (mu - odd * odd) / (8.0 * m * s);
    if (u == 0.0) break;  // terminates exactly for half-integer nu
    if (std::abs(u) > prev) break;
    prev = std::abs(u);
    int r = m % 4;
    if (r == 0) P += u;
    else if (r == 1) Q += u;
    else if (r == 2) P -= u;
    else Q -= u;
    if (std::abs(u) < 1e-18) break;
  }
  double w = s - nu * kPi / 2.0 - kPi / 4.0;
  double amp = std::exp(std::lgamma(nu + 1.0) - nu * std::log(0.5 * s)) * std::sqrt(2.0 / (kPi * s));
  return amp * (P * std::cos(w) - Q * std::sin(w));
}

constexpr double kBesselSwitch = 18.0;

}  // namespace

double normalized_bessel_j(double nu, double s) {
  double a = std::abs(s);
  if (a <= kBesselSwitch) return bessel_series(nu, a);
  return bessel_asymptotic(nu, a);
}

cplx dunkl_profile_imag(double k, double s) {
  if (k == 0.0) return {std::cos(s), -std::sin(s)};
  double re = normalized_bessel_j(k - 0.5, s);
  double im = -s / (2.0 * k + 1.0) * normalized_bessel_j(k + 0.5, s);
  return {re, im};
}

double dunkl_kernel_series(double k, double t) {
  if (std::abs(t) > 700.0)
    throw std::domain_error("dunkl_kernel_series: |x*y| beyond the supported range 700");
  long double term = 1.0L, sum = 1.0L;
  long double tl = t;
  for (int n = 1; n <= 1400; ++n) {
    double denom = n + k * (1.0 - ((n % 2) ? -1.0 : 1.0));
    term *= tl / denom;
    sum += term;
    if (std::abs(static_cast<double>(term)) <= 1e-13 * std::abs(static_cast<double>(sum)) && n > std::abs(t)) break;
  }
  return static_cast<double>(sum);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton from the Chebyshev-angle initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

double smooth_bump(double r, double a) {
  double u = r / a;
  double d = 1.0 - u * u;
  if (d <= 0.0) return 0.0;
  return std::exp(-1.0 / d);
}

double smooth_step_down(double x, double lo, double hi) {
  if (x <= lo) return 1.0;
  if (x >= hi) return 0.0;
  double y = (x - lo) / (hi - lo);
  auto q = [](double v) { return v > 0.0 ? std::exp(-1.0 / v) : 0.0; };
  return q(1.0 - y) / (q(1.0 - y) + q(y));
}

}  // namespace dunkl
