#include "weight.hpp"

#include <algorithm>
#include <cmath>

#include "special.hpp"

namespace dunkl {

namespace {

// int_a^b (sqrt(2)|u|)^{2k} du, exact.
double axis_segment_measure(double k, double a, double b) {
  double p = 2.0 * k + 1.0;
  auto prim = [&](double u) { return (u >= 0.0 ? 1.0 : -1.0) * std::pow(std::abs(u), p) / p; };
  return std::pow(2.0, k) * (prim(b) - prim(a));
}

double axis_gaussian_quadrature(double k, int nodes) {
  // 2^k * 2 int_0^inf u^{2k} e^{-u^2/2} du via the substitution u = e^s,
  // Gauss-Legendre with `nodes` points on s in [-30, log 40].
  std::vector<double> gx, gw;
  gauss_legendre(nodes, gx, gw);
  double lo = -30.0, hi = std::log(40.0);
  long double total = 0.0L;
  for (std::size_t i = 0; i < gx.size(); ++i) {
    double s = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[i];
    double u = std::exp(s);
    double f = std::pow(u, 2.0 * k + 1.0) * std::exp(-0.5 * u * u);
    total += 0.5 * (hi - lo) * gw[i] * f;
  }
  return 2.0 * std::pow(2.0, k) * static_cast<double>(total);
}

}  // namespace

double axis_normalization_closed_form(double k) {
  return std::pow(2.0, 2.0 * k + 0.5) * std::tgamma(k + 0.5);
}

WeightConfig WeightConfig::create(int dim, std::span<const double> multiplicities) {
  if (dim < 1 || dim > 3) throw ConfigError("dimension must be 1, 2 or 3", "dimension");
  if (static_cast<int>(multiplicities.size()) != dim)
    throw ConfigError("multiplicities must have one entry per axis", "multiplicities");
  WeightConfig cfg;
  cfg.dim = dim;
  cfg.multiplicities.assign(multiplicities.begin(), multiplicities.end());
  double ksum = 0.0;
  for (double k : cfg.multiplicities) {
    if (!(k >= 0.0) || k > 3.5)
      throw ConfigError("multiplicities must lie in [0, 3.5]", "multiplicities");
    ksum += k;
  }
  cfg.homogeneous_dim = dim + 2.0 * ksum;
  cfg.normalization = 1.0;
  for (double k : cfg.multiplicities) {
    double c = axis_normalization_closed_form(k);
    cfg.axis_normalization.push_back(c);
    cfg.normalization *= c;
  }
  // Poisson constant by the mass-one condition (radial quadrature; in 1-D
  // matches the Beta closed form (1/2) B(k+1/2, 1/2) scaled).
  {
    std::vector<double> gx, gw;
    gauss_legendre(256, gx, gw);
    // Angular substitution r = tan(theta), theta in [0, pi/2).
    long double total = 0.0L;
    double nb = cfg.homogeneous_dim;
    double smr;
    if (dim <= 2) {
      smr = sphere_measure(cfg);
    } else {
      // 3-D: quadrature over the sphere octant.
      std::vector<double> tx, tw;
      gauss_legendre(128, tx, tw);
      long double acc = 0.0L;
      double k1 = cfg.multiplicities[0], k2 = cfg.multiplicities[1], k3 = cfg.multiplicities[2];
      for (std::size_t i = 0; i < tx.size(); ++i) {
        double th = kPi / 2.0 * 0.5 * (tx[i] + 1.0);
        double wth = kPi / 4.0 * tw[i];
        for (std::size_t j = 0; j < tx.size(); ++j) {
          double ph = kPi / 2.0 * 0.5 * (tx[j] + 1.0);
          double wph = kPi / 4.0 * tw[j];
          double x = std::sin(th) * std::cos(ph), y = std::sin(th) * std::sin(ph), z = std::cos(th);
          double wgt = std::pow(std::sqrt(2.0) * x, 2.0 * k1) * std::pow(std::sqrt(2.0) * y, 2.0 * k2) *
                       std::pow(std::sqrt(2.0) * z, 2.0 * k3);
          acc += wth * wph * wgt * std::sin(th);
        }
      }
      smr = 8.0 * static_cast<double>(acc);
    }
    for (std::size_t i = 0; i < gx.size(); ++i) {
      double th = kPi / 2.0 * 0.5 * (gx[i] + 1.0);
      double wq = kPi / 4.0 * gw[i];
      double r = std::tan(th);
      double jac = 1.0 + r * r;
      total += wq * std::pow(r, nb - 1.0) * std::pow(1.0 + r * r, -(nb + 1.0) / 2.0) * jac;
    }
    cfg.poisson_constant = 1.0 / (smr * static_cast<double>(total));
  }
  return cfg;
}

double weight_density(const WeightConfig& cfg, std::span<const double> x) {
  double w = 1.0;
  for (int i = 0; i < cfg.dim; ++i)
    w *= std::pow(std::sqrt(2.0) * std::abs(x[static_cast<std::size_t>(i)]), 2.0 * cfg.multiplicity(i));
  return w;
}

double normalization_ck_quadrature(const WeightConfig& cfg, int nodes_per_axis) {
  double v = 1.0, v2 = 1.0;
  for (double k : cfg.multiplicities) {
    v *= axis_gaussian_quadrature(k, nodes_per_axis);
    v2 *= axis_gaussian_quadrature(k, nodes_per_axis * 2);
  }
  if (std::abs(v - v2) > 1e-10 * std::abs(v2))
    throw ConvergenceError("normalization quadrature did not converge");
  return v2;
}

double ball_volume(const WeightConfig& cfg, std::span<const double> center, double r) {
  if (!(r > 0.0)) throw std::invalid_argument("ball_volume: radius must be positive");
  if (cfg.dim == 1) return axis_segment_measure(cfg.multiplicities[0], center[0] - r, center[0] + r);
  if (cfg.dim == 2) {
    // Slice along axis 0; per-slice 1-D closed form along axis 1; composite
    // Gauss split at u = 0 when the hyperplane crosses the slab.
    double k0 = cfg.multiplicities[0], k1 = cfg.multiplicities[1];
    std::vector<double> gx, gw;
    gauss_legendre(96, gx, gw);
    double a = center[0] - r, b = center[0] + r;
    std::vector<double> cuts{a, b};
    if (a < 0.0 && b > 0.0) cuts = {a, 0.0, b};
    long double total = 0.0L;
    for (std::size_t seg = 0; seg + 1 < cuts.size(); ++seg) {
      double lo = cuts[seg], hi = cuts[seg + 1];
      for (std::size_t i = 0; i < gx.size(); ++i) {
        double u = 0.5 * (lo + hi) + 0.5 * (hi - lo) * gx[i];
        double du = 0.5 * (hi - lo) * gw[i];
        double h = r * r - (u - center[0]) * (u - center[0]);
        if (h <= 0.0) continue;
        double half = std::sqrt(h);
        double slice = axis_segment_measure(k1, center[1] - half, center[1] + half);
        total += du * std::pow(std::sqrt(2.0) * std::abs(u), 2.0 * k0) * slice;
      }
    }
    return static_cast<double>(total);
  }
  throw std::invalid_argument("ball_volume: dimension > 2 not supported");
}

double box_measure(const WeightConfig& cfg, std::span<const double> lo, std::span<const double> hi) {
  double m = 1.0;
  for (int i = 0; i < cfg.dim; ++i)
    m *= axis_segment_measure(cfg.multiplicity(i), lo[static_cast<std::size_t>(i)], hi[static_cast<std::size_t>(i)]);
  return m;
}

double orbit_distance(const WeightConfig& cfg, std::span<const double> x, std::span<const double> y) {
  // Sign flips act independently per axis.
  double d2 = 0.0;
  for (int i = 0; i < cfg.dim; ++i) {
    double a = x[static_cast<std::size_t>(i)], b = y[static_cast<std::size_t>(i)];
    double dm = std::min(std::abs(a - b), std::abs(a + b));
    d2 += dm * dm;
  }
  return std::sqrt(d2);
}

void OrbitGroup::apply(int element, std::span<const double> x, std::span<double> out) const {
  for (int i = 0; i < dim; ++i)
    out[static_cast<std::size_t>(i)] =
        ((element >> i) & 1) ? -x[static_cast<std::size_t>(i)] : x[static_cast<std::size_t>(i)];
}

double dunkl_kernel(const WeightConfig& cfg, std::span<const double> x, std::span<const double> y) {
  double e = 1.0;
  for (int i = 0; i < cfg.dim; ++i)
    e *= dunkl_kernel_series(cfg.multiplicity(i),
                             x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(i)]);
  return e;
}

cplx dunkl_kernel_unitary(const WeightConfig& cfg, std::span<const double> xi, std::span<const double> x) {
  cplx e{1.0, 0.0};
  for (int i = 0; i < cfg.dim; ++i)
    e *= dunkl_profile_imag(cfg.multiplicity(i),
                            xi[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)]);
  return e;
}

double heat_profile(const WeightConfig& cfg, double t, std::span<const double> x) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_profile: t must be positive");
  double n2 = 0.0;
  for (int i = 0; i < cfg.dim; ++i) n2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  return std::pow(2.0 * t, -cfg.homogeneous_dim / 2.0) * std::exp(-n2 / (4.0 * t)) / cfg.normalization;
}

double heat_kernel2(const WeightConfig& cfg, double t, std::span<const double> x, std::span<const double> y) {
  if (!(t > 0.0)) throw std::invalid_argument("heat_kernel2: t must be positive");
  double nx = 0.0, ny = 0.0;
  std::vector<double> xs(static_cast<std::size_t>(cfg.dim)), ys(static_cast<std::size_t>(cfg.dim));
  double s = std::sqrt(2.0 * t);
  for (int i = 0; i < cfg.dim; ++i) {
    std::size_t u = static_cast<std::size_t>(i);
    nx += x[u] * x[u];
    ny += y[u] * y[u];
    xs[u] = x[u] / s;
    ys[u] = y[u] / s;
  }
  return std::pow(2.0 * t, -cfg.homogeneous_dim / 2.0) / cfg.normalization *
         std::exp(-(nx + ny) / (4.0 * t)) * dunkl_kernel(cfg, xs, ys);
}

double poisson_profile(const WeightConfig& cfg, std::span<const double> x) {
  double n2 = 0.0;
  for (int i = 0; i < cfg.dim; ++i) n2 += x[static_cast<std::size_t>(i)] * x[static_cast<std::size_t>(i)];
  return cfg.poisson_constant * std::pow(1.0 + n2, -(cfg.homogeneous_dim + 1.0) / 2.0);
}

double sphere_measure(const WeightConfig& cfg) {
  if (cfg.dim == 1) return 2.0 * std::pow(2.0, cfg.multiplicities[0]);
  if (cfg.dim == 2) {
    double k1 = cfg.multiplicities[0], k2 = cfg.multiplicities[1];
    double lb = std::lgamma(k1 + 0.5) + std::lgamma(k2 + 0.5) - std::lgamma(k1 + k2 + 1.0);
    return 2.0 * std::pow(2.0, k1 + k2) * std::exp(lb);
  }
  throw std::invalid_argument("sphere_measure: dimension > 2 not supported");
}

double vmax_ball(const WeightConfig& cfg, std::span<const double> x, std::span<const double> y, double t) {
  return std::max(ball_volume(cfg, x, t), ball_volume(cfg, y, t));
}

}  // namespace dunkl
