#include "dyadic.hpp"

#include <algorithm>
#include <cmath>

#include "special.hpp"

namespace dunkl {

DyadicOrders derive_orders(const WeightConfig& cfg) {
  DyadicOrders o;
  double nb = cfg.homogeneous_dim;
  o.N0 = 2.0 * nb + 0.5;
  o.M1 = static_cast<int>(std::floor((2.0 * o.N0 + 3.0 - cfg.dim) / 4.0)) + 1;
  o.M1 = std::max(o.M1, 2);
  double cap = (4.0 * o.M1 + cfg.dim - 1.0) / 2.0;
  o.N1 = std::min(cap, o.N0 + 1.5);
  if (!(o.N1 > o.N0 + 1.0)) throw ConvergenceError("dyadic orders infeasible for this configuration");
  o.N2 = o.N1 - nb;
  return o;
}

namespace {
constexpr double kBaseBumpRadius = 1.0 / 32.0;
constexpr int kConvolutionPower = 8;
}  // namespace

CalderonBumps::CalderonBumps(const WeightConfig& cfg) : cfg_(cfg), orders_(derive_orders(cfg)) {
  if (cfg.dim > 2) throw ConfigError("Calderon machinery supports dimensions 1 and 2", "dimension");
  double nb = cfg.homogeneous_dim;
  double nu = nb / 2.0 - 1.0;
  double sk = sphere_measure(cfg);

  std::vector<double> gx, gw;
  gauss_legendre(200, gx, gw);
  std::size_t n = static_cast<std::size_t>(s_max_ / step_) + 1;
  bhat_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = static_cast<double>(i) * step_;
    long double acc = 0.0L;
    for (std::size_t q = 0; q < gx.size(); ++q) {
      double rho = kBaseBumpRadius * 0.5 * (gx[q] + 1.0);
      double w = kBaseBumpRadius * 0.5 * gw[q];
      acc += w * smooth_bump(rho, kBaseBumpRadius) * normalized_bessel_j(nu, s * rho) *
             std::pow(rho, nb - 1.0);
    }
    bhat_[i] = sk * static_cast<double>(acc);
  }

  // Normalize: gamma^4 int (s^{2M1+2} Bhat^8)^4 ds/s = 1, Simpson on the table.
  long double mass = 0.0L, mass_coarse = 0.0L;
  auto unnorm4 = [&](std::size_t i) {
    double s = static_cast<double>(i) * step_;
    if (s == 0.0) return 0.0;
    double u = std::pow(s, 2.0 * orders_.M1 + 2.0) * std::pow(bhat_[i], kConvolutionPower);
    return u * u * u * u / s;
  };
  for (std::size_t i = 0; i + 2 < n; i += 2)
    mass += (step_ / 3.0L) * (unnorm4(i) + 4.0L * unnorm4(i + 1) + unnorm4(i + 2));
  for (std::size_t i = 0; i + 4 < n; i += 4)
    mass_coarse += (2.0L * step_ / 3.0L) * (unnorm4(i) + 4.0L * unnorm4(i + 2) + unnorm4(i + 4));
  if (!(mass > 0.0L) || std::abs(static_cast<double>(mass - mass_coarse)) > 1e-8 * static_cast<double>(mass))
    throw ConvergenceError("Calderon normalization quadrature did not converge");
  gamma_ = std::pow(static_cast<double>(mass), -0.25);

  cum_.assign(n, 0.0);
  long double run = 0.0L;
  double g4 = std::pow(gamma_, 4.0);
  for (std::size_t i = 0; i + 2 < n; i += 2) {
    run += g4 * (step_ / 3.0L) * (unnorm4(i) + 4.0L * unnorm4(i + 1) + unnorm4(i + 2));
    cum_[i + 2] = static_cast<double>(run);
    cum_[i + 1] = static_cast<double>(run - g4 * (step_ / 3.0L) * (unnorm4(i + 1) + unnorm4(i + 2)));
  }

  double pk = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double v = std::abs(phi_hat(static_cast<double>(i) * step_));
    if (v > pk) {
      pk = v;
      s_peak_ = static_cast<double>(i) * step_;
    }
  }
  double total = cum_.back();
  for (std::size_t i = 0; i < n; ++i)
    if (cum_[i] > 1e-4 * total) {
      s_lo_ = static_cast<double>(i) * step_;
      break;
    }
  for (std::size_t i = n; i-- > 0;)
    if (total - cum_[i] > 1e-4 * total) {
      s_hi_ = static_cast<double>(i) * step_;
      break;
    }
  s_edge_ = s_max_;
  for (std::size_t i = n; i-- > 0;) {
    double v = std::abs(phi_hat(static_cast<double>(i) * step_));
    if (v * v > 1e-7 * pk * pk) {
      s_edge_ = static_cast<double>(i + 1) * step_;
      break;
    }
  }
}

double CalderonBumps::table_interp(const std::vector<double>& tab, double s) const {
  if (s < 0.0) s = -s;
  double u = s / step_;
  if (u >= static_cast<double>(tab.size() - 2)) return (&tab == &cum_) ? tab.back() : 0.0;
  std::size_t i = static_cast<std::size_t>(u);
  double fr = u - static_cast<double>(i);
  // Catmull-Rom with clamped ends.
  double p0 = tab[i > 0 ? i - 1 : 0];
  double p1 = tab[i];
  double p2 = tab[i + 1];
  double p3 = tab[i + 2 < tab.size() ? i + 2 : i + 1];
  double a = -0.5 * p0 + 1.5 * p1 - 1.5 * p2 + 0.5 * p3;
  double b = p0 - 2.5 * p1 + 2.0 * p2 - 0.5 * p3;
  double c = -0.5 * p0 + 0.5 * p2;
  return ((a * fr + b) * fr + c) * fr + p1;
}

double CalderonBumps::bhat(double s) const { return table_interp(bhat_, s); }

double CalderonBumps::phi_hat_unnormalized(double s) const {
  if (s <= 0.0) return 0.0;
  if (s >= s_max_) return 0.0;
  return std::pow(s, 2.0 * orders_.M1 + 2.0) * std::pow(bhat(s), kConvolutionPower);
}

double CalderonBumps::phi_hat(double s) const {
  double sign = (orders_.M1 % 2) ? 1.0 : -1.0;  // (-1)^{M1+1}
  return sign * gamma_ * phi_hat_unnormalized(std::abs(s));
}

double CalderonBumps::eta_hat(double s) const {
  s = std::abs(s);
  if (s >= s_max_) return 0.0;
  return -gamma_ * s * s * std::pow(bhat(s), kConvolutionPower);
}

double CalderonBumps::calderon_mass(double s) const {
  if (s <= 0.0) return 0.0;
  return table_interp(cum_, s);
}

double CalderonBumps::coverage(double xi, double t1, double t2) const {
  if (xi <= 0.0) return 0.0;
  return calderon_mass(t2 * xi) - calderon_mass(t1 * xi);
}

double CalderonBumps::eta_profile(double r) const {
  // Inverse radial transform of the eta multiplier.
  double nb = cfg_.homogeneous_dim;
  double nu = nb / 2.0 - 1.0;
  long double acc = 0.0L;
  for (std::size_t i = 1; i + 1 < bhat_.size(); ++i) {
    double s = static_cast<double>(i) * step_;
    acc += step_ * eta_hat(s) * normalized_bessel_j(nu, r * s) * std::pow(s, nb - 1.0);
  }
  return sphere_measure(cfg_) * static_cast<double>(acc) / (cfg_.normalization * cfg_.normalization);
}

double CalderonBumps::phi_profile(double r) const {
  double nb = cfg_.homogeneous_dim;
  double nu = nb / 2.0 - 1.0;
  long double acc = 0.0L;
  for (std::size_t i = 1; i + 1 < bhat_.size(); ++i) {
    double s = static_cast<double>(i) * step_;
    acc += step_ * phi_hat(s) * normalized_bessel_j(nu, r * s) * std::pow(s, nb - 1.0);
  }
  return sphere_measure(cfg_) * static_cast<double>(acc) / (cfg_.normalization * cfg_.normalization);
}

bool DyadicCube::in_diamond(const WeightConfig& cfg, std::span<const double> x) const {
  return orbit_distance(cfg, x, center) < 2.0 * std::sqrt(static_cast<double>(cfg.dim)) * side;
}

namespace {

// Flat node index ranges of a cube, per axis: nodes with a <= x < b.
void axis_node_range(const Axis& ax, double a, double b, int& lo, int& hi) {
  double flo = (a + ax.half_width) / ax.step - 0.5;
  double fhi = (b + ax.half_width) / ax.step - 0.5;
  lo = static_cast<int>(std::ceil(flo - 1e-12));
  hi = static_cast<int>(std::ceil(fhi - 1e-12));
  lo = std::max(lo, 0);
  hi = std::min(hi, ax.points);
}

struct CubeNodes {
  DyadicCube cube;
  std::vector<std::pair<std::size_t, std::size_t>> ranges;  // flat [lo, hi) runs
};

std::vector<CubeNodes> enumerate_cubes(const Grid& grid, double side, int level) {
  std::vector<CubeNodes> out;
  int dim = grid.dim();
  double L = grid.half_width();
  long n_lo = static_cast<long>(std::floor(-L / side));
  long n_hi = static_cast<long>(std::ceil(L / side));
  if (dim == 1) {
    for (long n = n_lo; n < n_hi; ++n) {
      int lo, hi;
      axis_node_range(grid.axis(0), side * static_cast<double>(n), side * static_cast<double>(n + 1), lo, hi);
      if (lo >= hi) continue;
      CubeNodes cn;
      cn.cube.level = level;
      cn.cube.side = side;
      cn.cube.index = {n};
      cn.cube.center = {side * (static_cast<double>(n) + 0.5)};
      cn.ranges.push_back({static_cast<std::size_t>(lo), static_cast<std::size_t>(hi)});
      out.push_back(std::move(cn));
    }
    return out;
  }
  // dim == 2: one run per row of the cube.
  for (long n0 = n_lo; n0 < n_hi; ++n0)
    for (long n1 = n_lo; n1 < n_hi; ++n1) {
      int lo0, hi0, lo1, hi1;
      axis_node_range(grid.axis(0), side * static_cast<double>(n0), side * static_cast<double>(n0 + 1), lo0, hi0);
      axis_node_range(grid.axis(1), side * static_cast<double>(n1), side * static_cast<double>(n1 + 1), lo1, hi1);
      if (lo0 >= hi0 || lo1 >= hi1) continue;
      CubeNodes cn;
      cn.cube.level = level;
      cn.cube.side = side;
      cn.cube.index = {n0, n1};
      cn.cube.center = {side * (static_cast<double>(n0) + 0.5), side * (static_cast<double>(n1) + 0.5)};
      std::size_t m1 = static_cast<std::size_t>(grid.axis(1).points);
      for (int r = lo0; r < hi0; ++r)
        cn.ranges.push_back({static_cast<std::size_t>(r) * m1 + static_cast<std::size_t>(lo1),
                             static_cast<std::size_t>(r) * m1 + static_cast<std::size_t>(hi1)});
      out.push_back(std::move(cn));
    }
  return out;
}

double cube_weight(const WeightConfig& cfg, const DyadicCube& c) {
  std::vector<double> lo(c.center.size()), hi(c.center.size());
  for (std::size_t a = 0; a < c.center.size(); ++a) {
    lo[a] = c.center[a] - 0.5 * c.side;
    hi[a] = c.center[a] + 0.5 * c.side;
  }
  return box_measure(cfg, lo, hi);
}

void log_gauss_nodes(double t_lo, double t_hi, int n, std::vector<double>& ts, std::vector<double>& ws) {
  std::vector<double> gx, gw;
  gauss_legendre(n, gx, gw);
  double a = std::log(t_lo), b = std::log(t_hi);
  ts.resize(static_cast<std::size_t>(n));
  ws.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    ts[static_cast<std::size_t>(i)] = std::exp(0.5 * (a + b) + 0.5 * (b - a) * gx[static_cast<std::size_t>(i)]);
    ws[static_cast<std::size_t>(i)] = 0.5 * (b - a) * gw[static_cast<std::size_t>(i)];
  }
}

}  // namespace

ChangFeffermanResult chang_fefferman(const Transformer& T, const CalderonBumps& bumps,
                                     const GridFunction& f, int j_min, int j_max,
                                     const ChangFeffermanOptions& opts) {
  if (j_min > j_max) throw std::invalid_argument("chang_fefferman: j_min > j_max");
  const Grid& grid = *T.space();
  double L = grid.half_width();
  double side_big = opts.base_scale * std::pow(2.0, -j_min);
  if (opts.strict_range_check && side_big > L * (1.0 + 1e-12))
    throw ConfigError("scale range: largest cube side exceeds the grid half-width", "scales.j_min");

  ChangFeffermanResult res;
  res.f_l2 = f.norm_l2();
  GridFunction Ff = T.forward(f);
  const auto& norms = T.freq_norms();
  double xi_max = T.freq()->half_width();
  int M1 = bumps.order();

  double f_energy = res.f_l2 * res.f_l2;

  // Phase 1: slab fields and coefficients for every level, so pruning can be
  // relative to the global maximum (weak atoms are noise after the 1/lambda
  // normalization).
  struct LevelWork {
    LevelInfo info;
    std::vector<double> ts, ws;
    std::vector<GridFunction> Ft;
    std::vector<CubeNodes> cubes;
    std::vector<double> lambdas;
    bool build = false;
  };
  std::vector<LevelWork> work;
  double global_max_lambda = 0.0;
  for (int j = j_min; j <= j_max; ++j) {
    double side = opts.base_scale * std::pow(2.0, -j);
    LevelWork lw;
    lw.info.level = j;
    lw.info.side = side;
    lw.info.resolved =
        bumps.safe_edge() / side <= xi_max * (1.0 + 1e-9) && side >= 2.0 * grid.axis(0).step;
    log_gauss_nodes(side, 2.0 * side, opts.t_nodes, lw.ts, lw.ws);
    for (std::size_t i = 0; i < lw.ts.size(); ++i) {
      GridFunction spec(T.freq());
      for (std::size_t q = 0; q < spec.values.size(); ++q) {
        double p = bumps.phi_hat(lw.ts[i] * norms[q]);
        spec.values[q] = p * p * Ff.values[q];
      }
      lw.Ft.push_back(T.inverse(spec));
      double e = lw.Ft.back().norm_l2();
      lw.info.slab_energy += lw.ws[i] * e * e;
    }
    if (lw.info.slab_energy <= opts.energy_floor_rel * f_energy) {
      lw.Ft.clear();
      work.push_back(std::move(lw));
      continue;
    }
    if (!lw.info.resolved) {
      // Unresolved scales are legitimate only when they carry no real energy.
      if (opts.strict_range_check && lw.info.slab_energy > 1e-6 * f_energy)
        throw ConfigError("scale range: level " + std::to_string(j) +
                              " under-resolves the grid but carries energy",
                          "scales.j_max");
      lw.Ft.clear();
      work.push_back(std::move(lw));
      continue;
    }
    lw.build = true;
    lw.cubes = enumerate_cubes(grid, side, j);
    lw.lambdas.assign(lw.cubes.size(), 0.0);
    const auto& qw = grid.weights();
    for (std::size_t c = 0; c < lw.cubes.size(); ++c) {
      long double acc = 0.0L;
      for (std::size_t i = 0; i < lw.ts.size(); ++i) {
        long double cell = 0.0L;
        for (auto [lo, hi] : lw.cubes[c].ranges)
          for (std::size_t y = lo; y < hi; ++y) cell += qw[y] * std::norm(lw.Ft[i].values[y]);
        acc += lw.ws[i] * cell;
      }
      double wq = cube_weight(grid.config(), lw.cubes[c].cube);
      lw.lambdas[c] = std::sqrt(std::max(0.0, static_cast<double>(acc) / wq));
      lw.info.max_lambda = std::max(lw.info.max_lambda, lw.lambdas[c]);
    }
    global_max_lambda = std::max(global_max_lambda, lw.info.max_lambda);
    work.push_back(std::move(lw));
  }

  // Phase 2: atoms for the surviving cubes.
  for (auto& lw : work) {
    if (!lw.build) {
      res.levels.push_back(lw.info);
      continue;
    }
    int M1l = M1;
    for (std::size_t c = 0; c < lw.cubes.size(); ++c) {
      if (lw.lambdas[c] <= opts.prune_rel * global_max_lambda || lw.lambdas[c] == 0.0) continue;
      ++lw.info.active_cubes;
      if (!opts.build_atoms) {
        AtomEntry stub;
        stub.cube = lw.cubes[c].cube;
        stub.lambda = lw.lambdas[c];
        res.entries.push_back(std::move(stub));
        continue;
      }
      AtomEntry e;
      e.cube = lw.cubes[c].cube;
      e.lambda = lw.lambdas[c];
      GridFunction acc_a(T.freq()), acc_t(T.freq());
      for (std::size_t i = 0; i < lw.ts.size(); ++i) {
        GridFunction U(T.freq());
        bool first = true;
        for (auto [lo, hi] : lw.cubes[c].ranges) {
          GridFunction piece = T.forward_range(lw.Ft[i], lo, hi);
          if (first) {
            U = std::move(piece);
            first = false;
          } else {
            U += piece;
          }
        }
        double t4 = std::pow(lw.ts[i], 4.0 * M1l);
        for (std::size_t q = 0; q < U.values.size(); ++q) {
          double p = bumps.phi_hat(lw.ts[i] * norms[q]);
          double hh = bumps.eta_hat(lw.ts[i] * norms[q]);
          acc_a.values[q] += lw.ws[i] * p * p * U.values[q];
          acc_t.values[q] += lw.ws[i] * t4 * hh * hh * U.values[q];
        }
      }
      e.a = T.inverse(acc_a);
      e.a *= 1.0 / e.lambda;
      e.a_tilde = T.inverse(acc_t);
      e.a_tilde *= 1.0 / e.lambda;
      e.sup_a = e.a.norm_sup();
      res.entries.push_back(std::move(e));
    }
    res.levels.push_back(lw.info);
  }

  // Energy outside the covered scales (exact Calderon tail).
  double t_lo = opts.base_scale * std::pow(2.0, -j_max);
  double t_hi = opts.base_scale * std::pow(2.0, -j_min + 1);
  long double tail = 0.0L;
  const auto& qf = T.freq()->weights();
  for (std::size_t q = 0; q < Ff.values.size(); ++q)
    tail += qf[q] * std::norm(Ff.values[q]) * (1.0 - bumps.coverage(norms[q], t_lo, t_hi));
  res.coverage_tail_energy = static_cast<double>(tail);
  return res;
}

GridFunction slab_projection(const Transformer& T, const CalderonBumps& bumps, const GridFunction& f,
                             double t_min, double t_max) {
  GridFunction Ff = T.forward(f);
  const auto& norms = T.freq_norms();
  for (std::size_t q = 0; q < Ff.values.size(); ++q)
    Ff.values[q] *= bumps.coverage(norms[q], t_min, t_max);
  return T.inverse(Ff);
}

GridFunction atom_sum(const Transformer& T, std::span<const AtomEntry> entries,
                      std::span<const std::size_t> subset) {
  GridFunction acc(T.space());
  for (std::size_t idx : subset) {
    const AtomEntry& e = entries[idx];
    for (std::size_t i = 0; i < acc.values.size(); ++i) acc.values[i] += e.lambda * e.a.values[i];
  }
  return acc;
}

double subcollection_bound(const Transformer& T, std::span<const AtomEntry> entries,
                           std::span<const std::size_t> subset, double f_l2) {
  if (f_l2 == 0.0) return 0.0;
  return atom_sum(T, entries, subset).norm_l2() / f_l2;
}

AtomReport atom_diagnostics(const Transformer& T, const CalderonBumps& bumps, const AtomEntry& e,
                            const Symbol* s, double envelope_M) {
  AtomReport rep;
  const Grid& grid = *T.space();
  const WeightConfig& cfg = grid.config();
  double ell = e.cube.side;
  double sup = std::max(e.sup_a, 1e-300);
  std::vector<double> pt(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < e.a.values.size(); ++i) {
    grid.node(i, pt);
    double v = std::abs(e.a.values[i]);
    if (!e.cube.in_diamond(cfg, pt)) rep.support_leakage = std::max(rep.support_leakage, v / sup);
    double dist = 0.0;
    for (std::size_t a = 0; a < pt.size(); ++a) {
      double d = pt[a] - e.cube.center[a];
      dist += d * d;
    }
    rep.envelope_constant = std::max(rep.envelope_constant, v * (1.0 + std::sqrt(dist) / ell));
  }
  double l2 = e.a.norm_l2();
  double wq = std::sqrt(cube_weight(cfg, e.cube));
  double scale = std::max(wq * l2, 1e-300);
  rep.cancellation = std::abs(e.a.integral()) / scale;
  rep.derivative_cancellation = std::abs(T.derivative(e.a, 0).integral()) / scale * ell;

  // a = Delta^{2 M1} atilde, checked spectrally in the L2 sense where both
  // spectra carry weight (the m^{4 M1}-scaling makes the complementary
  // regions pure noise).
  GridFunction Fa = T.forward(e.a), Ft = T.forward(e.a_tilde);
  const auto& norms = T.freq_norms();
  double fmax = Fa.norm_sup(), tmax = Ft.norm_sup();
  long double num = 0.0L, den = 0.0L;
  for (std::size_t q = 0; q < Fa.values.size(); ++q) {
    if (std::abs(Fa.values[q]) < 3e-3 * fmax || std::abs(Ft.values[q]) < 3e-3 * tmax) continue;
    cplx rhs = std::pow(norms[q] * norms[q], 2.0 * bumps.order()) * Ft.values[q];
    num += std::norm(Fa.values[q] - rhs);
    den += std::norm(Fa.values[q]);
  }
  rep.tilde_relation_defect = den > 0.0L ? std::sqrt(static_cast<double>(num / den)) : 0.0;

  if (s) {
    if (envelope_M <= 0.0) envelope_M = (4.0 * bumps.order() + cfg.dim - 1.0) / 2.0;
    GridFunction Sa = apply_symbol(T, *s, e.a);
    double ssup = Sa.norm_sup();
    for (std::size_t i = 0; i < Sa.values.size(); ++i) {
      if (std::abs(Sa.values[i]) < 1e-7 * ssup) continue;
      grid.node(i, pt);
      double dist = 0.0;
      for (std::size_t a = 0; a < pt.size(); ++a) {
        double d = pt[a] - e.cube.center[a];
        dist += d * d;
      }
      double dd = orbit_distance(cfg, pt, e.cube.center);
      double shape = std::pow(1.0 + std::sqrt(dist) / ell, -1.0) * std::pow(1.0 + dd / ell, -envelope_M);
      rep.s_envelope_constant = std::max(rep.s_envelope_constant, std::abs(Sa.values[i]) / shape);
    }
    rep.s_cancellation = std::abs(Sa.integral()) / scale;
  }
  return rep;
}

double lambda_refinement_delta(const Transformer& T, const CalderonBumps& bumps,
                               const GridFunction& f, const AtomEntry& e, int t_nodes) {
  ChangFeffermanOptions o;
  o.base_scale = e.cube.side * std::pow(2.0, e.cube.level);
  o.t_nodes = t_nodes;
  o.build_atoms = false;
  o.strict_range_check = false;
  auto r = chang_fefferman(T, bumps, f, e.cube.level, e.cube.level, o);
  for (const auto& e2 : r.entries)
    if (e2.cube.index == e.cube.index) return std::abs(e2.lambda - e.lambda) / std::max(e.lambda, 1e-300);
  return 0.0;
}

}  // namespace dunkl
