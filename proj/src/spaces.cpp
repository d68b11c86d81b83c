#include "spaces.hpp"

#include <algorithm>
#include <cmath>

#include "special.hpp"

namespace dunkl {

namespace {

// Only balls contained in the grid box are meaningful: for larger ones the
// node mass is clipped while the box energy keeps accumulating.
bool contained(const BallFamily::Ball& b, double half_width) {
  double m = 0.0;
  for (double c : b.center) m = std::max(m, std::abs(c));
  return m + b.radius <= 0.98 * half_width;
}

}  // namespace

BallFamily BallFamily::make_default(const WeightConfig& cfg, double half_width) {
  BallFamily fam;
  fam.half_width = half_width;
  double step = half_width / (cfg.dim == 1 ? 24.0 : 8.0);
  int n = static_cast<int>(std::floor(0.9 * half_width / step));
  std::vector<double> centers;
  for (int i = -n; i <= n; ++i) centers.push_back(step * i);
  for (int e = -12; e <= 10; ++e) {
    double r = std::pow(2.0, 0.5 * e);
    if (cfg.dim == 1) {
      for (double c : centers) {
        Ball b{{c}, r};
        if (contained(b, half_width)) fam.balls.push_back(std::move(b));
      }
    } else {
      for (double c0 : centers)
        for (double c1 : centers) {
          Ball b{{c0, c1}, r};
          if (contained(b, half_width)) fam.balls.push_back(std::move(b));
        }
    }
  }
  // Per-center maximal contained balls, so refinements interleave inside the
  // same envelope instead of extending it.
  if (cfg.dim == 1) {
    for (double c : centers) {
      double r = 0.975 * half_width - std::abs(c);
      if (r > 0.0) fam.balls.push_back({{c}, r});
    }
  } else {
    for (double c0 : centers)
      for (double c1 : centers) {
        double r = 0.975 * half_width - std::max(std::abs(c0), std::abs(c1));
        if (r > 0.0) fam.balls.push_back({{c0, c1}, r});
      }
  }
  return fam;
}

BallFamily BallFamily::refined() const {
  BallFamily out = *this;
  // Interleave radii off the half-octave ladder and shifted centers.
  std::size_t base = balls.size();
  for (std::size_t i = 0; i < base; ++i) {
    Ball b = balls[i];
    b.radius *= std::pow(2.0, 0.25);
    if (contained(b, half_width)) out.balls.push_back(b);
    Ball c = balls[i];
    for (auto& x : c.center) x += 0.31 * c.radius;
    if (contained(c, half_width)) out.balls.push_back(c);
  }
  return out;
}

namespace {

// Nodes inside a Euclidean ball, as flat index runs per row.
template <typename F>
void for_ball_nodes(const Grid& grid, std::span<const double> center, double radius, const F& fn) {
  if (grid.dim() == 1) {
    const Axis& ax = grid.axis(0);
    double flo = (center[0] - radius + ax.half_width) / ax.step - 0.5;
    double fhi = (center[0] + radius + ax.half_width) / ax.step - 0.5;
    std::size_t lo = static_cast<std::size_t>(std::max(0.0, std::ceil(flo)));
    std::size_t hi = static_cast<std::size_t>(
        std::clamp(std::floor(fhi) + 1.0, 0.0, static_cast<double>(ax.points)));
    for (std::size_t i = lo; i < hi; ++i) fn(i);
    return;
  }
  const Axis& a0 = grid.axis(0);
  const Axis& a1 = grid.axis(1);
  std::size_t m1 = static_cast<std::size_t>(a1.points);
  for (int r = 0; r < a0.points; ++r) {
    double dx = a0.nodes[static_cast<std::size_t>(r)] - center[0];
    double h2 = radius * radius - dx * dx;
    if (h2 <= 0.0) continue;
    double half = std::sqrt(h2);
    double flo = (center[1] - half + a1.half_width) / a1.step - 0.5;
    double fhi = (center[1] + half + a1.half_width) / a1.step - 0.5;
    std::size_t lo = static_cast<std::size_t>(std::max(0.0, std::ceil(flo)));
    std::size_t hi = static_cast<std::size_t>(
        std::clamp(std::floor(fhi) + 1.0, 0.0, static_cast<double>(a1.points)));
    for (std::size_t c = lo; c < hi; ++c) fn(static_cast<std::size_t>(r) * m1 + c);
  }
}

struct BallMoments {
  double mass = 0.0;
  cplx mean{0.0, 0.0};
  double oscillation = 0.0;  // w(B)^{-1} int |f - mean| dw
};

BallMoments ball_moments(const GridFunction& f, std::span<const double> center, double radius) {
  BallMoments m;
  const Grid& grid = *f.grid;
  const auto& w = grid.weights();
  long double mass = 0.0L, sr = 0.0L, si = 0.0L;
  for_ball_nodes(grid, center, radius, [&](std::size_t i) {
    mass += w[i];
    sr += w[i] * f.values[i].real();
    si += w[i] * f.values[i].imag();
  });
  if (mass <= 0.0L) return m;
  m.mass = static_cast<double>(mass);
  m.mean = {static_cast<double>(sr / mass), static_cast<double>(si / mass)};
  long double osc = 0.0L;
  for_ball_nodes(grid, center, radius, [&](std::size_t i) { osc += w[i] * std::abs(f.values[i] - m.mean); });
  m.oscillation = static_cast<double>(osc) / m.mass;
  return m;
}

}  // namespace

cplx ball_mean(const GridFunction& f, std::span<const double> center, double radius) {
  return ball_moments(f, center, radius).mean;
}

double bmo_norm(const GridFunction& f, const BallFamily& balls) {
  double best = 0.0;
  for (const auto& b : balls.balls) {
    auto m = ball_moments(f, b.center, b.radius);
    if (m.mass > 0.0) best = std::max(best, m.oscillation);
  }
  return best;
}

LogLemmaReport log_lemma_checks(const GridFunction& f, const BallFamily& balls, double bmo) {
  LogLemmaReport rep;
  if (bmo <= 0.0) return rep;
  const Grid& grid = *f.grid;
  double L = grid.half_width();
  Rng rng(2026);
  for (std::size_t bi = 0; bi < balls.balls.size(); bi += 7) {
    const auto& base = balls.balls[bi];
    double r = base.radius;
    if (r > 0.3 * L || r < grid.axis(0).step) continue;
    double r1 = r * std::pow(2.0, rng.uniform(0.2, 3.0));
    const std::vector<double>& c = base.center;
    auto m0 = ball_moments(f, c, r);
    auto m1 = ball_moments(f, c, r1);
    if (m0.mass > 0.0 && m1.mass > 0.0)
      rep.radii_constant = std::max(
          rep.radii_constant, std::abs(m0.mean - m1.mean) / (std::log(r1 / r + 4.0) * bmo));

    std::vector<double> c2 = c;
    c2[0] += rng.uniform(-2.0, 2.0) * r;
    auto m2 = ball_moments(f, c2, r);
    if (m0.mass > 0.0 && m2.mass > 0.0)
      rep.centers_constant = std::max(rep.centers_constant, std::abs(m0.mean - m2.mean) / bmo);

    std::vector<double> c3 = c;
    for (auto& v : c3) v = -v;  // a nontrivial reflection
    auto m3 = ball_moments(f, c3, r);
    if (m0.mass > 0.0 && m3.mass > 0.0) {
      double dist = 0.0;
      for (std::size_t a = 0; a < c.size(); ++a) dist += (c[a] - c3[a]) * (c[a] - c3[a]);
      rep.reflection_constant =
          std::max(rep.reflection_constant,
                   std::abs(m0.mean - m3.mean) / (std::log(std::sqrt(dist) / r + 4.0) * bmo));
    }

    // John-Nirenberg with s = 2 over doubled radii.
    for (int j = 1; j <= 4; ++j) {
      double rj = r * std::pow(2.0, j);
      if (rj > 1.4 * L) break;
      const auto& w = grid.weights();
      long double mass = 0.0L, q = 0.0L;
      for_ball_nodes(grid, c, rj, [&](std::size_t i) {
        mass += w[i];
        q += w[i] * std::norm(f.values[i] - m0.mean);
      });
      if (mass > 0.0L)
        rep.john_nirenberg_constant =
            std::max(rep.john_nirenberg_constant,
                     std::sqrt(static_cast<double>(q / mass)) / (static_cast<double>(j) * bmo));
    }
  }
  return rep;
}

GridFunction maximal_function(const Transformer& T, const GridFunction& f, double t_min, double t_max) {
  const Grid& grid = *T.space();
  GridFunction M(f.grid);
  for (double t = t_min; t <= t_max * (1.0 + 1e-12); t *= 2.0) {
    GridFunction u = T.heat(t, f);
    double radius = std::sqrt(t);
    if (grid.dim() == 1) {
      const Axis& ax = grid.axis(0);
      int wnodes = static_cast<int>(std::floor(radius / ax.step));
      // Window max over |x' - x| <= sqrt(t) with block left/right running maxima.
      std::vector<double> mag(u.values.size());
      for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(u.values[i]);
      std::size_t n = mag.size();
      int B = std::max(1, 2 * wnodes + 1);
      std::size_t nb = (n + static_cast<std::size_t>(B) - 1) / static_cast<std::size_t>(B);
      std::vector<double> left(n), right(n);
      for (std::size_t b = 0; b < nb; ++b) {
        std::size_t lo = b * static_cast<std::size_t>(B), hi = std::min(n, lo + static_cast<std::size_t>(B));
        double run = 0.0;
        for (std::size_t i = lo; i < hi; ++i) {
          run = std::max(run, mag[i]);
          left[i] = run;
        }
        run = 0.0;
        for (std::size_t i = hi; i-- > lo;) {
          run = std::max(run, mag[i]);
          right[i] = run;
        }
      }
      for (std::size_t i = 0; i < n; ++i) {
        std::size_t lo = (i >= static_cast<std::size_t>(wnodes)) ? i - static_cast<std::size_t>(wnodes) : 0;
        std::size_t hi = std::min(n - 1, i + static_cast<std::size_t>(wnodes));
        double m;
        if (lo / static_cast<std::size_t>(B) == hi / static_cast<std::size_t>(B)) {
          m = 0.0;
          for (std::size_t q = lo; q <= hi; ++q) m = std::max(m, mag[q]);
        } else {
          m = std::max(right[lo], left[hi]);
        }
        double cur = std::abs(M.values[i]);
        M.values[i] = std::max(cur, m);
      }
    } else {
      // Sampled offsets within the ball.
      double spacing = std::max(grid.axis(0).step, radius / 4.0);
      int koff = static_cast<int>(std::floor(radius / spacing));
      int stride = std::max(1, static_cast<int>(std::lround(spacing / grid.axis(0).step)));
      int m1 = grid.axis(1).points;
      int m0 = grid.axis(0).points;
      for (int i0 = 0; i0 < m0; ++i0)
        for (int i1 = 0; i1 < m1; ++i1) {
          double best = std::abs(M.values[static_cast<std::size_t>(i0 * m1 + i1)]);
          for (int d0 = -koff; d0 <= koff; ++d0)
            for (int d1 = -koff; d1 <= koff; ++d1) {
              double dx = d0 * spacing, dy = d1 * spacing;
              if (dx * dx + dy * dy > t) continue;
              int j0 = i0 + d0 * stride, j1 = i1 + d1 * stride;
              if (j0 < 0 || j0 >= m0 || j1 < 0 || j1 >= m1) continue;
              best = std::max(best, std::abs(u.values[static_cast<std::size_t>(j0 * m1 + j1)]));
            }
          M.values[static_cast<std::size_t>(i0 * m1 + i1)] = best;
        }
    }
  }
  return M;
}

double h1_maximal_norm(const Transformer& T, const GridFunction& f, double t_min, double t_max) {
  return maximal_function(T, f, t_min, t_max).norm_l1();
}

double h1_riesz_norm(const Transformer& T, const GridFunction& f) {
  double v = f.norm_l1();
  for (int a = 0; a < T.space()->dim(); ++a)
    v += apply_symbol(T, Symbol::riesz(T.space()->dim(), a), f).norm_l1();
  return v;
}

AtomValidation atom_validate(const GridFunction& a, std::span<const double> center, double radius,
                             double q) {
  if (!(q > 1.0)) throw std::invalid_argument("atom_validate: q must exceed 1");
  AtomValidation v;
  const Grid& grid = *a.grid;
  double sup = a.norm_sup();
  double outside = 0.0;
  std::vector<double> pt(static_cast<std::size_t>(grid.dim()));
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    grid.node(i, pt);
    double d2 = 0.0;
    for (std::size_t c = 0; c < pt.size(); ++c) d2 += (pt[c] - center[c]) * (pt[c] - center[c]);
    if (d2 > radius * radius) outside = std::max(outside, std::abs(a.values[i]));
  }
  v.support_ok = outside <= 1e-12 * std::max(sup, 1e-300);
  double wb = ball_volume(grid.config(), center, radius);
  double bound = std::isinf(q) ? 1.0 / wb : std::pow(wb, 1.0 / q - 1.0);
  v.size_ok = sup <= bound * (1.0 + 1e-12);
  v.integral_ok = std::abs(a.integral()) <= 1e-8 * std::sqrt(wb) * a.norm_l2();
  v.pass = v.support_ok && v.size_ok && v.integral_ok;
  return v;
}

namespace {

double carleson_sup(const Transformer& T, const BallFamily& balls,
                    const std::function<void(double, std::vector<GridFunction>&)>& fields_at,
                    int nodes_per_octave) {
  const Grid& grid = *T.space();
  // Shared dyadic-log t grid; per ball sum nodes with t <= r.
  double t_lo = 1.0 / 256.0, t_hi = 0.0;
  for (const auto& b : balls.balls) t_hi = std::max(t_hi, b.radius);
  if (t_hi <= t_lo) return 0.0;
  int octaves = static_cast<int>(std::ceil(std::log2(t_hi / t_lo)));
  int n = octaves * nodes_per_octave;
  double dl = std::log(2.0) / nodes_per_octave;
  std::vector<double> ts(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) ts[static_cast<std::size_t>(i)] = t_lo * std::exp((i + 0.5) * dl);

  // Cumulative |field|^2 integrals in t, stored per node.
  std::vector<std::vector<double>> cumulative;
  cumulative.reserve(ts.size());
  std::vector<double> run(grid.size(), 0.0);
  std::vector<GridFunction> comps;
  for (double t : ts) {
    comps.clear();
    fields_at(t, comps);
    for (const auto& g : comps)
      for (std::size_t i = 0; i < run.size(); ++i) run[i] += dl * std::norm(g.values[i]);
    cumulative.push_back(run);
  }

  double best = 0.0;
  const auto& w = grid.weights();
  for (const auto& b : balls.balls) {
    // Last t node below the radius.
    int last = -1;
    for (int i = 0; i < n; ++i)
      if (ts[static_cast<std::size_t>(i)] <= b.radius) last = i;
    if (last < 0) continue;
    const auto& cum = cumulative[static_cast<std::size_t>(last)];
    long double mass = 0.0L, val = 0.0L;
    for_ball_nodes(grid, b.center, b.radius, [&](std::size_t i) {
      mass += w[i];
      val += w[i] * cum[i];
    });
    if (mass > 0.0L) best = std::max(best, static_cast<double>(val) / static_cast<double>(mass));
  }
  return best;
}

}  // namespace

namespace {

// The box-energy functionals are invariant under constant shifts of b
// (mean-zero convolvers); removing the boundary-shell level keeps constants
// exactly at zero and spares the transform the non-decaying offset.
GridFunction shift_by_boundary_level(const GridFunction& b) {
  const Grid& grid = *b.grid;
  long double mass = 0.0L;
  cplx level{0.0, 0.0};
  const auto& w = grid.weights();
  for (std::size_t i = 0; i < b.values.size(); ++i) {
    bool shell = false;
    for (int a = 0; a < grid.dim(); ++a) {
      int j = grid.axis_index(i, a);
      if (j < grid.axis(a).points / 16 || j >= grid.axis(a).points - grid.axis(a).points / 16)
        shell = true;
    }
    if (!shell) continue;
    mass += w[i];
    level += w[i] * b.values[i];
  }
  GridFunction out = b;
  if (mass > 0.0L) {
    level /= static_cast<double>(mass);
    for (auto& v : out.values) v -= level;
  }
  return out;
}

}  // namespace

double carleson_ratio(const Transformer& T, const GridFunction& b_in,
                      const std::function<double(double)>& phi_hat, const BallFamily& balls,
                      int nodes_per_octave) {
  GridFunction b = shift_by_boundary_level(b_in);
  GridFunction Fb = T.forward(b);
  const auto& norms = T.freq_norms();
  auto fields = [&](double t, std::vector<GridFunction>& out) {
    GridFunction spec(T.freq());
    double top = 0.0;
    for (std::size_t i = 0; i < spec.values.size(); ++i) {
      spec.values[i] = Fb.values[i] * phi_hat(t * norms[i]);
      top = std::max(top, std::abs(spec.values[i]));
    }
    if (top < 1e-14 * (1.0 + b.norm_sup())) return;  // dead scale
    out.push_back(T.inverse(spec));
  };
  return carleson_sup(T, balls, fields, nodes_per_octave);
}

double poisson_carleson(const Transformer& T, const GridFunction& b_in, const BallFamily& balls,
                        int nodes_per_octave) {
  GridFunction b = shift_by_boundary_level(b_in);
  GridFunction Fb = T.forward(b);
  const auto& norms = T.freq_norms();
  GridPtr fq = T.freq();
  auto fields2 = [&](double t, std::vector<GridFunction>& out) {
    // t d/dt P_t: multiplier -t s e^{-t s}; t T_j P_t: multiplier i t xi_j e^{-t s}.
    GridFunction spec(fq);
    for (std::size_t i = 0; i < spec.values.size(); ++i)
      spec.values[i] = -t * norms[i] * std::exp(-t * norms[i]) * Fb.values[i];
    out.push_back(T.inverse(spec));
    for (int a = 0; a < fq->dim(); ++a) {
      GridFunction sp(fq);
      const Axis& ax = fq->axis(a);
      for (std::size_t i = 0; i < sp.values.size(); ++i) {
        double xi = ax.nodes[static_cast<std::size_t>(fq->axis_index(i, a))];
        sp.values[i] = cplx{0.0, t * xi} * std::exp(-t * norms[i]) * Fb.values[i];
      }
      out.push_back(T.inverse(sp));
    }
  };
  return carleson_sup(T, balls, fields2, nodes_per_octave);
}

AuxSequences aux_sequences(GridPtr grid, std::span<const AtomEntry> entries, int j_min, int j_max,
                           double N0, double base_scale) {
  AuxSequences aux;
  aux.j_min = j_min;
  aux.j_max = j_max;
  aux.N0 = N0;
  const WeightConfig& cfg = grid->config();
  std::vector<double> pt(static_cast<std::size_t>(grid->dim()));
  for (int j = j_min; j <= j_max; ++j) {
    GridFunction tau(grid);
    double side = base_scale * std::pow(2.0, -j);
    for (const auto& e : entries) {
      if (e.cube.level != j || e.lambda == 0.0) continue;
      for (std::size_t i = 0; i < tau.values.size(); ++i) {
        grid->node(i, pt);
        double d = orbit_distance(cfg, e.cube.center, pt);
        tau.values[i] += e.lambda * std::pow(1.0 + d / side, -N0);
      }
    }
    aux.tau.push_back(std::move(tau));
  }
  for (int j = j_min; j <= j_max; ++j) {
    GridFunction sig = aux.tau_at(j);
    if (j > j_min) {
      const GridFunction& prev = aux.sigma.back();
      for (std::size_t i = 0; i < sig.values.size(); ++i) sig.values[i] += 0.9 * prev.values[i];
    }
    aux.sigma.push_back(std::move(sig));
  }
  return aux;
}

double small_support_bound(const Transformer& T, std::span<const AtomEntry> entries, int level,
                           double support_radius, double bmo) {
  GridFunction sum(T.space());
  double side = 0.0;
  for (const auto& e : entries) {
    if (e.cube.level != level || e.a.values.empty()) continue;
    side = e.cube.side;
    for (std::size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += e.lambda * e.a.values[i];
  }
  if (side == 0.0 || bmo <= 0.0) return 0.0;
  double n = static_cast<double>(T.space()->dim());
  return sum.norm_sup() / (std::pow(support_radius / side, n) * bmo);
}

}  // namespace dunkl
