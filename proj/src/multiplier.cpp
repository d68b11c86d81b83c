#include "multiplier.hpp"

#include <algorithm>
#include <cmath>

#include "linalg.hpp"
#include "special.hpp"

namespace dunkl {

Symbol Symbol::constant(int dim, cplx value) {
  Symbol s;
  s.dim_ = dim;
  if (dim == 1) {
    s.values_ = {value, value};
  } else {
    int n = 256;
    s.values_.assign(static_cast<std::size_t>(n), value);
    s.angles_.resize(static_cast<std::size_t>(n / 2));
    for (int i = 0; i < n / 2; ++i) s.angles_[static_cast<std::size_t>(i)] = (i + 0.5) * 2.0 * kPi / n;
  }
  return s;
}

Symbol Symbol::from_function(int dim, const std::function<cplx(std::span<const double>)>& fn,
                             int directions) {
  Symbol s;
  s.dim_ = dim;
  if (dim == 1) {
    double plus[1] = {1.0}, minus[1] = {-1.0};
    s.values_ = {fn(plus), fn(minus)};
    return s;
  }
  if (dim != 2) throw std::invalid_argument("Symbol: only dimensions 1 and 2 are supported");
  if (directions % 2) ++directions;
  std::size_t pairs = static_cast<std::size_t>(directions / 2);
  s.values_.resize(static_cast<std::size_t>(directions));
  s.angles_.resize(pairs);
  for (std::size_t p = 0; p < pairs; ++p) {
    double ang = (static_cast<double>(p) + 0.5) * 2.0 * kPi / directions;
    s.angles_[p] = ang;
    double u[2] = {std::cos(ang), std::sin(ang)};
    double v[2] = {-u[0], -u[1]};
    s.values_[p] = fn(u);
    s.values_[p + pairs] = fn(v);
  }
  return s;
}

Symbol Symbol::riesz(int dim, int axis) {
  return from_function(dim, [axis](std::span<const double> u) {
    return cplx{0.0, -u[static_cast<std::size_t>(axis)]};
  });
}

void Symbol::pair_direction(std::size_t p, std::span<double> out) const {
  if (dim_ == 1) {
    out[0] = 1.0;
    return;
  }
  out[0] = std::cos(angles_[p]);
  out[1] = std::sin(angles_[p]);
}

void Symbol::set_pair(std::size_t p, cplx plus, cplx minus) {
  values_[p] = plus;
  values_[p + pair_count()] = minus;
}

cplx Symbol::eval_direction(std::span<const double> unit) const {
  if (dim_ == 1) return unit[0] >= 0.0 ? values_[0] : values_[1];
  double ang = std::atan2(unit[1], unit[0]);
  if (ang < 0.0) ang += 2.0 * kPi;
  std::size_t pairs = pair_count();
  double step = 2.0 * kPi / static_cast<double>(2 * pairs);
  double pos = ang / step - 0.5;
  double base = std::floor(pos);
  double frac = pos - base;
  auto val = [&](long idx) {
    long n = static_cast<long>(2 * pairs);
    long q = ((idx % n) + n) % n;
    // Table order: index i < pairs is +dir_i, i >= pairs is the antipode, so
    // angular order is angles then angles + pi.
    return values_[static_cast<std::size_t>(q)];
  };
  return (1.0 - frac) * val(static_cast<long>(base)) + frac * val(static_cast<long>(base) + 1);
}

cplx Symbol::eval_xi(std::span<const double> xi) const {
  double n2 = 0.0;
  for (std::size_t a = 0; a < xi.size(); ++a) n2 += xi[a] * xi[a];
  double n = std::sqrt(n2);
  if (n == 0.0) throw std::invalid_argument("Symbol::eval_xi: xi = 0");
  std::vector<double> u(xi.size());
  for (std::size_t a = 0; a < xi.size(); ++a) u[a] = xi[a] / n;
  return eval_direction(u);
}

Symbol Symbol::conjugate() const {
  Symbol s = *this;
  for (auto& v : s.values_) v = std::conj(v);
  return s;
}

Symbol Symbol::pointwise_product(const Symbol& o) const {
  if (o.values_.size() != values_.size()) throw std::invalid_argument("Symbol product: sample mismatch");
  Symbol s = *this;
  for (std::size_t i = 0; i < s.values_.size(); ++i) s.values_[i] *= o.values_[i];
  return s;
}

double Symbol::sup_abs() const {
  double m = 0.0;
  for (const auto& v : values_) m = std::max(m, std::abs(v));
  return m;
}

bool Symbol::is_real_kernel(double tol) const {
  std::size_t pairs = pair_count();
  for (std::size_t p = 0; p < pairs; ++p)
    if (std::abs(values_[p] - std::conj(values_[p + pairs])) > tol) return false;
  return true;
}

cplx Symbol::sphere_mean(const WeightConfig& cfg) const {
  std::size_t pairs = pair_count();
  if (dim_ == 1) return 0.5 * (values_[0] + values_[1]);  // w(+-1) equal
  // Angle quadrature with the weight w(omega).
  long double wr = 0.0L, wi = 0.0L, ww = 0.0L;
  std::vector<double> u(2);
  for (std::size_t i = 0; i < 2 * pairs; ++i) {
    double ang = (i < pairs) ? angles_[i] : angles_[i - pairs] + kPi;
    u[0] = std::cos(ang);
    u[1] = std::sin(ang);
    double w = weight_density(cfg, u);
    wr += w * values_[i].real();
    wi += w * values_[i].imag();
    ww += w;
  }
  return {static_cast<double>(wr / ww), static_cast<double>(wi / ww)};
}

GridFunction apply_symbol_spectral(const Transformer& T, const Symbol& s, GridFunction spectrum) {
  GridPtr fq = T.freq();
  std::vector<double> pt(static_cast<std::size_t>(fq->dim()));
  for (std::size_t i = 0; i < spectrum.values.size(); ++i) {
    fq->node(i, pt);
    spectrum.values[i] *= s.eval_xi(pt);
  }
  return spectrum;
}

GridFunction apply_symbol(const Transformer& T, const Symbol& s, const GridFunction& f) {
  return T.inverse(apply_symbol_spectral(T, s, T.forward(f)));
}

Symbol adjoint(const Symbol& s) { return s.conjugate(); }

MultiplierSystem::MultiplierSystem(std::vector<Symbol> symbols, std::vector<std::string> names)
    : symbols_(std::move(symbols)), names_(std::move(names)) {
  if (symbols_.empty()) throw std::invalid_argument("MultiplierSystem: empty system");
  while (names_.size() < symbols_.size()) names_.push_back("s" + std::to_string(names_.size()));
  cached_min_sv_ = check_triangle().min_singular_value;
}

TriangleCertificate MultiplierSystem::check_triangle(double threshold) const {
  TriangleCertificate cert;
  cert.min_singular_value = 1e300;
  std::size_t pairs = symbols_.front().pair_count();
  std::vector<double> dir(static_cast<std::size_t>(dim()));
  for (std::size_t p = 0; p < pairs; ++p) {
    double a = 0.0, b = 0.0;
    cplx c{0.0, 0.0};
    for (const auto& s : symbols_) {
      cplx up = s.value_plus(p), dn = s.value_minus(p);
      a += std::norm(up);
      b += std::norm(dn);
      c += up * std::conj(dn);
    }
    double disc = std::sqrt(std::max(0.0, (a - b) * (a - b) + 4.0 * std::norm(c)));
    double lam_min = 0.5 * ((a + b) - disc);
    double smin = std::sqrt(std::max(0.0, lam_min));
    if (smin < cert.min_singular_value) {
      cert.min_singular_value = smin;
      symbols_.front().pair_direction(p, std::span<double>(dir));
      cert.witness.assign(dir.begin(), dir.end());
    }
  }
  cert.pass = cert.min_singular_value > threshold;
  return cert;
}

MultiplierSystem MultiplierSystem::riesz_system(int dim) {
  std::vector<Symbol> sys{Symbol::constant(dim, {1.0, 0.0})};
  std::vector<std::string> names{"identity"};
  for (int a = 0; a < dim; ++a) {
    sys.push_back(Symbol::riesz(dim, a));
    names.push_back("riesz" + std::to_string(a + 1));
  }
  return MultiplierSystem(std::move(sys), std::move(names));
}

MultiplierSystem MultiplierSystem::hilbert_pair() {
  std::vector<Symbol> sys{Symbol::constant(1, {1.0, 0.0}), Symbol::riesz(1, 0)};
  return MultiplierSystem(std::move(sys), {"identity", "hilbert"});
}

UchiyamaResult uchiyama_theta(const MultiplierSystem& sys, std::span<const cplx> nu, double pivot_tol) {
  std::size_t d = sys.size();
  if (nu.size() != d) throw std::invalid_argument("uchiyama_theta: nu size mismatch");
  double nn = 0.0;
  for (auto v : nu) nn += std::norm(v);
  if (std::abs(nn - 1.0) > 1e-10) throw std::invalid_argument("uchiyama_theta: nu must be a unit vector");

  UchiyamaResult res;
  res.min_conditioning = 1e300;
  std::size_t pairs = sys.symbol(0).pair_count();
  // Output symbols share the system's sphere table, filled pair by pair.
  res.thetas.clear();
  for (std::size_t j = 0; j < d; ++j) {
    Symbol z = sys.symbol(0);
    for (std::size_t p = 0; p < z.pair_count(); ++p) z.set_pair(p, {0.0, 0.0}, {0.0, 0.0});
    res.thetas.push_back(std::move(z));
  }

  int n = static_cast<int>(4 * d);
  std::vector<double> A(static_cast<std::size_t>(6 * n));
  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t p = 0; p < pairs; ++p) {
    std::fill(A.begin(), A.end(), 0.0);
    // Unknown layout: x = (Re T_j^+, Im T_j^+)_j then (Re T_j^-, Im T_j^-)_j.
    auto idxp = [&](std::size_t j, int reim) { return static_cast<int>(2 * j) + reim; };
    auto idxm = [&](std::size_t j, int reim) { return static_cast<int>(2 * (j + d)) + reim; };
    auto put = [&](int row, int col, double v) { A[static_cast<std::size_t>(row * n + col)] = v; };
    for (std::size_t j = 0; j < d; ++j) {
      cplx tp = sys.symbol(j).value_plus(p);
      cplx tm = sys.symbol(j).value_minus(p);
      // Row 0/1: sum conj(theta+) Theta+ = 1.
      put(0, idxp(j, 0), tp.real());
      put(0, idxp(j, 1), tp.imag());
      put(1, idxp(j, 0), -tp.imag());
      put(1, idxp(j, 1), tp.real());
      // Row 2/3: sum conj(theta-) Theta- = 1.
      put(2, idxm(j, 0), tm.real());
      put(2, idxm(j, 1), tm.imag());
      put(3, idxm(j, 0), -tm.imag());
      put(3, idxm(j, 1), tm.real());
      // Row 4: Re sum conj(nu)(Theta+ + Theta-) = 0.
      put(4, idxp(j, 0), nu[j].real());
      put(4, idxp(j, 1), nu[j].imag());
      put(4, idxm(j, 0), nu[j].real());
      put(4, idxm(j, 1), nu[j].imag());
      // Row 5: Im sum conj(nu)(Theta+ - Theta-) = 0.
      put(5, idxp(j, 0), -nu[j].imag());
      put(5, idxp(j, 1), nu[j].real());
      put(5, idxm(j, 0), nu[j].imag());
      put(5, idxm(j, 1), -nu[j].real());
    }
    // Minimum-norm solve via the 6x6 normal system A A^T y = b, x = A^T y.
    std::vector<double> G(36, 0.0);
    for (int r = 0; r < 6; ++r)
      for (int c = 0; c < 6; ++c) {
        double s = 0.0;
        for (int q = 0; q < n; ++q)
          s += A[static_cast<std::size_t>(r * n + q)] * A[static_cast<std::size_t>(c * n + q)];
        G[static_cast<std::size_t>(r * 6 + c)] = s;
      }
    std::vector<double> y{1.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    double piv;
    try {
      piv = solve_dense(G, y, 6);
    } catch (const std::exception&) {
      res.feasible = false;
      std::vector<double> w(static_cast<std::size_t>(sys.dim()));
      sys.symbol(0).pair_direction(p, w);
      res.witness = w;
      return res;
    }
    res.min_conditioning = std::min(res.min_conditioning, piv);
    if (piv < pivot_tol) {
      res.feasible = false;
      std::vector<double> w(static_cast<std::size_t>(sys.dim()));
      sys.symbol(0).pair_direction(p, w);
      res.witness = w;
      return res;
    }
    for (int q = 0; q < n; ++q) {
      double s = 0.0;
      for (int r = 0; r < 6; ++r) s += A[static_cast<std::size_t>(r * n + q)] * y[static_cast<std::size_t>(r)];
      x[static_cast<std::size_t>(q)] = s;
    }
    // Residual of the six constraints.
    std::vector<double> b{1.0, 0.0, 1.0, 0.0, 0.0, 0.0};
    for (int r = 0; r < 6; ++r) {
      double s = 0.0;
      for (int q = 0; q < n; ++q) s += A[static_cast<std::size_t>(r * n + q)] * x[static_cast<std::size_t>(q)];
      res.max_residual = std::max(res.max_residual, std::abs(s - b[static_cast<std::size_t>(r)]));
    }
    for (std::size_t j = 0; j < d; ++j)
      res.thetas[j].set_pair(p, {x[static_cast<std::size_t>(idxp(j, 0))], x[static_cast<std::size_t>(idxp(j, 1))]},
                             {x[static_cast<std::size_t>(idxm(j, 0))], x[static_cast<std::size_t>(idxm(j, 1))]});
  }
  return res;
}

double uchiyama_modulus(const UchiyamaResult& r) {
  if (r.thetas.empty() || r.thetas.front().dim() == 1) return 0.0;
  double m = 0.0;
  for (const auto& th : r.thetas) {
    std::size_t pairs = th.pair_count();
    for (std::size_t p = 0; p + 1 < pairs; ++p) {
      m = std::max(m, std::abs(th.value_plus(p + 1) - th.value_plus(p)));
      m = std::max(m, std::abs(th.value_minus(p + 1) - th.value_minus(p)));
    }
  }
  return m;
}

KernelPieces::KernelPieces(const WeightConfig& cfg, Symbol s) : full_(std::move(s)) {
  c1_ = full_.sphere_mean(cfg);
  reduced_ = full_;
  std::size_t pairs = reduced_.pair_count();
  for (std::size_t p = 0; p < pairs; ++p)
    reduced_.set_pair(p, reduced_.value_plus(p) - c1_, reduced_.value_minus(p) - c1_);
}

double KernelPieces::lp_bump(double r) const {
  return smooth_step_down(r, 0.5, 1.0) - smooth_step_down(2.0 * r, 0.5, 1.0);
}

std::pair<int, int> KernelPieces::piece_range(const Transformer& T) const {
  // Piece j carries the spectral annulus 2^{-j} [1/4, 1] (spatial scale 2^j).
  double xi_max = T.freq()->half_width();
  double xi_min = 2.0 * T.freq()->axis(0).step;
  int lo = -static_cast<int>(std::floor(std::log2(xi_max)));
  int hi = static_cast<int>(std::floor(-std::log2(4.0 * xi_min)));
  return {lo, hi};
}

GridFunction KernelPieces::piece(const Transformer& T, int j) const {
  auto [lo, hi] = piece_range(T);
  if (j < lo || j > hi) throw std::out_of_range("KernelPieces::piece: scale outside grid resolution");
  GridFunction spec(T.freq());
  GridPtr fq = T.freq();
  std::vector<double> pt(static_cast<std::size_t>(fq->dim()));
  double scale = std::pow(2.0, j);
  const auto& norms = T.freq_norms();
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    double b = lp_bump(scale * norms[i]);
    if (b == 0.0) continue;
    fq->node(i, pt);
    spec.values[i] = reduced_.eval_xi(pt) * b;
  }
  return T.inverse(spec);
}

Symbol KernelPieces::reconstruct_symbol(int J) const {
  Symbol out = reduced_;
  std::size_t pairs = out.pair_count();
  double cover = 0.0;
  for (int j = -J; j <= J; ++j) cover += lp_bump(std::pow(2.0, -j));
  for (std::size_t p = 0; p < pairs; ++p)
    out.set_pair(p, c1_ + cover * reduced_.value_plus(p), c1_ + cover * reduced_.value_minus(p));
  return out;
}

KernelBoundReport kernel_bound_report(const Transformer& T, const KernelPieces& kp,
                                      std::span<const double> xs, std::span<const double> ys,
                                      int j_lo, int j_hi) {
  const WeightConfig& cfg = T.config();
  KernelBoundReport rep;
  auto [lo, hi] = kp.piece_range(T);
  j_lo = std::max(j_lo, lo);
  j_hi = std::min(j_hi, hi);
  // S(x, y) = sum_j tau_x S_j(-y), via translation of each piece.
  for (double x : xs) {
    double px[1] = {x};
    GridFunction total(T.space());
    for (int j = j_lo; j <= j_hi; ++j) {
      GridFunction sj = kp.piece(T, j);
      GridFunction tx = T.translate(sj, px);
      total += tx;
    }
    for (double y : ys) {
      double py[1] = {y};
      // Nearest node to -y.
      double target = -y;
      const Axis& ax = T.space()->axis(0);
      double pos = (target + ax.half_width) / ax.step - 0.5;
      long idx = std::lround(pos);
      if (idx < 0 || idx >= ax.points) continue;
      double d = orbit_distance(cfg, px, py);
      if (d < 4.0 * std::pow(2.0, j_lo)) continue;  // avoid the unresolved core
      double val = std::abs(total.values[static_cast<std::size_t>(idx)]);
      double shape = (d / std::max(1e-12, std::abs(x - y))) / ball_volume(cfg, px, d);
      rep.fitted_C = std::max(rep.fitted_C, val / shape);
      ++rep.samples;
    }
  }
  return rep;
}

ConvBoundReport conv_bound_report(const Transformer& T, const std::function<double(double)>& psi_hat,
                                  const std::function<double(double)>& phi_hat, int m, double s,
                                  double t, std::span<const double> x_samples) {
  if (!(s <= t && s > 0.0)) throw std::invalid_argument("conv_bound_report: need 0 < s <= t");
  const WeightConfig& cfg = T.config();
  double ck = cfg.normalization;
  GridFunction spec(T.freq());
  const auto& norms = T.freq_norms();
  for (std::size_t i = 0; i < spec.values.size(); ++i)
    spec.values[i] = psi_hat(t * norms[i]) * phi_hat(s * norms[i]) / ck;
  GridFunction g = T.inverse(spec);

  ConvBoundReport rep;
  double peak = g.norm_sup();
  for (double x : x_samples) {
    double px[1] = {x};
    GridFunction tx = T.translate(g, px);
    for (std::size_t i = 0; i < tx.values.size(); ++i) {
      double y = -T.space()->node1(i);
      double py[1] = {y};
      double d = orbit_distance(cfg, px, py);
      double val = std::abs(tx.values[i]);
      if (d > 2.0 * t * 1.05) {
        rep.cutoff_leak = std::max(rep.cutoff_leak, val / peak);
      } else {
        double shape = 1.0 / ball_volume(cfg, px, t) / (1.0 + std::abs(x - y) / t);
        rep.fitted_a = std::max(rep.fitted_a, val / (shape * (s / t)));
        rep.fitted_b = std::max(rep.fitted_b, val / (shape * std::pow(s / t, m)));
      }
      ++rep.samples;
    }
  }
  return rep;
}

}  // namespace dunkl
