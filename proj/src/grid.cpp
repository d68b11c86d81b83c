#include "grid.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "linalg.hpp"
#include "special.hpp"

namespace dunkl {

namespace {

template <typename F>
double pairwise_eval(std::size_t lo, std::size_t hi, const F& f) {
  if (hi - lo <= 16) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_eval(lo, mid, f) + pairwise_eval(mid, hi, f);
}

template <typename F>
cplx pairwise_eval_c(std::size_t lo, std::size_t hi, const F& f) {
  if (hi - lo <= 16) {
    cplx s{0.0, 0.0};
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    return s;
  }
  std::size_t mid = lo + (hi - lo) / 2;
  return pairwise_eval_c(lo, mid, f) + pairwise_eval_c(mid, hi, f);
}

Axis build_axis(double k, int points, double half_width) {
  if (points < 32 || (points % 2) != 0)
    throw ConfigError("grid points per axis must be even and >= 32", "grid.points");
  if (!(half_width > 0.0)) throw ConfigError("grid half_width must be positive", "grid.half_width");
  Axis ax;
  ax.points = points;
  ax.half_width = half_width;
  ax.step = 2.0 * half_width / points;
  ax.multiplicity = k;
  ax.nodes.resize(static_cast<std::size_t>(points));
  ax.weights.resize(static_cast<std::size_t>(points));
  double h = ax.step;
  for (int j = 0; j < points; ++j) {
    double x = -half_width + (j + 0.5) * h;
    ax.nodes[static_cast<std::size_t>(j)] = x;
    ax.weights[static_cast<std::size_t>(j)] = h * std::pow(std::sqrt(2.0) * std::abs(x), 2.0 * k);
  }
  ax.raw_weights = ax.weights;

  // Origin stencil: corrects the |x|^{2k} kink of the measure. The half-line
  // identity  h Sum s((j+1/2)h) (j+1/2)^{2k}h^{2k} = int x^{2k} s
  //           + Sum_r zeta(-2k-r, 1/2) h^{2k+r+1} s^(r)(0)/r!
  // gives, after mirror-symmetrizing (odd r cancels), a correction built from
  // the even-part fit of the integrand at the four innermost node pairs.
  {
    std::vector<double> V(16);
    for (int m = 0; m < 4; ++m) {
      double u = std::pow((m + 0.5) * h, 2.0);
      double p = 1.0;
      for (int r = 0; r < 4; ++r) {
        V[static_cast<std::size_t>(m * 4 + r)] = p;
        p *= u;
      }
    }
    std::vector<double> Vinv = invert_dense(V, 4);
    double pref = -2.0 * std::pow(2.0, k);  // (sqrt 2)^{2k} = 2^k
    for (int m = 0; m < 4; ++m) {
      double dq = 0.0;
      for (int r = 0; r < 4; ++r) {
        double zh = hurwitz_zeta_half(-2.0 * k - 2.0 * r);
        if (zh == 0.0) continue;
        dq += pref * zh * std::pow(h, 2.0 * k + 2.0 * r + 1.0) * Vinv[static_cast<std::size_t>(r * 4 + m)];
      }
      int jp = points / 2 + m;
      int jm = points / 2 - 1 - m;
      ax.weights[static_cast<std::size_t>(jp)] += 0.5 * dq;
      ax.weights[static_cast<std::size_t>(jm)] += 0.5 * dq;
    }
  }

  // Edge stencils: Euler-Maclaurin h^2 and h^4 terms at +-L from a one-sided
  // cubic fit of the full integrand g = f w. Only matters for integrands that
  // do not decay at the boundary (e.g. the total-weight identity).
  {
    std::vector<double> V(16);
    for (int m = 0; m < 4; ++m) {
      double xi = m + 0.5;
      double p = 1.0;
      for (int r = 0; r < 4; ++r) {
        V[static_cast<std::size_t>(m * 4 + r)] = p;
        p *= xi;
      }
    }
    std::vector<double> Vinv = invert_dense(V, 4);
    for (int m = 0; m < 4; ++m) {
      double coef = -(h / 24.0) * Vinv[static_cast<std::size_t>(1 * 4 + m)] +
                    (7.0 * h / 960.0) * Vinv[static_cast<std::size_t>(3 * 4 + m)];
      int jr = points - 1 - m;
      int jl = m;
      ax.weights[static_cast<std::size_t>(jr)] +=
          coef * std::pow(std::sqrt(2.0) * std::abs(ax.nodes[static_cast<std::size_t>(jr)]), 2.0 * k);
      ax.weights[static_cast<std::size_t>(jl)] +=
          coef * std::pow(std::sqrt(2.0) * std::abs(ax.nodes[static_cast<std::size_t>(jl)]), 2.0 * k);
    }
  }

  for (double w : ax.weights)
    if (!(w > 0.0)) throw ConvergenceError("grid weights lost positivity; refine the grid");
  return ax;
}

}  // namespace

Grid::Grid(const WeightConfig& cfg, int points_per_axis, double half_width) : cfg_(cfg) {
  for (int a = 0; a < cfg.dim; ++a)
    axes_.push_back(build_axis(cfg.multiplicity(a), points_per_axis, half_width));
  rebuild_flat_weights();
}

void Grid::rebuild_flat_weights() {
  size_ = 1;
  for (auto& ax : axes_) size_ *= static_cast<std::size_t>(ax.points);
  flat_weights_.assign(size_, 1.0);
  std::size_t stride = size_;
  for (auto& ax : axes_) {
    stride /= static_cast<std::size_t>(ax.points);
    for (std::size_t i = 0; i < size_; ++i) {
      std::size_t idx = (i / stride) % static_cast<std::size_t>(ax.points);
      flat_weights_[i] *= ax.weights[idx];
    }
  }
}

void Grid::node(std::size_t flat, std::span<double> out) const {
  std::size_t stride = size_;
  for (std::size_t a = 0; a < axes_.size(); ++a) {
    stride /= static_cast<std::size_t>(axes_[a].points);
    std::size_t idx = (flat / stride) % static_cast<std::size_t>(axes_[a].points);
    out[a] = axes_[a].nodes[idx];
  }
}

std::size_t Grid::flat_index(std::span<const int> per_axis) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < axes_.size(); ++a)
    flat = flat * static_cast<std::size_t>(axes_[a].points) + static_cast<std::size_t>(per_axis[a]);
  return flat;
}

int Grid::axis_index(std::size_t flat, int a) const {
  std::size_t stride = size_;
  for (int b = 0; b <= a; ++b) stride /= static_cast<std::size_t>(axes_[static_cast<std::size_t>(b)].points);
  return static_cast<int>((flat / stride) % static_cast<std::size_t>(axes_[static_cast<std::size_t>(a)].points));
}

std::size_t Grid::reflect_index(std::size_t flat, int a) const {
  std::size_t stride = size_;
  for (int b = 0; b <= a; ++b) stride /= static_cast<std::size_t>(axes_[static_cast<std::size_t>(b)].points);
  std::size_t m = static_cast<std::size_t>(axes_[static_cast<std::size_t>(a)].points);
  std::size_t idx = (flat / stride) % m;
  std::size_t mirrored = m - 1 - idx;
  return flat + (mirrored - idx) * stride;
}

double Grid::total_weight() const {
  return pairwise_eval(0, size_, [this](std::size_t i) { return flat_weights_[i]; });
}

std::shared_ptr<const Grid> Grid::scaled(double factor) const {
  if (!(factor > 0.0)) throw std::invalid_argument("Grid::scaled: factor must be positive");
  auto g = std::shared_ptr<Grid>(new Grid());
  g->cfg_ = cfg_;
  g->axes_ = axes_;
  for (auto& ax : g->axes_) {
    double wscale = std::pow(factor, 1.0 + 2.0 * ax.multiplicity);
    ax.half_width *= factor;
    ax.step *= factor;
    for (auto& x : ax.nodes) x *= factor;
    for (auto& w : ax.weights) w *= wscale;
    for (auto& w : ax.raw_weights) w *= wscale;
  }
  g->rebuild_flat_weights();
  return g;
}

GridPtr make_grid(const WeightConfig& cfg, int points_per_axis, double half_width) {
  return std::make_shared<const Grid>(cfg, points_per_axis, half_width);
}

GridFunction::GridFunction(GridPtr g, std::vector<cplx> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != grid->size()) throw std::invalid_argument("GridFunction: length mismatch");
}

cplx GridFunction::integral() const {
  const auto& w = grid->weights();
  return pairwise_eval_c(0, values.size(), [&](std::size_t i) { return w[i] * values[i]; });
}

double GridFunction::norm_l2() const {
  const auto& w = grid->weights();
  double s = pairwise_eval(0, values.size(), [&](std::size_t i) { return w[i] * std::norm(values[i]); });
  return std::sqrt(std::max(0.0, s));
}

double GridFunction::norm_l1() const {
  const auto& w = grid->weights();
  return pairwise_eval(0, values.size(), [&](std::size_t i) { return w[i] * std::abs(values[i]); });
}

double GridFunction::norm_sup() const {
  double m = 0.0;
  for (const auto& v : values) m = std::max(m, std::abs(v));
  return m;
}

GridFunction GridFunction::real_part() const {
  GridFunction g(grid);
  for (std::size_t i = 0; i < values.size(); ++i) g.values[i] = values[i].real();
  return g;
}

GridFunction GridFunction::imag_part() const {
  GridFunction g(grid);
  for (std::size_t i = 0; i < values.size(); ++i) g.values[i] = values[i].imag();
  return g;
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
  if (o.values.size() != values.size()) throw std::invalid_argument("GridFunction: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
  return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
  if (o.values.size() != values.size()) throw std::invalid_argument("GridFunction: size mismatch");
  for (std::size_t i = 0; i < values.size(); ++i) values[i] -= o.values[i];
  return *this;
}

GridFunction& GridFunction::operator*=(double s) {
  for (auto& v : values) v *= s;
  return *this;
}

GridFunction& GridFunction::operator*=(cplx s) {
  for (auto& v : values) v *= s;
  return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double s, GridFunction a) { return a *= s; }

GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b) {
  GridFunction g(a.grid);
  for (std::size_t i = 0; i < g.values.size(); ++i) g.values[i] = a.values[i] * b.values[i];
  return g;
}

cplx inner_product(const GridFunction& a, const GridFunction& b) {
  const auto& w = a.grid->weights();
  return pairwise_eval_c(0, a.values.size(),
                         [&](std::size_t i) { return w[i] * a.values[i] * std::conj(b.values[i]); });
}

GridFunction sample(GridPtr grid, const std::function<cplx(std::span<const double>)>& fn) {
  GridFunction f(grid);
  std::vector<double> pt(static_cast<std::size_t>(grid->dim()));
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    grid->node(i, pt);
    f.values[i] = fn(pt);
  }
  return f;
}

void write_csv(const GridFunction& f, const std::string& path) {
  std::FILE* fp = std::fopen(path.c_str(), "w");
  if (!fp) throw std::runtime_error("write_csv: cannot open " + path);
  int dim = f.grid->dim();
  for (int a = 0; a < dim; ++a) std::fprintf(fp, "x%d,", a);
  std::fprintf(fp, "re,im\n");
  std::vector<double> pt(static_cast<std::size_t>(dim));
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    f.grid->node(i, pt);
    for (int a = 0; a < dim; ++a) std::fprintf(fp, "%.17g,", pt[static_cast<std::size_t>(a)]);
    std::fprintf(fp, "%.17g,%.17g\n", f.values[i].real(), f.values[i].imag());
  }
  std::fclose(fp);
}

GridFunction read_csv(GridPtr grid, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv: cannot open " + path);
  std::string line;
  std::getline(in, line);  // header
  GridFunction f(grid);
  int dim = grid->dim();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (!std::getline(in, line)) throw std::runtime_error("read_csv: truncated file " + path);
    const char* p = line.c_str();
    char* end = nullptr;
    double re = 0.0, im = 0.0;
    for (int c = 0; c < dim + 2; ++c) {
      double v = std::strtod(p, &end);
      if (c == dim) re = v;
      if (c == dim + 1) im = v;
      p = (*end == ',') ? end + 1 : end;
    }
    f.values[i] = {re, im};
  }
  return f;
}

namespace {
constexpr char kMagic[8] = {'D', 'U', 'N', 'K', 'L', 'G', 'F', '1'};
}

void write_binary(const GridFunction& f, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_binary: cannot open " + path);
  out.write(kMagic, 8);
  std::int32_t dim = f.grid->dim();
  std::int32_t pts = f.grid->points_per_axis();
  double L = f.grid->half_width();
  out.write(reinterpret_cast<const char*>(&dim), 4);
  out.write(reinterpret_cast<const char*>(&pts), 4);
  out.write(reinterpret_cast<const char*>(&L), 8);
  out.write(reinterpret_cast<const char*>(f.values.data()),
            static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
}

GridFunction read_binary(GridPtr grid, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_binary: cannot open " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::memcmp(magic, kMagic, 8) != 0) throw std::runtime_error("read_binary: bad magic in " + path);
  std::int32_t dim = 0, pts = 0;
  double L = 0.0;
  in.read(reinterpret_cast<char*>(&dim), 4);
  in.read(reinterpret_cast<char*>(&pts), 4);
  in.read(reinterpret_cast<char*>(&L), 8);
  if (dim != grid->dim() || pts != grid->points_per_axis() || L != grid->half_width())
    throw std::runtime_error("read_binary: grid shape mismatch in " + path);
  GridFunction f(grid);
  in.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
  if (!in) throw std::runtime_error("read_binary: truncated payload in " + path);
  return f;
}

}  // namespace dunkl
