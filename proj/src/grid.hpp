#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "common.hpp"
#include "weight.hpp"

namespace dunkl {

// One coordinate axis of a tensor quadrature grid. Nodes are uniform and
// half-offset (0 is a cell edge, never a node). Weights are midpoint weights
// h * w(x_j) with two folded-in corrections:
//   - a power-singularity (Navot) stencil at 0 built from Hurwitz zeta values,
//   - Euler-Maclaurin edge stencils at +-L for non-decaying integrands.
// With these, sums of w_j f(x_j) integrate smooth f against dw to high order.
struct Axis {
  int points = 0;
  double half_width = 0.0;
  double step = 0.0;
  double multiplicity = 0.0;
  std::vector<double> nodes;
  std::vector<double> weights;      // corrected: for integrals of smooth data
  std::vector<double> raw_weights;  // plain midpoint h w(x): for the transform
};

class Grid {
 public:
  Grid(const WeightConfig& cfg, int points_per_axis, double half_width);

  const WeightConfig& config() const { return cfg_; }
  int dim() const { return cfg_.dim; }
  const Axis& axis(int a) const { return axes_[static_cast<std::size_t>(a)]; }
  std::size_t size() const { return size_; }
  double half_width() const { return axes_[0].half_width; }
  int points_per_axis() const { return axes_[0].points; }

  // Flat row-major indexing; axis 0 is the slowest.
  void node(std::size_t flat, std::span<double> out) const;
  double node1(std::size_t flat) const { return axes_[0].nodes[flat]; }  // 1-D shortcut
  std::size_t flat_index(std::span<const int> per_axis) const;
  int axis_index(std::size_t flat, int a) const;
  std::size_t reflect_index(std::size_t flat, int a) const;

  double weight(std::size_t flat) const { return flat_weights_[flat]; }
  const std::vector<double>& weights() const { return flat_weights_; }

  // Total quadrature weight (= the corrected approximation of w([-L, L]^N)).
  double total_weight() const;

  // A geometrically scaled view: nodes * factor, measure scaled by factor^N.
  std::shared_ptr<const Grid> scaled(double factor) const;

 private:
  Grid() = default;
  WeightConfig cfg_;
  std::vector<Axis> axes_;
  std::size_t size_ = 0;
  std::vector<double> flat_weights_;
  void rebuild_flat_weights();
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr make_grid(const WeightConfig& cfg, int points_per_axis, double half_width);

// Complex-valued samples on a grid; the universal function carrier.
struct GridFunction {
  GridPtr grid;
  std::vector<cplx> values;

  GridFunction() = default;
  explicit GridFunction(GridPtr g) : grid(std::move(g)), values(grid->size(), cplx{0.0, 0.0}) {}
  GridFunction(GridPtr g, std::vector<cplx> v);

  std::size_t size() const { return values.size(); }

  cplx integral() const;
  double norm_l2() const;
  double norm_l1() const;
  double norm_sup() const;

  GridFunction real_part() const;
  GridFunction imag_part() const;

  GridFunction& operator+=(const GridFunction& o);
  GridFunction& operator-=(const GridFunction& o);
  GridFunction& operator*=(double s);
  GridFunction& operator*=(cplx s);
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double s, GridFunction a);

// Pointwise product, L2 inner product <f, g> = int f conj(g) dw.
GridFunction pointwise_mul(const GridFunction& a, const GridFunction& b);
cplx inner_product(const GridFunction& a, const GridFunction& b);

// Sampling helper: fill from a callable point -> cplx.
GridFunction sample(GridPtr grid, const std::function<cplx(std::span<const double>)>& fn);

// CSV (columns: coordinates..., re, im) and binary ("DUNKLGF1" header) dumps.
void write_csv(const GridFunction& f, const std::string& path);
GridFunction read_csv(GridPtr grid, const std::string& path);
void write_binary(const GridFunction& f, const std::string& path);
GridFunction read_binary(GridPtr grid, const std::string& path);

}  // namespace dunkl
