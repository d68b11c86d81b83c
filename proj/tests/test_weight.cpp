#include <doctest.h>

#include <cmath>

#include "special.hpp"
#include "weight.hpp"

using namespace dunkl;

namespace {
WeightConfig cfg1(double k) {
  double ks[1] = {k};
  return WeightConfig::create(1, ks);
}
}  // namespace

TEST_CASE("weight density point values") {
  double x3[1] = {3.0}, x2[1] = {2.0};
  CHECK(weight_density(cfg1(0.0), x3) == doctest::Approx(1.0));
  CHECK(weight_density(cfg1(0.5), x2) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-15));
  double ks2[2] = {1.0, 0.0};
  auto c2 = WeightConfig::create(2, ks2);
  double p[2] = {1.0, 5.0};
  // prod over the root pair +-sqrt(2) e_1: |<a, x>|^k twice = (sqrt(2)|x_1|)^{2k}.
  CHECK(weight_density(c2, p) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c2.homogeneous_dim == doctest::Approx(4.0));
}

TEST_CASE("normalization against the Gamma closed form") {
  CHECK(cfg1(0.0).normalization == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-14));
  // Derived oracle 2^k 2^{k+1/2} Gamma(k+1/2).
  CHECK(cfg1(0.5).normalization == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  CHECK(cfg1(1.5).normalization ==
        doctest::Approx(std::pow(2.0, 3.5) * std::tgamma(2.0)).epsilon(1e-14));
  double ks2[2] = {0.0, 0.0};
  CHECK(WeightConfig::create(2, ks2).normalization == doctest::Approx(2.0 * kPi).epsilon(1e-13));

  auto c = cfg1(0.5);
  CHECK(normalization_ck_quadrature(c) == doctest::Approx(c.normalization).epsilon(1e-9));
  CHECK_THROWS_AS((void)normalization_ck_quadrature(c, 8), ConvergenceError);
}

TEST_CASE("ball volumes") {
  auto c0 = cfg1(0.0);
  double x[1] = {1.7};
  CHECK(ball_volume(c0, x, 2.5) == doctest::Approx(5.0).epsilon(1e-14));
  auto ch = cfg1(0.5);
  double z[1] = {0.0};
  CHECK(ball_volume(ch, z, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  // Scaling w(B(2x, 2r)) = 2^N w(B(x, r)) at x = 0.
  double nb = ch.homogeneous_dim;
  CHECK(ball_volume(ch, z, 2.0) / ball_volume(ch, z, 1.0) ==
        doctest::Approx(std::pow(2.0, nb)).epsilon(1e-12));
  // Random scaling identity, including off-center balls.
  Rng rng(11);
  for (int it = 0; it < 20; ++it) {
    double xc[1] = {rng.uniform(-3.0, 3.0)};
    double r = rng.uniform(0.2, 2.0);
    double t = rng.uniform(0.5, 3.0);
    double xt[1] = {t * xc[0]};
    double lhs = ball_volume(ch, xt, t * r);
    double rhs = std::pow(t, nb) * ball_volume(ch, xc, r);
    CHECK(std::abs(lhs - rhs) / lhs < 1e-6);
  }
  // 2-D slice quadrature against the scaling law.
  double ks2[2] = {1.0, 0.5};
  auto c2 = WeightConfig::create(2, ks2);
  double origin[2] = {0.0, 0.0};
  double v1 = ball_volume(c2, origin, 1.0), v2 = ball_volume(c2, origin, 2.0);
  CHECK(v2 / v1 == doctest::Approx(std::pow(2.0, c2.homogeneous_dim)).epsilon(1e-8));
}

TEST_CASE("growth sandwich has a finite fitted constant") {
  auto c = cfg1(1.5);
  double nb = c.homogeneous_dim;
  Rng rng(5);
  double fit = 0.0;
  for (int it = 0; it < 40; ++it) {
    double x[1] = {rng.uniform(-4.0, 4.0)};
    double r1 = rng.uniform(0.05, 1.0);
    double r2 = r1 * rng.uniform(1.0, 20.0);
    double ratio = ball_volume(c, x, r2) / ball_volume(c, x, r1);
    fit = std::max(fit, std::pow(r2 / r1, 1.0) / ratio);
    fit = std::max(fit, ratio / std::pow(r2 / r1, nb));
  }
  CHECK(fit < 50.0);
  CHECK(fit > 0.0);
}

TEST_CASE("orbit distance") {
  auto c = cfg1(0.5);
  double a[1] = {1.0}, b[1] = {-1.0}, d2[1] = {2.0};
  CHECK(orbit_distance(c, a, a) == 0.0);
  CHECK(orbit_distance(c, a, b) == 0.0);
  CHECK(orbit_distance(c, a, d2) == doctest::Approx(1.0));
  // Triangle inequality on random triples.
  double ks2[2] = {0.5, 1.0};
  auto c2 = WeightConfig::create(2, ks2);
  Rng rng(3);
  for (int it = 0; it < 50; ++it) {
    double x[2] = {rng.normal(), rng.normal()};
    double y[2] = {rng.normal(), rng.normal()};
    double z[2] = {rng.normal(), rng.normal()};
    CHECK(orbit_distance(c2, x, z) <=
          orbit_distance(c2, x, y) + orbit_distance(c2, y, z) + 1e-12);
  }
  // Orbit group enumeration matches the per-axis minimum.
  OrbitGroup G(2);
  CHECK(G.size() == 4);
  double x[2] = {0.7, -1.3}, y[2] = {-0.6, 1.1};
  double best = 1e300;
  std::vector<double> img(2);
  for (int e = 0; e < G.size(); ++e) {
    G.apply(e, x, img);
    double d = std::hypot(img[0] - y[0], img[1] - y[1]);
    best = std::min(best, d);
  }
  CHECK(orbit_distance(c2, x, y) == doctest::Approx(best).epsilon(1e-14));
}

TEST_CASE("dunkl kernel for real arguments") {
  auto c0 = cfg1(0.0);
  double one[1] = {1.0}, zero[1] = {0.0}, y[1] = {-2.2};
  CHECK(dunkl_kernel(c0, one, one) == doctest::Approx(std::exp(1.0)).epsilon(1e-13));
  auto c1 = cfg1(1.0);
  CHECK(dunkl_kernel(c1, zero, y) == doctest::Approx(1.0));
  CHECK(dunkl_kernel(c1, one, one) == doctest::Approx(1.5430806348152437).epsilon(1e-12));
  // Symmetry E(x, y) = E(y, x) on a random sample.
  auto ch = cfg1(0.7);
  Rng rng(9);
  for (int it = 0; it < 30; ++it) {
    double a[1] = {rng.uniform(-4.0, 4.0)}, b[1] = {rng.uniform(-4.0, 4.0)};
    double e1 = dunkl_kernel(ch, a, b), e2 = dunkl_kernel(ch, b, a);
    CHECK(std::abs(e1 - e2) <= 1e-12 * (1.0 + std::abs(e1)));
  }
  // Conjugation: E(-i xi, x) = conj(E(i xi, x)) for real xi, x.
  for (int it = 0; it < 20; ++it) {
    double xi[1] = {rng.uniform(-8.0, 8.0)}, x[1] = {rng.uniform(-4.0, 4.0)};
    cplx em = dunkl_kernel_unitary(ch, xi, x);
    double mxi[1] = {-xi[0]};
    cplx ep = dunkl_kernel_unitary(ch, mxi, x);
    CHECK(std::abs(em - std::conj(ep)) < 1e-12);
  }
}

TEST_CASE("heat and poisson profiles") {
  auto c0 = cfg1(0.0);
  double x[1] = {1.2}, zero[1] = {0.0};
  CHECK(heat_profile(c0, 0.5, x) ==
        doctest::Approx(std::exp(-0.5 * x[0] * x[0]) / std::sqrt(2.0 * kPi)).epsilon(1e-13));
  auto ch = cfg1(0.5);
  double nb = ch.homogeneous_dim;
  CHECK(heat_profile(ch, 0.7, zero) ==
        doctest::Approx(std::pow(1.4, -nb / 2.0) / ch.normalization).epsilon(1e-13));
  // Monotone decay in |x|.
  double prev = heat_profile(ch, 1.0, zero);
  for (double xv = 0.5; xv < 6.0; xv += 0.5) {
    double p[1] = {xv};
    double cur = heat_profile(ch, 1.0, p);
    CHECK(cur < prev);
    prev = cur;
  }
  // Classical Poisson kernel at k = 0.
  CHECK(poisson_profile(c0, x) == doctest::Approx(1.0 / (kPi * (1.0 + x[0] * x[0]))).epsilon(1e-10));
  CHECK(poisson_profile(ch, zero) == doctest::Approx(ch.poisson_constant));
  // Mass-one constant against the Beta closed form in 1-D:
  // c^{-1} = 2^k * 2 * (1/2) B(k+1/2, 1/2).
  double k = 0.5;
  double beta = std::exp(std::lgamma(k + 0.5) + std::lgamma(0.5) - std::lgamma(k + 1.0));
  CHECK(ch.poisson_constant == doctest::Approx(1.0 / (std::pow(2.0, k) * beta)).epsilon(1e-9));
}

TEST_CASE("two-point heat kernel matches the classical case") {
  auto c0 = cfg1(0.0);
  double x[1] = {0.8}, y[1] = {-0.4};
  double expected = std::exp(-(x[0] - y[0]) * (x[0] - y[0]) / 2.0) / std::sqrt(2.0 * kPi);
  CHECK(heat_kernel2(c0, 0.5, x, y) == doctest::Approx(expected).epsilon(1e-12));
  // Symmetry and positivity at k > 0.
  auto ch = cfg1(1.5);
  CHECK(heat_kernel2(ch, 0.7, x, y) == doctest::Approx(heat_kernel2(ch, 0.7, y, x)).epsilon(1e-12));
  CHECK(heat_kernel2(ch, 0.7, x, y) > 0.0);
}

TEST_CASE("box measure and sphere measure") {
  auto ch = cfg1(0.5);
  double lo[1] = {-1.0}, hi[1] = {1.0};
  CHECK(box_measure(ch, lo, hi) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(sphere_measure(ch) == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-14));
  double ks2[2] = {0.0, 0.0};
  CHECK(sphere_measure(WeightConfig::create(2, ks2)) == doctest::Approx(2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("configuration validation") {
  double bad[1] = {-0.5};
  CHECK_THROWS_AS((void)WeightConfig::create(1, bad), ConfigError);
  double ks[2] = {0.5, 0.5};
  CHECK_THROWS_AS((void)WeightConfig::create(1, ks), ConfigError);
}
