#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "dunkl/dunkl.h"

namespace {

const char* kConfig = R"({
  "dimension": 1,
  "multiplicities": [0.5],
  "grid": {"points": 256, "half_width": 16.0},
  "frequency": {"points": 256, "bandwidth": 8.0},
  "output_dir": "/tmp/dunkl-capi-test"
})";

struct SessionHolder {
  dunkl_session* s = nullptr;
  SessionHolder() { REQUIRE(dunkl_session_create(kConfig, &s) == DUNKL_OK); }
  ~SessionHolder() { dunkl_session_destroy(s); }
};

}  // namespace

TEST_CASE("session lifecycle and config errors") {
  dunkl_session* s = nullptr;
  CHECK(dunkl_session_create("{not json", &s) == DUNKL_ERR_CONFIG);
  CHECK(s == nullptr);
  CHECK(dunkl_session_create(R"({"dimension": 7})", &s) == DUNKL_ERR_CONFIG);
  CHECK(dunkl_session_create(R"({"unknown_key": 1})", &s) == DUNKL_ERR_CONFIG);
  SessionHolder h;
  CHECK(dunkl_dimension(h.s) == 1);
  CHECK(dunkl_grid_size(h.s) == 256);
  CHECK(dunkl_homogeneous_dimension(h.s) == doctest::Approx(2.0));
  CHECK(dunkl_normalization(h.s) == doctest::Approx(2.0 * std::sqrt(2.0)));
  CHECK(std::string(dunkl_version()) == "0.1.0");
  CHECK(std::string(dunkl_status_name(DUNKL_ERR_CONFIG)) == "config-error");
}

TEST_CASE("scalar kernels through the C surface") {
  SessionHolder h;
  double x = 2.0, y = 1.0, out = 0.0;
  CHECK(dunkl_weight_density(h.s, &x, &out) == DUNKL_OK);
  CHECK(out == doctest::Approx(2.0 * std::sqrt(2.0)));
  double mx = -2.0;
  CHECK(dunkl_orbit_distance(h.s, &x, &mx, &out) == DUNKL_OK);
  CHECK(out == 0.0);
  CHECK(dunkl_kernel(h.s, &x, &y, &out) == DUNKL_OK);
  CHECK(out > 1.0);
  double overflow = 1000.0;
  CHECK(dunkl_kernel(h.s, &overflow, &overflow, &out) == DUNKL_ERR_CONFIG);
  CHECK(std::string(dunkl_session_last_error(h.s)).find("700") != std::string::npos);
  CHECK(dunkl_ball_volume(h.s, &y, 1.0, &out) == DUNKL_OK);
  CHECK(dunkl_heat_profile(h.s, 0.5, &x, &out) == DUNKL_OK);
  CHECK(out > 0.0);
  CHECK(dunkl_heat_kernel(h.s, 0.5, &x, &y, &out) == DUNKL_OK);
  CHECK(out > 0.0);
  CHECK(dunkl_poisson_profile(h.s, &x, &out) == DUNKL_OK);
  CHECK(out > 0.0);
}

TEST_CASE("fields and operators through the C surface") {
  SessionHolder h;
  size_t n = dunkl_grid_size(h.s);
  std::vector<double> re(n), im(n, 0.0), coords(1);
  // Build a Gaussian from node coordinates.
  dunkl_field* f = nullptr;
  REQUIRE(dunkl_field_create(h.s, re.data(), nullptr, n, &f) == DUNKL_OK);
  for (size_t i = 0; i < n; ++i) {
    REQUIRE(dunkl_field_node(f, i, coords.data()) == DUNKL_OK);
    re[i] = std::exp(-0.5 * coords[0] * coords[0]);
  }
  dunkl_field_destroy(f);
  REQUIRE(dunkl_field_create(h.s, re.data(), nullptr, n, &f) == DUNKL_OK);

  double l2 = 0.0, l1 = 0.0, sup = 0.0;
  CHECK(dunkl_field_norm(f, 0, &l2) == DUNKL_OK);
  CHECK(dunkl_field_norm(f, 1, &l1) == DUNKL_OK);
  CHECK(dunkl_field_norm(f, 2, &sup) == DUNKL_OK);
  CHECK(l2 == doctest::Approx(std::pow(2.0, 0.25)).epsilon(1e-6));
  CHECK(l1 == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-6));
  CHECK(sup <= 1.0);

  double defect = 0.0;
  CHECK(dunkl_plancherel_defect(h.s, f, &defect) == DUNKL_OK);
  CHECK(defect < 1e-5);

  dunkl_field* Ff = nullptr;
  REQUIRE(dunkl_transform_forward(h.s, f, &Ff) == DUNKL_OK);
  dunkl_field* back = nullptr;
  REQUIRE(dunkl_transform_inverse(h.s, Ff, &back) == DUNKL_OK);
  std::vector<double> bre(n), bim(n);
  CHECK(dunkl_field_values(back, bre.data(), bim.data()) == DUNKL_OK);
  double err = 0.0;
  for (size_t i = 0; i < n; ++i) err = std::max(err, std::abs(bre[i] - re[i]) + std::abs(bim[i]));
  CHECK(err < 1e-5);

  dunkl_field* heat = nullptr;
  REQUIRE(dunkl_heat_semigroup(h.s, 0.4, f, &heat) == DUNKL_OK);
  double ire = 0.0, iim = 0.0, fre = 0.0, fim = 0.0;
  CHECK(dunkl_field_integral(heat, &ire, &iim) == DUNKL_OK);
  CHECK(dunkl_field_integral(f, &fre, &fim) == DUNKL_OK);
  CHECK(ire == doctest::Approx(fre).epsilon(1e-6));

  dunkl_field* r = nullptr;
  REQUIRE(dunkl_riesz(h.s, 0, f, &r) == DUNKL_OK);
  double rs = 0.0;
  CHECK(dunkl_field_norm(r, 0, &rs) == DUNKL_OK);
  CHECK(rs == doctest::Approx(l2).epsilon(1e-2));  // |sgn| = 1 multiplier (coarse smoke grid)
  CHECK(dunkl_riesz(h.s, 3, f, &r) == DUNKL_ERR_CONFIG);

  // Serialization round trip.
  const char* bin = "/tmp/dunkl-capi-field.bin";
  CHECK(dunkl_field_write_binary(f, bin) == DUNKL_OK);
  dunkl_field* rd = nullptr;
  REQUIRE(dunkl_field_read_binary(h.s, bin, &rd) == DUNKL_OK);
  std::vector<double> rre(n), rim(n);
  CHECK(dunkl_field_values(rd, rre.data(), rim.data()) == DUNKL_OK);
  for (size_t i = 0; i < n; i += 17) CHECK(rre[i] == re[i]);
  std::remove(bin);

  dunkl_field_destroy(rd);
  dunkl_field_destroy(r);
  dunkl_field_destroy(heat);
  dunkl_field_destroy(back);
  dunkl_field_destroy(Ff);
  dunkl_field_destroy(f);
}

TEST_CASE("runner subcommand through the C surface") {
  SessionHolder h;
  CHECK(dunkl_run(h.s, "triangle-check") == DUNKL_OK);
  CHECK(std::filesystem::exists("/tmp/dunkl-capi-test/triangle_certificate.json"));
  CHECK(std::filesystem::exists("/tmp/dunkl-capi-test/manifest.json"));
  CHECK(dunkl_run(h.s, "no-such-command") == DUNKL_ERR_CONFIG);
  std::string err = dunkl_session_last_error(h.s);
  CHECK(err.find("error") != std::string::npos);
  std::filesystem::remove_all("/tmp/dunkl-capi-test");
}
