#include "dunkl/dunkl.h"

#include <cstring>
#include <string>

#include "runner.hpp"
#include "report.hpp"

using namespace dunkl;

struct dunkl_session {
  Session impl;
  std::string last_error;
  explicit dunkl_session(Session s) : impl(std::move(s)) {}
};

struct dunkl_field {
  GridFunction impl;
};

namespace {

thread_local std::string g_last_error_json;

void record_global(dunkl_status st, const std::string& msg, const std::string& key) {
  std::string out = "{\"error\":{\"code\":" + std::to_string(static_cast<int>(st)) +
                    ",\"message\":\"";
  for (char c : msg) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out += "\"";
  if (!key.empty()) out += ",\"key\":\"" + key + "\"";
  out += "}}";
  g_last_error_json = std::move(out);
}

dunkl_status classify(const std::exception& e, dunkl_session* s) {
  if (s) s->last_error = e.what();
  dunkl_status st = DUNKL_ERR_INTERNAL;
  std::string key;
  if (auto* ce = dynamic_cast<const ConfigError*>(&e)) {
    st = DUNKL_ERR_CONFIG;
    key = ce->key;
  } else if (dynamic_cast<const ConvergenceError*>(&e)) {
    st = DUNKL_ERR_NONCONVERGENCE;
  } else if (dynamic_cast<const CheckFailure*>(&e)) {
    st = DUNKL_ERR_CHECK_FAILED;
  } else if (dynamic_cast<const std::invalid_argument*>(&e) ||
             dynamic_cast<const std::domain_error*>(&e)) {
    st = DUNKL_ERR_CONFIG;
  }
  record_global(st, e.what(), key);
  return st;
}

template <typename Fn>
dunkl_status guarded(dunkl_session* s, Fn&& fn) {
  try {
    fn();
    if (s) s->last_error.clear();
    return DUNKL_OK;
  } catch (const std::exception& e) {
    return classify(e, s);
  } catch (...) {
    if (s) s->last_error = "unknown error";
    return DUNKL_ERR_INTERNAL;
  }
}

std::vector<double> point_of(const dunkl_session* s, const double* x) {
  return std::vector<double>(x, x + s->impl.cfg.dimension);
}

template <typename Fn>
dunkl_status make_field(dunkl_session* s, dunkl_field** out, Fn&& fn) {
  if (!s || !out) return DUNKL_ERR_CONFIG;
  *out = nullptr;
  return guarded(s, [&] { *out = new dunkl_field{fn()}; });
}

}  // namespace

extern "C" {

dunkl_status dunkl_session_create(const char* config_json, dunkl_session** out) {
  if (!config_json || !out) return DUNKL_ERR_CONFIG;
  *out = nullptr;
  try {
    auto cfg = RunConfig::from_json_text(config_json);
    *out = new dunkl_session(Session(std::move(cfg)));
    return DUNKL_OK;
  } catch (const std::exception& e) {
    return classify(e, nullptr);
  }
}

dunkl_status dunkl_session_create_from_file(const char* config_path, dunkl_session** out) {
  if (!config_path || !out) return DUNKL_ERR_CONFIG;
  *out = nullptr;
  try {
    auto cfg = RunConfig::from_json_file(config_path);
    *out = new dunkl_session(Session(std::move(cfg)));
    return DUNKL_OK;
  } catch (const std::exception& e) {
    return classify(e, nullptr);
  }
}

void dunkl_session_destroy(dunkl_session* s) { delete s; }

const char* dunkl_status_name(dunkl_status st) {
  switch (st) {
    case DUNKL_OK: return "ok";
    case DUNKL_ERR_CHECK_FAILED: return "check-failed";
    case DUNKL_ERR_CONFIG: return "config-error";
    case DUNKL_ERR_NONCONVERGENCE: return "non-convergence";
    case DUNKL_ERR_IO: return "io-error";
    default: return "internal-error";
  }
}

const char* dunkl_session_last_error(const dunkl_session* s) {
  return s ? s->last_error.c_str() : "";
}

const char* dunkl_last_error_json(void) { return g_last_error_json.c_str(); }

const char* dunkl_version(void) {
  static std::string v = library_version();
  return v.c_str();
}

int dunkl_dimension(const dunkl_session* s) { return s->impl.cfg.dimension; }

size_t dunkl_grid_size(const dunkl_session* s) { return s->impl.space->size(); }

double dunkl_homogeneous_dimension(const dunkl_session* s) { return s->impl.wcfg.homogeneous_dim; }

double dunkl_normalization(const dunkl_session* s) { return s->impl.wcfg.normalization; }

dunkl_status dunkl_weight_density(const dunkl_session* s, const double* x, double* out) {
  if (!s || !x || !out) return DUNKL_ERR_CONFIG;
  *out = weight_density(s->impl.wcfg, point_of(s, x));
  return DUNKL_OK;
}

dunkl_status dunkl_orbit_distance(const dunkl_session* s, const double* x, const double* y,
                                  double* out) {
  if (!s || !x || !y || !out) return DUNKL_ERR_CONFIG;
  *out = orbit_distance(s->impl.wcfg, point_of(s, x), point_of(s, y));
  return DUNKL_OK;
}

dunkl_status dunkl_kernel(dunkl_session* s, const double* x, const double* y, double* out) {
  if (!s || !x || !y || !out) return DUNKL_ERR_CONFIG;
  return guarded(s, [&] { *out = dunkl::dunkl_kernel(s->impl.wcfg, point_of(s, x), point_of(s, y)); });
}

dunkl_status dunkl_ball_volume(dunkl_session* s, const double* center, double r, double* out) {
  if (!s || !center || !out) return DUNKL_ERR_CONFIG;
  return guarded(s, [&] { *out = ball_volume(s->impl.wcfg, point_of(s, center), r); });
}

dunkl_status dunkl_heat_profile(dunkl_session* s, double t, const double* x, double* out) {
  if (!s || !x || !out) return DUNKL_ERR_CONFIG;
  return guarded(s, [&] { *out = heat_profile(s->impl.wcfg, t, point_of(s, x)); });
}

dunkl_status dunkl_heat_kernel(dunkl_session* s, double t, const double* x, const double* y,
                               double* out) {
  if (!s || !x || !y || !out) return DUNKL_ERR_CONFIG;
  return guarded(s, [&] { *out = heat_kernel2(s->impl.wcfg, t, point_of(s, x), point_of(s, y)); });
}

dunkl_status dunkl_poisson_profile(const dunkl_session* s, const double* x, double* out) {
  if (!s || !x || !out) return DUNKL_ERR_CONFIG;
  *out = poisson_profile(s->impl.wcfg, point_of(s, x));
  return DUNKL_OK;
}

dunkl_status dunkl_field_create(dunkl_session* s, const double* re, const double* im, size_t n,
                                dunkl_field** out) {
  if (!s || !re || !out) return DUNKL_ERR_CONFIG;
  *out = nullptr;
  return guarded(s, [&] {
    if (n != s->impl.space->size()) throw ConfigError("field length does not match the grid", "");
    GridFunction f(s->impl.space);
    for (size_t i = 0; i < n; ++i) f.values[i] = {re[i], im ? im[i] : 0.0};
    *out = new dunkl_field{std::move(f)};
  });
}

void dunkl_field_destroy(dunkl_field* f) { delete f; }

size_t dunkl_field_size(const dunkl_field* f) { return f ? f->impl.size() : 0; }

dunkl_status dunkl_field_values(const dunkl_field* f, double* re, double* im) {
  if (!f || !re) return DUNKL_ERR_CONFIG;
  for (size_t i = 0; i < f->impl.size(); ++i) {
    re[i] = f->impl.values[i].real();
    if (im) im[i] = f->impl.values[i].imag();
  }
  return DUNKL_OK;
}

dunkl_status dunkl_field_node(const dunkl_field* f, size_t i, double* coords) {
  if (!f || !coords || i >= f->impl.size()) return DUNKL_ERR_CONFIG;
  std::vector<double> pt(static_cast<size_t>(f->impl.grid->dim()));
  f->impl.grid->node(i, pt);
  std::memcpy(coords, pt.data(), pt.size() * sizeof(double));
  return DUNKL_OK;
}

dunkl_status dunkl_field_norm(const dunkl_field* f, int norm_kind, double* out) {
  if (!f || !out) return DUNKL_ERR_CONFIG;
  switch (norm_kind) {
    case 0: *out = f->impl.norm_l2(); return DUNKL_OK;
    case 1: *out = f->impl.norm_l1(); return DUNKL_OK;
    case 2: *out = f->impl.norm_sup(); return DUNKL_OK;
    default: return DUNKL_ERR_CONFIG;
  }
}

dunkl_status dunkl_field_integral(const dunkl_field* f, double* re, double* im) {
  if (!f || !re || !im) return DUNKL_ERR_CONFIG;
  cplx v = f->impl.integral();
  *re = v.real();
  *im = v.imag();
  return DUNKL_OK;
}

dunkl_status dunkl_field_write_csv(const dunkl_field* f, const char* path) {
  if (!f || !path) return DUNKL_ERR_CONFIG;
  try {
    write_csv(f->impl, path);
    return DUNKL_OK;
  } catch (const std::exception&) {
    return DUNKL_ERR_IO;
  }
}

dunkl_status dunkl_field_write_binary(const dunkl_field* f, const char* path) {
  if (!f || !path) return DUNKL_ERR_CONFIG;
  try {
    write_binary(f->impl, path);
    return DUNKL_OK;
  } catch (const std::exception&) {
    return DUNKL_ERR_IO;
  }
}

dunkl_status dunkl_field_read_csv(dunkl_session* s, const char* path, dunkl_field** out) {
  if (!s || !path || !out) return DUNKL_ERR_CONFIG;
  *out = nullptr;
  try {
    *out = new dunkl_field{read_csv(s->impl.space, path)};
    return DUNKL_OK;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return DUNKL_ERR_IO;
  }
}

dunkl_status dunkl_field_read_binary(dunkl_session* s, const char* path, dunkl_field** out) {
  if (!s || !path || !out) return DUNKL_ERR_CONFIG;
  *out = nullptr;
  try {
    *out = new dunkl_field{read_binary(s->impl.space, path)};
    return DUNKL_OK;
  } catch (const std::exception& e) {
    s->last_error = e.what();
    return DUNKL_ERR_IO;
  }
}

dunkl_status dunkl_transform_forward(dunkl_session* s, const dunkl_field* f, dunkl_field** out) {
  if (!f) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] { return s->impl.transform->forward(f->impl); });
}

dunkl_status dunkl_transform_inverse(dunkl_session* s, const dunkl_field* g, dunkl_field** out) {
  if (!g) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] { return s->impl.transform->inverse(g->impl); });
}

dunkl_status dunkl_translate(dunkl_session* s, const dunkl_field* f, const double* x,
                             dunkl_field** out) {
  if (!f || !x) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] { return s->impl.transform->translate(f->impl, point_of(s, x)); });
}

dunkl_status dunkl_convolve(dunkl_session* s, const dunkl_field* f, const dunkl_field* g,
                            dunkl_field** out) {
  if (!f || !g) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] { return s->impl.transform->convolve(f->impl, g->impl); });
}

dunkl_status dunkl_heat_semigroup(dunkl_session* s, double t, const dunkl_field* f,
                                  dunkl_field** out) {
  if (!f) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] { return s->impl.transform->heat(t, f->impl); });
}

dunkl_status dunkl_poisson_semigroup(dunkl_session* s, double t, const dunkl_field* f,
                                     dunkl_field** out) {
  if (!f) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] { return s->impl.transform->poisson(t, f->impl); });
}

dunkl_status dunkl_riesz(dunkl_session* s, int axis, const dunkl_field* f, dunkl_field** out) {
  if (!f) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] {
    if (axis < 0 || axis >= s->impl.cfg.dimension) throw ConfigError("axis out of range", "");
    return apply_symbol(*s->impl.transform, Symbol::riesz(s->impl.cfg.dimension, axis), f->impl);
  });
}

dunkl_status dunkl_derivative(dunkl_session* s, int axis, const dunkl_field* f, dunkl_field** out) {
  if (!f) return DUNKL_ERR_CONFIG;
  return make_field(s, out, [&] {
    if (axis < 0 || axis >= s->impl.cfg.dimension) throw ConfigError("axis out of range", "");
    return s->impl.transform->derivative(f->impl, axis);
  });
}

dunkl_status dunkl_plancherel_defect(dunkl_session* s, const dunkl_field* f, double* out) {
  if (!s || !f || !out) return DUNKL_ERR_CONFIG;
  return guarded(s, [&] { *out = s->impl.transform->plancherel_defect(f->impl); });
}

dunkl_status dunkl_run(dunkl_session* s, const char* subcommand) {
  if (!s || !subcommand) return DUNKL_ERR_CONFIG;
  std::string err;
  int rc = run_subcommand(s->impl, subcommand, &err);
  s->last_error = err;
  switch (rc) {
    case 0: return DUNKL_OK;
    case 1: return DUNKL_ERR_CHECK_FAILED;
    case 2: return DUNKL_ERR_CONFIG;
    case 3: return DUNKL_ERR_NONCONVERGENCE;
    default: return DUNKL_ERR_INTERNAL;
  }
}

}  // extern "C"
