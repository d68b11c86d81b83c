#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

#include <json.hpp>

#include "report.hpp"
#include "special.hpp"

namespace dunkl {

namespace fs = std::filesystem;
using nlohmann::json;

void write_symbol_csv(const Symbol& s, const std::string& path) {
  CsvWriter w(path);
  std::vector<std::string> cols;
  for (int a = 0; a < s.dim(); ++a) cols.push_back("u" + std::to_string(a));
  cols.push_back("re");
  cols.push_back("im");
  w.header(cols);
  std::vector<double> dir(static_cast<std::size_t>(s.dim()));
  for (std::size_t p = 0; p < s.pair_count(); ++p) {
    s.pair_direction(p, dir);
    for (int sgn = 0; sgn < 2; ++sgn) {
      for (int a = 0; a < s.dim(); ++a) w.cell(sgn ? -dir[static_cast<std::size_t>(a)] : dir[static_cast<std::size_t>(a)]);
      cplx v = sgn ? s.value_minus(p) : s.value_plus(p);
      w.cell(v.real());
      w.cell(v.imag());
      w.end_row();
    }
  }
}

Symbol read_symbol_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open symbol file " + path, "system");
  std::string line;
  std::getline(in, line);
  struct Row {
    std::vector<double> dir;
    cplx v;
  };
  std::vector<Row> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    Row r;
    const char* p = line.c_str();
    char* end = nullptr;
    for (int c = 0; c < dim; ++c) {
      r.dir.push_back(std::strtod(p, &end));
      p = (*end == ',') ? end + 1 : end;
    }
    double re = std::strtod(p, &end);
    p = (*end == ',') ? end + 1 : end;
    double im = std::strtod(p, &end);
    r.v = {re, im};
    rows.push_back(std::move(r));
  }
  if (rows.empty()) throw ConfigError("symbol file " + path + " has no rows", "system");
  return Symbol::from_function(
      dim,
      [&](std::span<const double> u) {
        double best = -2.0;
        cplx val{0.0, 0.0};
        for (const auto& r : rows) {
          double dot = 0.0;
          for (int a = 0; a < dim; ++a) dot += u[static_cast<std::size_t>(a)] * r.dir[static_cast<std::size_t>(a)];
          if (dot > best) {
            best = dot;
            val = r.v;
          }
        }
        return val;
      },
      static_cast<int>(rows.size()));
}

MultiplierSystem load_system(const std::string& spec, int dim) {
  if (spec == "riesz") return MultiplierSystem::riesz_system(dim);
  if (spec == "hilbert-pair") {
    if (dim != 1) throw ConfigError("hilbert-pair system requires dimension 1", "system");
    return MultiplierSystem::hilbert_pair();
  }
  std::ifstream in(spec);
  if (!in) throw ConfigError("cannot open system manifest " + spec, "system");
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("system manifest is not valid JSON: ") + e.what(), "system");
  }
  std::vector<Symbol> symbols;
  std::vector<std::string> names;
  fs::path base = fs::path(spec).parent_path();
  for (const auto& entry : j.at("symbols")) {
    names.push_back(entry.at("name").get<std::string>());
    std::string file = entry.at("file").get<std::string>();
    symbols.push_back(read_symbol_csv((base / file).string(), dim));
  }
  return MultiplierSystem(std::move(symbols), std::move(names));
}

GridFunction annulus_packet(const Transformer& T, double xi_center, double xi_width, double chirp,
                            double x_offset) {
  GridFunction spec(T.freq());
  const auto& norms = T.freq_norms();
  for (std::size_t i = 0; i < spec.values.size(); ++i) {
    double b = smooth_bump(norms[i] - xi_center, xi_width);
    if (b == 0.0) continue;
    spec.values[i] = b * std::cos(chirp * norms[i]);
  }
  GridFunction f = T.inverse(spec);
  if (x_offset != 0.0) {
    std::vector<double> off(static_cast<std::size_t>(T.space()->dim()), 0.0);
    off[0] = x_offset;
    f = T.translate(f, off);
  }
  double n = f.norm_l2();
  if (n > 0.0) f *= 1.0 / n;
  return f;
}

std::vector<GridFunction> bandlimited_family(const Transformer& T, int count, std::uint64_t seed,
                                             double xi_lo, double xi_hi) {
  Rng rng(seed);
  std::vector<GridFunction> fam;
  const auto& norms = T.freq_norms();
  for (int n = 0; n < count; ++n) {
    GridFunction spec(T.freq());
    int humps = 1 + static_cast<int>(rng.next_u64() % 3);
    for (int hmp = 0; hmp < humps; ++hmp) {
      // Gaussian humps: the synthesized functions decay like Gaussians in
      // space, and the spectrum is below 1e-8 of its peak at the window edge.
      double sg = rng.uniform(0.4, 0.9);
      double c = rng.uniform(xi_lo + 3.0 * sg, std::max(xi_lo + 3.2 * sg, xi_hi - 6.5 * sg));
      double amp = rng.uniform(0.3, 1.0);
      double ph = rng.uniform(0.0, 2.0 * kPi);
      double chirp = rng.uniform(-2.5, 2.5);
      for (std::size_t i = 0; i < spec.values.size(); ++i) {
        double u = (norms[i] - c) / sg;
        if (std::abs(u) > 8.0) continue;
        double b = std::exp(-0.5 * u * u);
        spec.values[i] += amp * b * cplx{std::cos(ph + chirp * norms[i]), std::sin(ph + chirp * norms[i])};
      }
    }
    GridFunction f = T.inverse(spec);
    double nrm = f.norm_l2();
    if (nrm > 0.0) f *= 1.0 / nrm;
    fam.push_back(std::move(f));
  }
  return fam;
}

GridFunction truncated_log_input(const Transformer& T, double radius, double smoothing) {
  GridFunction b = sample(T.space(), [radius](std::span<const double> x) {
    double n = 0.0;
    for (double c : x) n += c * c;
    double r = std::max(std::sqrt(n), 1e-9);
    return cplx{std::max(0.0, -std::log(r / radius)), 0.0};
  });
  if (smoothing > 0.0) b = T.heat(smoothing, b);
  return b;
}

Session::Session(RunConfig config) : cfg(std::move(config)) {
  cfg.validate();
  threads = cfg.threads > 0 ? cfg.threads : default_threads();
  wcfg = WeightConfig::create(cfg.dimension, cfg.multiplicities);
  space = make_grid(wcfg, cfg.grid_points, cfg.grid_half_width);
  freq = make_grid(wcfg, cfg.freq_points, cfg.freq_bandwidth);
  transform = std::make_shared<Transformer>(space, freq, threads);
  system = load_system(cfg.system, cfg.dimension);
}

Transformer& Session::atoms_transformer() {
  if (!atoms_transform_) {
    atoms_freq_ = make_grid(wcfg, cfg.atoms_freq_points, cfg.atoms_freq_bandwidth);
    atoms_transform_ = std::make_shared<Transformer>(space, atoms_freq_, threads);
  }
  return *atoms_transform_;
}

CalderonBumps& Session::calderon() {
  if (!bumps_) bumps_ = std::make_shared<CalderonBumps>(wcfg);
  return *bumps_;
}

GridFunction Session::load_input() {
  if (cfg.input.rfind("builtin:", 0) == 0) {
    std::string kind = cfg.input.substr(8);
    if (kind == "truncated-log") return truncated_log_input(*transform, cfg.input_radius);
    if (kind == "packet")
      return annulus_packet(atoms_transformer(), 8.0, 6.0, 0.7, cfg.input_radius);
    if (kind == "gaussian")
      return sample(space, [](std::span<const double> x) {
        double n = 0.0;
        for (double c : x) n += c * c;
        return cplx{std::exp(-0.5 * n), 0.0};
      });
    throw ConfigError("unknown builtin input '" + kind + "'", "input");
  }
  fs::path p(cfg.input);
  if (p.extension() == ".csv") return read_csv(space, cfg.input);
  return read_binary(space, cfg.input);
}

namespace {

struct CheckRow {
  std::string name;
  double value;
  double threshold;
  bool pass;
};

int finish(const std::string& outdir, const std::string& sub, const Session& s,
           std::vector<std::string> outputs, double wall_ms, bool ok) {
  RunManifest m;
  m.subcommand = sub;
  m.config_hash = s.cfg.config_hash();
  m.version = library_version();
  m.wall_ms = wall_ms;
  m.outputs = std::move(outputs);
  write_manifest(m, outdir + "/manifest.json");
  return ok ? 0 : 1;
}

void write_checks(const std::string& path, const std::vector<CheckRow>& rows) {
  CsvWriter w(path);
  w.header({"check", "value", "threshold", "pass"});
  for (const auto& r : rows) {
    w.cell(r.name);
    w.cell(r.value);
    w.cell(r.threshold);
    w.cell(std::string(r.pass ? "1" : "0"));
    w.end_row();
  }
}

int run_transform_check(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  Transformer& T = *s.transform;
  double xi = s.cfg.freq_bandwidth;
  auto fam = bandlimited_family(T, 10, s.cfg.seed, std::max(1.0, xi / 16.0), 0.75 * xi);
  std::vector<CheckRow> rows;
  bool ok = true;
  int idx = 0;
  for (const auto& f : fam) {
    double pd = T.plancherel_defect(f);
    GridFunction rt = T.inverse(T.forward(f));
    rt -= f;
    double rte = rt.norm_sup() / std::max(f.norm_sup(), 1e-300);
    std::vector<double> off(static_cast<std::size_t>(s.cfg.dimension), 0.0);
    off[0] = 3.0;
    GridFunction tf = T.translate(f, off);
    double ip = std::abs(tf.integral() - f.integral()) / std::max(f.norm_l1(), 1e-300);
    double bd = T.boundary_decay_ratio(f);
    rows.push_back({"plancherel_" + std::to_string(idx), pd, 1e-6, pd <= 1e-6});
    rows.push_back({"inversion_" + std::to_string(idx), rte, 1e-6, rte <= 1e-6});
    rows.push_back({"translation_integral_" + std::to_string(idx), ip, 1e-5, ip <= 1e-5});
    rows.push_back({"boundary_decay_" + std::to_string(idx), bd, 1e-6, bd <= 1e-6});
    ++idx;
  }
  // Gaussian fixed point.
  GridFunction g = sample(s.space, [](std::span<const double> x) {
    double n = 0.0;
    for (double c : x) n += c * c;
    return cplx{std::exp(-0.5 * n), 0.0};
  });
  GridFunction Fg = T.forward(g);
  double fperr = 0.0;
  std::vector<double> pt(static_cast<std::size_t>(s.cfg.dimension));
  for (std::size_t i = 0; i < Fg.values.size(); ++i) {
    s.freq->node(i, pt);
    double n = 0.0;
    for (double c : pt) n += c * c;
    fperr = std::max(fperr, std::abs(Fg.values[i] - cplx{std::exp(-0.5 * n), 0.0}));
  }
  rows.push_back({"gaussian_fixed_point", fperr, 1e-6, fperr <= 1e-6});
  for (const auto& r : rows) ok = ok && r.pass;
  write_checks(outdir + "/transform_checks.csv", rows);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(outdir, "transform-check", s, {"transform_checks.csv"}, ms, ok);
}

int run_heat_check(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  Transformer& T = *s.transform;
  std::vector<CheckRow> rows;
  // Mass-one via the closed-form two-point kernel against grid quadrature.
  double worst_mass = 0.0;
  for (double t : {0.5, 1.0, 2.0})
    for (double x : {0.0, 1.3, 4.7}) {
      std::vector<double> px(static_cast<std::size_t>(s.cfg.dimension), 0.0);
      px[0] = x;
      GridFunction row = sample(s.space, [&](std::span<const double> y) {
        return cplx{heat_kernel2(s.wcfg, t, px, y), 0.0};
      });
      worst_mass = std::max(worst_mass, std::abs(row.integral().real() - 1.0));
    }
  rows.push_back({"mass_one", worst_mass, 1e-6, worst_mass <= 1e-6});

  // Positivity of the semigroup on a nonnegative band-limited input.
  GridFunction f = annulus_packet(T, 0.3 * s.cfg.freq_bandwidth, 0.15 * s.cfg.freq_bandwidth, 0.0, 4.0);
  GridFunction f2 = pointwise_mul(f, f);
  GridFunction hf = T.heat(0.8, f2);
  double neg = 0.0;
  for (const auto& v : hf.values) neg = std::min(neg, v.real());
  rows.push_back({"positivity_min", neg, -1e-8, neg >= -1e-8});

  // Gaussian envelope fit.
  std::vector<double> ts, xs, ys;
  for (int i = 0; i < 10; ++i) ts.push_back(0.5 * std::pow(1.3, i));
  for (int i = 0; i < 10; ++i) xs.push_back(-4.0 + 8.0 * i / 9.0);
  for (int i = 0; i < 10; ++i) ys.push_back(-4.0 + 8.0 * (i + 0.37) / 9.0);
  auto rep = heat_gaussian_bound_report(s.wcfg, ts, xs, ys);
  rows.push_back({"gaussian_bound_C", rep.gaussian_C, 1e6, rep.gaussian_C < 1e6});
  rows.push_back({"gaussian_bound_violations", static_cast<double>(rep.gaussian_violations), 0.0,
                  rep.gaussian_violations == 0});
  rows.push_back({"lipschitz_bound_C", rep.lipschitz_C, 1e6, rep.lipschitz_C < 1e6});
  bool ok = true;
  for (const auto& r : rows) ok = ok && r.pass;
  write_checks(outdir + "/heat_checks.csv", rows);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(outdir, "heat-check", s, {"heat_checks.csv"}, ms, ok);
}

int run_triangle_check(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  auto cert = s.system.check_triangle();
  json j;
  j["pass"] = cert.pass;
  j["min_singular_value"] = cert.min_singular_value;
  j["witness"] = cert.witness;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < s.system.size(); ++i) names.push_back(s.system.name(i));
  j["symbols"] = names;
  std::ofstream out(outdir + "/triangle_certificate.json");
  out << j.dump(2) << "\n";
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(outdir, "triangle-check", s, {"triangle_certificate.json"}, ms, cert.pass);
}

int run_atoms(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  Transformer& T = s.atoms_transformer();
  CalderonBumps& bumps = s.calderon();
  GridFunction f = s.load_input();
  auto res = chang_fefferman(T, bumps, f, s.cfg.j_min, s.cfg.j_max, {});
  json man;
  man["input_l2"] = res.f_l2;
  man["coverage_tail_energy"] = res.coverage_tail_energy;
  json atoms = json::array();
  CsvWriter diag(outdir + "/atom_diagnostics.csv");
  diag.header({"level", "index", "lambda", "support_leakage", "cancellation", "envelope",
               "tilde_defect"});
  std::vector<std::string> outputs{"atoms.json", "atom_diagnostics.csv"};
  int id = 0;
  for (const auto& e : res.entries) {
    json a;
    a["level"] = e.cube.level;
    a["index"] = e.cube.index;
    a["center"] = e.cube.center;
    a["side"] = e.cube.side;
    a["lambda"] = e.lambda;
    std::string file = "atom_" + std::to_string(id) + ".bin";
    write_binary(e.a, outdir + "/" + file);
    a["file"] = file;
    outputs.push_back(file);
    atoms.push_back(a);
    auto rep = atom_diagnostics(T, bumps, e);
    diag.cell(static_cast<long>(e.cube.level));
    diag.cell(static_cast<long>(e.cube.index[0]));
    diag.cell(e.lambda);
    diag.cell(rep.support_leakage);
    diag.cell(rep.cancellation);
    diag.cell(rep.envelope_constant);
    diag.cell(rep.tilde_relation_defect);
    diag.end_row();
    ++id;
  }
  man["atoms"] = atoms;
  std::ofstream out(outdir + "/atoms.json");
  out << man.dump(2) << "\n";
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(outdir, "atoms", s, outputs, ms, true);
}

int run_carleson(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  Transformer& T = *s.transform;
  CalderonBumps& bumps = s.calderon();
  auto balls = BallFamily::make_default(s.wcfg, s.cfg.grid_half_width);
  if (s.cfg.refine_balls) balls = balls.refined();
  auto phi_hat = [&](double t) { return bumps.phi_hat(t); };
  GridFunction b = s.load_input();
  GridFunction cst = sample(s.space, [](std::span<const double>) { return cplx{1.0, 0.0}; });
  double bmo = bmo_norm(b, balls);
  CsvWriter w(outdir + "/carleson.csv");
  w.header({"case", "ratio", "bmo", "c_estimate"});
  double r0 = carleson_ratio(T, cst, phi_hat, balls);
  w.cell(std::string("constant"));
  w.cell(r0);
  w.cell(0.0);
  w.cell(0.0);
  w.end_row();
  double r1 = carleson_ratio(T, b, phi_hat, balls);
  w.cell(std::string("input"));
  w.cell(r1);
  w.cell(bmo);
  w.cell(bmo > 0.0 ? std::sqrt(r1) / bmo : 0.0);
  w.end_row();
  double r2 = poisson_carleson(T, b, balls);
  w.cell(std::string("poisson_gradient"));
  w.cell(r2);
  w.cell(bmo);
  w.cell(bmo > 0.0 ? std::sqrt(r2) / bmo : 0.0);
  w.end_row();
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(outdir, "carleson", s, {"carleson.csv"}, ms, true);
}

int run_decompose(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  Transformer& T = s.atoms_transformer();
  CalderonBumps& bumps = s.calderon();
  auto balls = BallFamily::make_default(s.wcfg, s.cfg.grid_half_width);
  GridFunction f = s.load_input();
  FeffermanSteinOptions o;
  o.epsilon = s.cfg.epsilon_target;
  o.max_outer = s.cfg.max_outer;
  auto out = fefferman_stein(T, s.system, bumps, f, balls, o);

  CsvWriter h(outdir + "/residual_history.csv");
  h.header({"step", "bmo", "ratio", "support_radius"});
  for (std::size_t i = 0; i < out.history.size(); ++i) {
    h.cell(static_cast<long>(i + 1));
    h.cell(out.history[i].bmo);
    h.cell(out.history[i].residual_ratio);
    h.cell(out.history[i].support_radius);
    h.end_row();
  }
  CsvWriter gn(outdir + "/g_norms.csv");
  gn.header({"component", "sup", "l2"});
  std::vector<std::string> outputs{"residual_history.csv", "g_norms.csv"};
  for (std::size_t j = 0; j < out.g.size(); ++j) {
    gn.cell(static_cast<long>(j));
    gn.cell(out.g[j].norm_sup());
    gn.cell(out.g[j].norm_l2());
    gn.end_row();
    std::string file = "g_" + std::to_string(j) + ".bin";
    write_binary(out.g[j], outdir + "/" + file);
    outputs.push_back(file);
  }
  json sum;
  sum["input_bmo"] = out.input_bmo;
  sum["epsilon"] = out.epsilon;
  sum["reconstruction_defect"] = out.reconstruction_defect;
  sum["sup_sum"] = out.sup_sum;
  sum["l2_sum"] = out.l2_sum;
  sum["contracted"] = out.contracted;
  sum["guard_trips"] = out.guard_trips;
  std::ofstream js(outdir + "/decompose_summary.json");
  js << sum.dump(2) << "\n";
  outputs.push_back("decompose_summary.json");
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  if (!out.contracted) {
    finish(outdir, "decompose", s, outputs, ms, false);
    throw ConvergenceError("decompose: residual BMO norm failed to contract");
  }
  return finish(outdir, "decompose", s, outputs, ms, true);
}

int run_report(Session& s, const std::string& outdir) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> outputs;
  // Residual decay plot from an earlier decompose run, if present.
  std::string hist = outdir + "/residual_history.csv";
  if (fs::exists(hist)) {
    std::ifstream in(hist);
    std::string line;
    std::getline(in, line);
    PlotSeries series{"residual BMO", {}, {}};
    while (std::getline(in, line)) {
      double step = 0.0, bmo = 0.0;
      std::sscanf(line.c_str(), "%lf,%lf", &step, &bmo);
      series.x.push_back(step);
      series.y.push_back(bmo);
    }
    write_svg_plot(outdir + "/residual_decay.svg", "residual BMO per outer step", {series}, true);
    outputs.push_back("residual_decay.svg");
  }
  std::string diagp = outdir + "/atom_diagnostics.csv";
  if (fs::exists(diagp)) {
    std::ifstream in(diagp);
    std::string line;
    std::getline(in, line);
    PlotSeries env{"atom envelope constant", {}, {}};
    double idx = 0.0;
    while (std::getline(in, line)) {
      double lvl, cube, lam, leak, canc, e;
      if (std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &lvl, &cube, &lam, &leak, &canc, &e) == 6) {
        env.x.push_back(idx++);
        env.y.push_back(e);
      }
    }
    write_svg_plot(outdir + "/envelope_fits.svg", "atom envelope fits", {env}, false);
    outputs.push_back("envelope_fits.svg");
  }
  CsvWriter sum(outdir + "/summary.csv");
  sum.header({"artifact", "present"});
  for (const char* name : {"residual_history.csv", "atom_diagnostics.csv", "carleson.csv",
                           "transform_checks.csv", "heat_checks.csv", "triangle_certificate.json"}) {
    sum.cell(std::string(name));
    sum.cell(std::string(fs::exists(outdir + "/" + name) ? "1" : "0"));
    sum.end_row();
  }
  outputs.push_back("summary.csv");
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return finish(outdir, "report", s, outputs, ms, true);
}

}  // namespace

int run_subcommand(Session& s, const std::string& name, std::string* error_json) {
  auto fail = [&](int code, const std::string& msg, const std::string& key) {
    if (error_json) {
      json j;
      j["error"] = {{"code", code}, {"subcommand", name}, {"message", msg}};
      if (!key.empty()) j["error"]["key"] = key;
      *error_json = j.dump();
    }
    return code;
  };
  try {
    fs::create_directories(s.cfg.output_dir);
    const std::string& out = s.cfg.output_dir;
    int rc;
    if (name == "transform-check") rc = run_transform_check(s, out);
    else if (name == "heat-check") rc = run_heat_check(s, out);
    else if (name == "triangle-check") rc = run_triangle_check(s, out);
    else if (name == "atoms") rc = run_atoms(s, out);
    else if (name == "carleson") rc = run_carleson(s, out);
    else if (name == "decompose") rc = run_decompose(s, out);
    else if (name == "report") rc = run_report(s, out);
    else return fail(2, "unknown subcommand '" + name + "'", "");
    if (rc == 1) return fail(1, "acceptance checks failed; see " + out, "");
    return rc;
  } catch (const ConfigError& e) {
    return fail(2, e.what(), e.key);
  } catch (const ConvergenceError& e) {
    return fail(3, e.what(), "");
  } catch (const CheckFailure& e) {
    return fail(1, e.what(), "");
  } catch (const std::exception& e) {
    return fail(2, e.what(), "");
  }
}

}  // namespace dunkl
