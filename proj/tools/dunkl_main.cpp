// Command-line runner for the Dunkl analysis library. All work happens behind
// the public C interface; this binary only parses arguments and maps status
// codes to exits (0 ok, 1 check failure, 2 config error, 3 non-convergence).

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "dunkl/dunkl.h"

namespace {

std::string apply_output_override(std::string body, const std::string& output) {
  size_t close_brace = body.find_last_of('}');
  if (close_brace == std::string::npos) return {};
  std::string head = body.substr(0, close_brace);
  size_t pos = head.find("\"output_dir\"");
  if (pos != std::string::npos) {
    size_t colon = head.find(':', pos);
    size_t q1 = head.find('"', colon + 1);
    size_t q2 = head.find('"', q1 + 1);
    head = head.substr(0, q1 + 1) + output + head.substr(q2);
  } else {
    head += ", \"output_dir\": \"" + output + "\"";
  }
  return head + body.substr(close_brace);
}

int run(const std::string& subcommand, const std::string& config, const std::string& output) {
  std::string body;
  if (!config.empty() && config.front() == '{') {
    body = config;
  } else {
    FILE* f = std::fopen(config.c_str(), "rb");
    if (!f) {
      std::fprintf(stderr, "{\"error\":{\"code\":2,\"message\":\"cannot open config file\"}}\n");
      return 2;
    }
    std::fseek(f, 0, SEEK_END);
    long n = std::ftell(f);
    std::fseek(f, 0, SEEK_SET);
    body.resize(static_cast<size_t>(n));
    size_t rd = std::fread(body.data(), 1, static_cast<size_t>(n), f);
    body.resize(rd);
    std::fclose(f);
  }
  if (!output.empty()) {
    body = apply_output_override(std::move(body), output);
    if (body.empty()) {
      std::fprintf(stderr, "{\"error\":{\"code\":2,\"message\":\"cannot apply --output override\"}}\n");
      return 2;
    }
  }
  dunkl_session* session = nullptr;
  dunkl_status st = dunkl_session_create(body.c_str(), &session);
  if (st != DUNKL_OK) {
    const char* err = dunkl_last_error_json();
    std::fprintf(stderr, "%s\n", (err && err[0]) ? err : dunkl_status_name(st));
    return static_cast<int>(st);
  }

  st = dunkl_run(session, subcommand.c_str());
  if (st != DUNKL_OK) {
    const char* err = dunkl_session_last_error(session);
    std::fprintf(stderr, "%s\n", (err && err[0]) ? err : dunkl_status_name(st));
  } else {
    std::printf("%s: ok\n", subcommand.c_str());
  }
  int rc = static_cast<int>(st);
  dunkl_session_destroy(session);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dunkl harmonic analysis experiment runner"};
  app.require_subcommand(1);
  app.fallthrough();  // allow --config/--output after the subcommand

  std::string config;
  std::string output;
  app.add_option("-c,--config", config, "JSON configuration file (or inline JSON)")->required();
  app.add_option("-o,--output", output, "override the configured output directory");

  const char* names[] = {"transform-check", "heat-check",  "triangle-check", "atoms",
                         "carleson",        "decompose",   "report"};
  const char* descs[] = {"Plancherel/inversion/translation suites",
                         "heat kernel mass, positivity and Gaussian-envelope fits",
                         "condition (triangle) certificate for the configured system",
                         "Chang-Fefferman atom dump with diagnostics",
                         "Carleson box-energy ratios (convolution and Poisson-gradient)",
                         "constructive Fefferman-Stein decomposition run",
                         "aggregate prior outputs into summary tables and SVG plots"};
  std::string chosen;
  for (int i = 0; i < 7; ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->callback([&chosen, name = std::string(names[i])] { chosen = name; });
  }

  CLI11_PARSE(app, argc, argv);
  return run(chosen, config, output);
}
