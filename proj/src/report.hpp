#pragma once

#include <string>
#include <vector>

#include "common.hpp"

namespace dunkl {

// Deterministic CSV writer: numbers printed with 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(const std::string& path);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void header(const std::vector<std::string>& cols);
  void cell(const std::string& s);
  void cell(double v);
  void cell(long v);
  void end_row();

 private:
  void* fp_;
  bool at_row_start_ = true;
};

struct RunManifest {
  std::string subcommand;
  std::uint64_t config_hash = 0;
  std::string version;
  double wall_ms = 0.0;
  std::vector<std::string> outputs;
};

void write_manifest(const RunManifest& m, const std::string& path);

// Minimal static SVG: one or more polylines over (x, y) series, log-y option.
struct PlotSeries {
  std::string label;
  std::vector<double> x, y;
};

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series, bool log_y = false);

std::string library_version();

}  // namespace dunkl
