#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <json.hpp>

namespace dunkl {

std::string library_version() { return "0.1.0"; }

CsvWriter::CsvWriter(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  fp_ = f;
}

CsvWriter::~CsvWriter() {
  if (fp_) std::fclose(static_cast<std::FILE*>(fp_));
}

void CsvWriter::header(const std::vector<std::string>& cols) {
  for (std::size_t i = 0; i < cols.size(); ++i)
    std::fprintf(static_cast<std::FILE*>(fp_), "%s%s", i ? "," : "", cols[i].c_str());
  std::fprintf(static_cast<std::FILE*>(fp_), "\n");
}

void CsvWriter::cell(const std::string& s) {
  std::fprintf(static_cast<std::FILE*>(fp_), "%s%s", at_row_start_ ? "" : ",", s.c_str());
  at_row_start_ = false;
}

void CsvWriter::cell(double v) {
  std::fprintf(static_cast<std::FILE*>(fp_), "%s%.17g", at_row_start_ ? "" : ",", v);
  at_row_start_ = false;
}

void CsvWriter::cell(long v) {
  std::fprintf(static_cast<std::FILE*>(fp_), "%s%ld", at_row_start_ ? "" : ",", v);
  at_row_start_ = false;
}

void CsvWriter::end_row() {
  std::fprintf(static_cast<std::FILE*>(fp_), "\n");
  at_row_start_ = true;
}

void write_manifest(const RunManifest& m, const std::string& path) {
  nlohmann::json j;
  j["subcommand"] = m.subcommand;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(m.config_hash));
  j["config_hash"] = std::string(buf);
  j["version"] = m.version;
  j["wall_ms"] = m.wall_ms;
  j["outputs"] = m.outputs;
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::string s = j.dump(2);
  std::fwrite(s.data(), 1, s.size(), f);
  std::fprintf(f, "\n");
  std::fclose(f);
}

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<PlotSeries>& series, bool log_y) {
  const double W = 720, H = 420, ml = 70, mr = 20, mt = 40, mb = 50;
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      double y = s.y[i];
      if (log_y) {
        if (y <= 0.0) continue;
        y = std::log10(y);
      }
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, y);
      ymax = std::max(ymax, y);
    }
  if (!(xmax > xmin)) {
    xmin -= 1.0;
    xmax += 1.0;
  }
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
  auto py = [&](double y) {
    if (log_y) y = std::log10(std::max(y, 1e-300));
    return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb);
  };
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open " + path);
  std::fprintf(f,
               "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" height=\"%g\" "
               "viewBox=\"0 0 %g %g\">\n",
               W, H, W, H);
  std::fprintf(f, "<rect width=\"%g\" height=\"%g\" fill=\"white\"/>\n", W, H);
  std::fprintf(f, "<text x=\"%g\" y=\"24\" font-family=\"monospace\" font-size=\"16\">%s</text>\n",
               ml, title.c_str());
  std::fprintf(f,
               "<rect x=\"%g\" y=\"%g\" width=\"%g\" height=\"%g\" fill=\"none\" "
               "stroke=\"#444\"/>\n",
               ml, mt, W - ml - mr, H - mt - mb);
  const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
  for (std::size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::fprintf(f, "<polyline fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\" points=\"",
                 colors[si % 6]);
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (log_y && s.y[i] <= 0.0) continue;
      std::fprintf(f, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
    }
    std::fprintf(f, "\"/>\n");
    std::fprintf(f,
                 "<text x=\"%g\" y=\"%g\" font-family=\"monospace\" font-size=\"12\" "
                 "fill=\"%s\">%s</text>\n",
                 W - mr - 180.0, mt + 18.0 * (si + 1), colors[si % 6], s.label.c_str());
  }
  // Axis extremes.
  std::fprintf(f,
               "<text x=\"%g\" y=\"%g\" font-family=\"monospace\" font-size=\"11\">%g</text>\n",
               ml - 4.0, H - mb + 16.0, xmin);
  std::fprintf(f,
               "<text x=\"%g\" y=\"%g\" font-family=\"monospace\" font-size=\"11\">%g</text>\n",
               W - mr - 30.0, H - mb + 16.0, xmax);
  std::fprintf(f, "</svg>\n");
  std::fclose(f);
}

}  // namespace dunkl
