#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include "smdlab/report_io.hpp"

namespace smdlab {

namespace {

/* ---- layout ---- */
constexpr double kW = 860, kH = 540;
constexpr double kLeft = 70, kRight = 180, kTop = 42, kBottom = 55;
constexpr double kPlotW = kW - kLeft - kRight;
constexpr double kPlotH = kH - kTop - kBottom;

std::string num(double v, const char* spec = "%.2f") {
  char buf[40];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

double nice_step(double raw) {
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0})
    if (raw <= m * mag) return m * mag;
  return 10.0 * mag;
}

void polyline(std::ostream& os, const std::vector<double>& xs, const std::vector<double>& ys,
              double x0, double xs_scale, double y1, double ys_scale,
              const std::string& color) {
  os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
  for (size_t i = 0; i < xs.size(); ++i) {
    double px = kLeft + (xs[i] - x0) * xs_scale;
    double py = kTop + (y1 - ys[i]) * ys_scale;
    if (i) os << ' ';
    os << num(px) << ',' << num(py);
  }
  os << "\"/>\n";
}

}  // namespace

void emit_svg(const ExperimentReport& r, std::ostream& os) {
  if (r.x.size() < 2) throw std::invalid_argument("emit_svg: need at least two grid points");
  if (r.columns.size() != r.n_values.size())
    throw std::invalid_argument("emit_svg: malformed report");

  double ymin = r.target[0], ymax = r.target[0];
  auto expand = [&](const std::vector<double>& v) {
    for (double y : v)
      if (std::isfinite(y)) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
      }
  };
  expand(r.target);
  for (const auto& col : r.columns) expand(col);
  if (!(ymax > ymin)) {
    ymin -= 1.0;
    ymax += 1.0;
  }
  double pad = 0.05 * (ymax - ymin);
  ymin -= pad;
  ymax += pad;

  double x0 = r.x.front(), x1 = r.x.back();
  double xscale = kPlotW / (x1 - x0);
  double yscale = kPlotH / (ymax - ymin);

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW << "\" height=\"" << kH
     << "\" viewBox=\"0 0 " << kW << ' ' << kH << "\">\n";
  os << "<rect width=\"" << kW << "\" height=\"" << kH << "\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kLeft + kPlotW / 2) << "\" y=\"24\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"15\">"
     << xml_escape(to_string(r.spec.kind) + ": target " + r.function) << "</text>\n";

  // axes
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop + kPlotH) << "\" x2=\""
     << num(kLeft + kPlotW) << "\" y2=\"" << num(kTop + kPlotH)
     << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(kLeft)
     << "\" y2=\"" << num(kTop + kPlotH) << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  double xstep = nice_step((x1 - x0) / 6.0);
  for (double t = std::ceil(x0 / xstep) * xstep; t <= x1 + 1e-9 * xstep; t += xstep) {
    double px = kLeft + (t - x0) * xscale;
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(kTop + kPlotH) << "\" x2=\"" << num(px)
       << "\" y2=\"" << num(kTop + kPlotH + 5) << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << num(px) << "\" y=\"" << num(kTop + kPlotH + 20)
       << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
       << num(t, "%g") << "</text>\n";
  }
  double ystep = nice_step((ymax - ymin) / 6.0);
  for (double t = std::ceil(ymin / ystep) * ystep; t <= ymax + 1e-9 * ystep; t += ystep) {
    double py = kTop + (ymax - t) * yscale;
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py) << "\" x2=\"" << num(kLeft)
       << "\" y2=\"" << num(py) << "\" stroke=\"#333333\"/>\n";
    os << "<text x=\"" << num(kLeft - 9) << "\" y=\"" << num(py + 4)
       << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"12\">" << num(t, "%g")
       << "</text>\n";
  }

  polyline(os, r.x, r.target, x0, xscale, ymax, yscale, "blue");
  for (size_t k = 0; k < r.columns.size(); ++k)
    polyline(os, r.x, r.columns[k], x0, xscale, ymax, yscale, r.colors[k]);

  // legend
  double lx = kLeft + kPlotW + 18, ly = kTop + 10;
  auto legend_row = [&](const std::string& color, const std::string& label) {
    os << "<line x1=\"" << num(lx) << "\" y1=\"" << num(ly) << "\" x2=\"" << num(lx + 26)
       << "\" y2=\"" << num(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << num(lx + 32) << "\" y=\"" << num(ly + 4)
       << "\" font-family=\"sans-serif\" font-size=\"13\">" << xml_escape(label)
       << "</text>\n";
    ly += 22;
  };
  legend_row("blue", r.function);
  for (size_t k = 0; k < r.n_values.size(); ++k)
    legend_row(r.colors[k], "n=" + std::to_string(r.n_values[k]));

  os << "</svg>\n";
}

void emit_svg(const ExperimentReport& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("emit_svg: cannot open " + path);
  emit_svg(r, f);
  if (!f.good()) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace smdlab
