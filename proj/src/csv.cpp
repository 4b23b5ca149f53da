#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "smdlab/report_io.hpp"

namespace smdlab {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void check(const ExperimentReport& r) {
  if (r.x.empty() || r.columns.size() != r.n_values.size())
    throw std::invalid_argument("emit_csv: malformed report");
  for (const auto& col : r.columns)
    if (col.size() != r.x.size()) throw std::invalid_argument("emit_csv: ragged columns");
}

}  // namespace

void emit_csv(const ExperimentReport& r, std::ostream& os) {
  check(r);
  os << "x,g";
  for (int n : r.n_values) os << ",S_" << n;
  os << "\n";
  for (size_t i = 0; i < r.x.size(); ++i) {
    os << fmt12(r.x[i]) << ',' << fmt12(r.target[i]);
    for (const auto& col : r.columns) os << ',' << fmt12(col[i]);
    os << "\n";
  }
  const ExperimentSpec& s = r.spec;
  os << "# experiment kind=" << to_string(s.kind) << " function=" << r.function
     << " sequence=" << s.sequence.describe() << " x=[" << fmt12(s.x_min) << ','
     << fmt12(s.x_max) << "] points=" << s.points << " quad="
     << (s.quad.scheme == QuadratureSpec::Scheme::adaptive ? "adaptive" : "fixed")
     << " order=" << s.quad.order << " max_order=" << s.quad.max_order
     << " series_tol=" << fmt12(s.quad.series_tol) << "\n";
  for (size_t k = 0; k < r.n_values.size(); ++k)
    os << "# column S_" << r.n_values[k] << " u_n=" << fmt12(r.u_values[k])
       << " sup_error=" << fmt12(r.sup_error[k]) << " mean_error=" << fmt12(r.mean_error[k])
       << "\n";
  if (r.residuals) {
    const ResidualSeries& rs = *r.residuals;
    os << "# residual_series " << r.residual_label << "\n";
    for (size_t k = 0; k < rs.n.size(); ++k)
      os << "# residual n=" << rs.n[k] << " u_n=" << fmt12(rs.u[k])
         << " value=" << fmt12(rs.value[k]) << "\n";
    SlopeFit fit = rs.slope();
    os << "# residual_slope " << fmt12(fit.slope) << " points=" << fit.points_used << "\n";
  }
}

void emit_csv(const ExperimentReport& r, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("emit_csv: cannot open " + path);
  emit_csv(r, f);
  if (!f.good()) throw std::runtime_error("emit_csv: write failed for " + path);
}

}  // namespace smdlab
