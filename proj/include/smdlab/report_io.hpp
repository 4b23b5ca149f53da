#pragma once

#include <iosfwd>
#include <string>

#include "smdlab/experiment.hpp"

namespace smdlab {

// CSV: header "x,g,S_<n1>,...", one row per grid point, 12 significant
// digits, then a '#'-prefixed block echoing the effective spec and the
// per-column sup/mean errors (and the residual series when present).
// Identical reports produce byte-identical output.
void emit_csv(const ExperimentReport& report, std::ostream& os);
void emit_csv(const ExperimentReport& report, const std::string& path);

// Standalone deterministic SVG line chart: blue target curve, one polyline
// per n, axes with tick labels, legend. Needs at least two grid points.
void emit_svg(const ExperimentReport& report, std::ostream& os);
void emit_svg(const ExperimentReport& report, const std::string& path);

}  // namespace smdlab
