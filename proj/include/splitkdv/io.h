#pragma once

#include "splitkdv/convergence.h"
#include "splitkdv/field.h"

#include <string>
#include <vector>

namespace splitkdv {

/// %.17g formatting used for every CSV value (full double precision).
std::string format_full(double x);

/// Field snapshot: header "x,u", one row per grid node.
void write_field_csv(const std::string& path, const RealField& f);

struct FieldCsv {
  std::vector<double> x;
  std::vector<double> u;
  double inferred_length = 0.0;  // N * (x_1 - x_0)
};

FieldCsv read_field_csv(const std::string& path);

/// Builds a field from a snapshot; length_hint overrides the inferred domain
/// length (it must agree to 1e-9 relative).
RealField field_from_csv(const std::string& path, double length_hint = 0.0);

/// Refinement report: header "dt,error,local_slope", footer comment
/// "# slope=<p> residual=<r>", plus one comment line per failed rung.
void write_report_csv(const std::string& path, const ConvergenceReport& report);

}  // namespace splitkdv
