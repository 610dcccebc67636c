#include "splitkdv/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace splitkdv {

std::string format_full(double x) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", x);
  return buffer;
}

void write_field_csv(const std::string& path, const RealField& f) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "x,u\n";
  const ArrayXd& x = f.grid()->nodes();
  for (int j = 0; j < f.size(); ++j)
    out << format_full(x[j]) << ',' << format_full(f.values()[j]) << '\n';
  if (!out) throw std::runtime_error("write failed on '" + path + "'");
}

FieldCsv read_field_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path + ": empty file");
  if (line == "x,u\r") line = "x,u";
  if (line != "x,u") throw std::runtime_error(path + ": expected header \"x,u\"");

  FieldCsv result;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double x = 0.0, u = 0.0;
    char comma = 0;
    if (!(row >> x >> comma >> u) || comma != ',')
      throw std::runtime_error(path + ": malformed row '" + line + "'");
    result.x.push_back(x);
    result.u.push_back(u);
  }
  const auto n = result.x.size();
  if (n < 4 || n % 2 != 0)
    throw std::runtime_error(path + ": need an even number (>= 4) of samples");

  const double dx = result.x[1] - result.x[0];
  if (!(dx > 0.0)) throw std::runtime_error(path + ": x column must be increasing");
  result.inferred_length = dx * static_cast<double>(n);
  if (std::abs(result.x[0]) > 1e-9 * result.inferred_length)
    throw std::runtime_error(path + ": grid must start at x = 0");
  for (std::size_t j = 0; j < n; ++j) {
    if (std::abs(result.x[j] - dx * static_cast<double>(j)) > 1e-9 * result.inferred_length)
      throw std::runtime_error(path + ": x column is not a uniform grid");
  }
  return result;
}

RealField field_from_csv(const std::string& path, double length_hint) {
  FieldCsv csv = read_field_csv(path);
  double length = csv.inferred_length;
  if (length_hint > 0.0) {
    if (std::abs(length_hint - length) > 1e-9 * length)
      throw std::runtime_error(path + ": domain length disagrees with the requested L");
    length = length_hint;
  }
  ArrayXd values(static_cast<int>(csv.u.size()));
  for (std::size_t j = 0; j < csv.u.size(); ++j) values[static_cast<int>(j)] = csv.u[j];
  return RealField(make_grid(length, static_cast<int>(csv.u.size())), std::move(values));
}

void write_report_csv(const std::string& path, const ConvergenceReport& report) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "dt,error,local_slope\n";
  for (std::size_t i = 0; i < report.samples.size(); ++i) {
    out << format_full(report.samples[i].dt) << ',' << format_full(report.samples[i].error) << ',';
    // the local slope sits on the finer row of each consecutive pair
    if (i > 0 && i - 1 < report.local.size() && std::isfinite(report.local[i - 1]))
      out << format_full(report.local[i - 1]);
    out << '\n';
  }
  if (report.fit)
    out << "# slope=" << format_full(report.fit->slope)
        << " residual=" << format_full(report.fit->residual) << '\n';
  else
    out << "# slope=unavailable residual=unavailable\n";
  for (const auto& failure : report.failures)
    out << "# failed dt=" << format_full(failure.dt) << ": " << failure.reason << '\n';
  if (!out) throw std::runtime_error("write failed on '" + path + "'");
}

}  // namespace splitkdv
