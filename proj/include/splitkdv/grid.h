#pragma once

#include <Eigen/Core>
#include <memory>

namespace splitkdv {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;

// Uniform periodic grid on [0, L): x_j = j L / N, wavenumbers k_m = 2 pi m / L
// stored in FFT order m = 0, 1, ..., N/2 - 1, -N/2, ..., -1.
class PeriodicGrid {
 public:
  PeriodicGrid(double length, int n_points);

  double length() const { return length_; }
  int size() const { return n_; }
  double spacing() const { return length_ / n_; }
  const ArrayXd& nodes() const { return x_; }
  const ArrayXd& wavenumbers() const { return k_; }

  // Signed mode number for storage index j; the Nyquist entry is -N/2.
  int mode_number(int j) const { return j < n_ / 2 ? j : j - n_; }
  int storage_index(int mode) const { return mode >= 0 ? mode : mode + n_; }
  int nyquist_index() const { return n_ / 2; }
  double max_wavenumber() const;  // |k| at the Nyquist mode, pi N / L

  bool compatible_with(const PeriodicGrid& other) const;

 private:
  double length_;
  int n_;
  ArrayXd x_;
  ArrayXd k_;
};

using GridPtr = std::shared_ptr<const PeriodicGrid>;

GridPtr make_grid(double length, int n_points);

}  // namespace splitkdv
