#include "splitkdv/grid.h"

#include <numbers>
#include <stdexcept>

namespace splitkdv {

PeriodicGrid::PeriodicGrid(double length, int n_points) : length_(length), n_(n_points) {
  if (!(length > 0.0)) throw std::invalid_argument("PeriodicGrid: domain length must be positive");
  if (n_points < 4 || n_points % 2 != 0)
    throw std::invalid_argument("PeriodicGrid: N must be even and >= 4");
  x_.resize(n_);
  k_.resize(n_);
  const double two_pi_over_length = 2.0 * std::numbers::pi / length_;
  for (int j = 0; j < n_; ++j) {
    x_[j] = length_ * j / n_;
    k_[j] = two_pi_over_length * mode_number(j);
  }
}

double PeriodicGrid::max_wavenumber() const { return std::numbers::pi * n_ / length_; }

bool PeriodicGrid::compatible_with(const PeriodicGrid& other) const {
  return this == &other || (n_ == other.n_ && length_ == other.length_);
}

GridPtr make_grid(double length, int n_points) {
  return std::make_shared<const PeriodicGrid>(length, n_points);
}

}  // namespace splitkdv
