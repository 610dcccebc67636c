#pragma once

#include "splitkdv/grid.h"

#include <complex>
#include <utility>

namespace splitkdv {

/// Real samples of a periodic function on a shared PeriodicGrid.
class RealField {
 public:
  RealField() = default;
  RealField(GridPtr grid, ArrayXd values);

  static RealField zero(GridPtr grid);

  const GridPtr& grid() const { return grid_; }
  const ArrayXd& values() const { return values_; }
  ArrayXd& values() { return values_; }
  int size() const { return static_cast<int>(values_.size()); }

  bool all_finite() const { return values_.allFinite(); }
  double max_abs() const { return values_.size() ? values_.abs().maxCoeff() : 0.0; }

  RealField& operator+=(const RealField& other);
  RealField& operator-=(const RealField& other);
  RealField& operator*=(double factor);

 private:
  GridPtr grid_;
  ArrayXd values_;
};

RealField operator+(const RealField& a, const RealField& b);
RealField operator-(const RealField& a, const RealField& b);
RealField operator*(double factor, const RealField& f);
RealField operator*(const RealField& f, double factor);
RealField operator-(const RealField& f);

inline bool is_finite_state(const RealField& f) { return f.all_finite(); }

/// Fourier coefficients u_hat_m in FFT storage order, normalized so that
/// u_hat_0 is the mean of the field (u_hat_m = (1/N) sum_j f(x_j) e^{-i k_m x_j}).
class Spectrum {
 public:
  Spectrum(GridPtr grid, ArrayXcd coeffs);

  const GridPtr& grid() const { return grid_; }
  const ArrayXcd& coeffs() const { return coeffs_; }
  ArrayXcd& coeffs() { return coeffs_; }

  std::complex<double> coeff_for_mode(int mode) const {
    return coeffs_[grid_->storage_index(mode)];
  }

  // Max conjugate-symmetry defect |u_hat_{-m} - conj(u_hat_m)| relative to the
  // largest coefficient magnitude; 0 for a perfectly real-valued field.
  double symmetry_defect() const;

 private:
  GridPtr grid_;
  ArrayXcd coeffs_;
};

Spectrum to_spectrum(const RealField& f);
RealField from_spectrum(const Spectrum& s);

/// Spectral derivative of the given order (0 <= order <= 9). Odd orders zero
/// the Nyquist mode, which has no conjugate-symmetric partner.
RealField derivative(const RealField& f, int order);
Spectrum derivative(const Spectrum& s, int order);

/// Zero all modes with |m| > N/3 (the 2/3 rule used around quadratic products).
Spectrum truncate_two_thirds(Spectrum s);

/// Pointwise product with 2/3-rule dealiasing: both inputs are truncated,
/// multiplied in physical space, and the result is truncated again.
RealField dealiased_product(const RealField& f, const RealField& g);

/// Discrete H^s inner product L * sum_m (sum_{j<=s} k_m^{2j}) u_hat_m conj(v_hat_m),
/// real part; the Parseval form of sum_{j<=s} int d^j f d^j g dx.
double sobolev_inner(const RealField& f, const RealField& g, int s);
double sobolev_norm(const RealField& f, int s);
double l2_inner(const RealField& f, const RealField& g);

}  // namespace splitkdv
