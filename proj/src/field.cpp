#include "splitkdv/field.h"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

namespace splitkdv {

namespace {

// Plans are cached inside the FFT object, so keep one per thread. Transforms
// are unscaled both ways; normalization is explicit at the call sites.
Eigen::FFT<double>& fft_engine() {
  thread_local Eigen::FFT<double> fft = [] {
    Eigen::FFT<double> f;
    f.SetFlag(Eigen::FFT<double>::Unscaled);
    return f;
  }();
  return fft;
}

void require_same_grid(const RealField& a, const RealField& b, const char* who) {
  if (!a.grid() || !b.grid() || !a.grid()->compatible_with(*b.grid()))
    throw std::invalid_argument(std::string(who) + ": fields live on different grids");
}

}  // namespace

RealField::RealField(GridPtr grid, ArrayXd values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw std::invalid_argument("RealField: null grid");
  if (values_.size() != grid_->size())
    throw std::invalid_argument("RealField: sample count does not match the grid");
}

RealField RealField::zero(GridPtr grid) {
  const int n = grid->size();
  return RealField(std::move(grid), ArrayXd::Zero(n));
}

RealField& RealField::operator+=(const RealField& other) {
  require_same_grid(*this, other, "RealField::operator+=");
  values_ += other.values_;
  return *this;
}

RealField& RealField::operator-=(const RealField& other) {
  require_same_grid(*this, other, "RealField::operator-=");
  values_ -= other.values_;
  return *this;
}

RealField& RealField::operator*=(double factor) {
  values_ *= factor;
  return *this;
}

RealField operator+(const RealField& a, const RealField& b) {
  require_same_grid(a, b, "RealField::operator+");
  return RealField(a.grid(), a.values() + b.values());
}

RealField operator-(const RealField& a, const RealField& b) {
  require_same_grid(a, b, "RealField::operator-");
  return RealField(a.grid(), a.values() - b.values());
}

RealField operator*(double factor, const RealField& f) {
  return RealField(f.grid(), factor * f.values());
}

RealField operator*(const RealField& f, double factor) { return factor * f; }

RealField operator-(const RealField& f) { return RealField(f.grid(), -f.values()); }

Spectrum::Spectrum(GridPtr grid, ArrayXcd coeffs)
    : grid_(std::move(grid)), coeffs_(std::move(coeffs)) {
  if (!grid_) throw std::invalid_argument("Spectrum: null grid");
  if (coeffs_.size() != grid_->size())
    throw std::invalid_argument("Spectrum: coefficient count does not match the grid");
}

double Spectrum::symmetry_defect() const {
  const int n = grid_->size();
  const double scale = coeffs_.abs().maxCoeff();
  if (scale == 0.0) return 0.0;
  double worst = 0.0;
  for (int m = 1; m < n / 2; ++m) {
    const auto defect = coeffs_[grid_->storage_index(-m)] - std::conj(coeffs_[m]);
    worst = std::max(worst, std::abs(defect));
  }
  worst = std::max(worst, std::abs(coeffs_[grid_->nyquist_index()].imag()));
  return worst / scale;
}

Spectrum to_spectrum(const RealField& f) {
  if (!f.all_finite()) throw std::invalid_argument("to_spectrum: non-finite samples");
  const int n = f.size();
  Eigen::VectorXcd in(n), out(n);
  in.real() = f.values().matrix();
  in.imag().setZero();
  fft_engine().fwd(out, in);
  ArrayXcd coeffs = out.array() / static_cast<double>(n);
  // Real input makes the Nyquist coefficient real up to rounding; pin it.
  auto& nyq = coeffs[f.grid()->nyquist_index()];
  nyq = std::complex<double>(nyq.real(), 0.0);
  return Spectrum(f.grid(), std::move(coeffs));
}

RealField from_spectrum(const Spectrum& s) {
  const int n = s.grid()->size();
  Eigen::VectorXcd in = s.coeffs().matrix(), out(n);
  fft_engine().inv(out, in);  // unscaled: plain sum over e^{+i k_m x_j}
  return RealField(s.grid(), out.array().real());
}

Spectrum derivative(const Spectrum& s, int order) {
  if (order < 0 || order > 9)
    throw std::invalid_argument("derivative: order must be between 0 and 9");
  if (order == 0) return s;
  const PeriodicGrid& grid = *s.grid();
  static constexpr std::complex<double> unit_powers[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const std::complex<double> unit = unit_powers[order % 4];  // i^order
  const ArrayXd& k = grid.wavenumbers();
  ArrayXcd coeffs = s.coeffs();
  for (int j = 0; j < grid.size(); ++j) coeffs[j] *= unit * std::pow(k[j], order);
  if (order % 2 == 1) coeffs[grid.nyquist_index()] = 0.0;
  return Spectrum(s.grid(), std::move(coeffs));
}

RealField derivative(const RealField& f, int order) {
  if (order == 0) return f;
  return from_spectrum(derivative(to_spectrum(f), order));
}

Spectrum truncate_two_thirds(Spectrum s) {
  const PeriodicGrid& grid = *s.grid();
  const int n = grid.size();
  for (int j = 0; j < n; ++j) {
    if (3 * std::abs(grid.mode_number(j)) > n) s.coeffs()[j] = 0.0;
  }
  return s;
}

RealField dealiased_product(const RealField& f, const RealField& g) {
  require_same_grid(f, g, "dealiased_product");
  const RealField f_band = from_spectrum(truncate_two_thirds(to_spectrum(f)));
  const RealField g_band = from_spectrum(truncate_two_thirds(to_spectrum(g)));
  const RealField product(f.grid(), f_band.values() * g_band.values());
  return from_spectrum(truncate_two_thirds(to_spectrum(product)));
}

double sobolev_inner(const RealField& f, const RealField& g, int s) {
  if (s < 0 || s > 12)
    throw std::invalid_argument("sobolev_inner: norm index must be between 0 and 12");
  require_same_grid(f, g, "sobolev_inner");
  const Spectrum sf = to_spectrum(f);
  const Spectrum sg = to_spectrum(g);
  const PeriodicGrid& grid = *f.grid();
  const ArrayXd& k = grid.wavenumbers();
  double total = 0.0;
  for (int j = 0; j < grid.size(); ++j) {
    const double k2 = k[j] * k[j];
    double weight = 1.0, power = 1.0;
    for (int p = 0; p < s; ++p) {
      power *= k2;
      weight += power;
    }
    total += weight * (sf.coeffs()[j] * std::conj(sg.coeffs()[j])).real();
  }
  return grid.length() * total;
}

double sobolev_norm(const RealField& f, int s) {
  return std::sqrt(std::max(0.0, sobolev_inner(f, f, s)));
}

double l2_inner(const RealField& f, const RealField& g) { return sobolev_inner(f, g, 0); }

}  // namespace splitkdv
