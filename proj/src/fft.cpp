#include "curveguide/fft.hpp"

#include <fftw3.h>

#include <numbers>

namespace curveguide::dynamics {

namespace {
fftw_complex* cast(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }
}

Fft1D::Fft1D(Index n) : n_(n) {
  buf_ = reinterpret_cast<std::complex<double>*>(fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(n)));
  fwd_ = fftw_plan_dft_1d(static_cast<int>(n), cast(buf_), cast(buf_), FFTW_FORWARD, FFTW_MEASURE);
  inv_ = fftw_plan_dft_1d(static_cast<int>(n), cast(buf_), cast(buf_), FFTW_BACKWARD, FFTW_MEASURE);
}

Fft1D::~Fft1D() {
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(inv_));
  fftw_free(buf_);
}

void Fft1D::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }

void Fft1D::inverse() {
  fftw_execute(static_cast<fftw_plan>(inv_));
  data() /= static_cast<double>(n_);
}

Fft2D::Fft2D(Index ny, Index nx) : ny_(ny), nx_(nx) {
  buf_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * static_cast<size_t>(ny * nx)));
  const int iny = static_cast<int>(ny), inx = static_cast<int>(nx);
  // columns are contiguous (stride 1, one batch per column)
  fwd_y_ = fftw_plan_many_dft(1, &iny, inx, cast(buf_), nullptr, 1, iny, cast(buf_), nullptr, 1, iny,
                              FFTW_FORWARD, FFTW_MEASURE);
  inv_y_ = fftw_plan_many_dft(1, &iny, inx, cast(buf_), nullptr, 1, iny, cast(buf_), nullptr, 1, iny,
                              FFTW_BACKWARD, FFTW_MEASURE);
  // rows are strided by ny, one batch per row
  fwd_x_ = fftw_plan_many_dft(1, &inx, iny, cast(buf_), nullptr, iny, 1, cast(buf_), nullptr, iny, 1,
                              FFTW_FORWARD, FFTW_MEASURE);
  inv_x_ = fftw_plan_many_dft(1, &inx, iny, cast(buf_), nullptr, iny, 1, cast(buf_), nullptr, iny, 1,
                              FFTW_BACKWARD, FFTW_MEASURE);
}

Fft2D::~Fft2D() {
  for (void* p : {fwd_y_, fwd_x_, inv_y_, inv_x_}) fftw_destroy_plan(static_cast<fftw_plan>(p));
  fftw_free(buf_);
}

void Fft2D::forward() {
  fftw_execute(static_cast<fftw_plan>(fwd_y_));
  fftw_execute(static_cast<fftw_plan>(fwd_x_));
}

void Fft2D::inverse() {
  fftw_execute(static_cast<fftw_plan>(inv_y_));
  fftw_execute(static_cast<fftw_plan>(inv_x_));
  data() /= static_cast<double>(nx_ * ny_);
}

ArrayXd fft_wavenumbers(Index n, double dx) {
  ArrayXd k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * dx);
  for (Index j = 0; j < n; ++j) {
    const Index jj = (j < (n + 1) / 2) ? j : j - n;
    k[j] = dk * static_cast<double>(jj);
  }
  return k;
}

}  // namespace curveguide::dynamics
