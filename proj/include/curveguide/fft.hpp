#pragma once

#include <Eigen/Core>

#include <complex>

#include "curveguide/grid.hpp"

namespace curveguide::dynamics {

/// In-place complex FFT working on an owned, FFT-aligned buffer (plans are
/// bound to the buffer at construction).  inverse() includes the 1/n factor.
class Fft1D {
 public:
  explicit Fft1D(Index n);
  ~Fft1D();
  Fft1D(const Fft1D&) = delete;
  Fft1D& operator=(const Fft1D&) = delete;

  Index size() const { return n_; }
  Eigen::Map<ArrayXcd> data() { return {buf_, n_}; }
  Eigen::Map<const ArrayXcd> view() const { return {buf_, n_}; }
  void forward();
  void inverse();

 private:
  Index n_;
  std::complex<double>* buf_;
  void* fwd_;
  void* inv_;
};

/// In-place 2D complex FFT on a column-major ny x nx buffer, done as batched
/// 1D transforms along both axes.  inverse() includes the 1/(nx*ny) factor.
class Fft2D {
 public:
  Fft2D(Index ny, Index nx);
  ~Fft2D();
  Fft2D(const Fft2D&) = delete;
  Fft2D& operator=(const Fft2D&) = delete;

  Eigen::Map<Eigen::MatrixXcd> data() { return {buf_, ny_, nx_}; }
  Eigen::Map<const Eigen::MatrixXcd> view() const { return {buf_, ny_, nx_}; }
  void forward();
  void inverse();

 private:
  Index ny_, nx_;
  std::complex<double>* buf_;
  void* fwd_y_, *fwd_x_, *inv_y_, *inv_x_;
};

/// FFT wavenumbers for an n-point grid of spacing dx, in FFT storage order:
/// k_j = 2*pi*j/(n*dx) for j < n/2, negative branch after.
ArrayXd fft_wavenumbers(Index n, double dx);

}  // namespace curveguide::dynamics
