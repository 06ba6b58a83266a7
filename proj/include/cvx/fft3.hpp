#pragma once

#include "cvx/grid.hpp"
#include "cvx/util.hpp"

namespace cvx {

// Plan cache for real<->half-complex 3-D transforms of size n^3.  Forward
// normalizes by 1/n^3 so coefficients satisfy f(x) = sum_k fhat(k) e^{ik.x}.
// backward() destroys the input spectrum (FFTW c2r); callers that need the
// spectrum afterwards pass a scratch copy.
class Fft3 {
 public:
  static const Fft3& plan(int n);

  void forward(double* phys_in, Complex* spec_out) const;
  void backward(Complex* spec_in_destroyed, double* phys_out) const;

  int size() const { return n_; }

 private:
  explicit Fft3(int n);
  int n_;
  void* fwd_;
  void* bwd_;
};

}  // namespace cvx
