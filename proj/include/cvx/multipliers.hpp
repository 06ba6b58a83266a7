#pragma once

#include "cvx/spectral_field.hpp"

namespace cvx {

// Exact per-mode solution operators on the torus.  All act slice-wise; every
// kernel satisfies kernel(-k) = conj(kernel(k)) so real fields stay real.
namespace slice {

// in-place allowed (out may alias in)
void inverse_laplacian(const Grid3& g, const ComplexBuf& in, ComplexBuf& out);

// vh: three slice pointers; applies k (x) k / |k|^2, keeps the k=0 mode
void leray_q(const Grid3& g, const Complex* in[3], Complex* out[3]);
// complement of leray_q; annihilates the mean
void leray_p(const Grid3& g, const Complex* in[3], Complex* out[3]);

// order-one right inverse of the divergence, valued in symmetric trace-free
// matrices; annihilates the mean.  out: 9 slice pointers, row-major.
void inverse_divergence(const Grid3& g, const Complex* in[3],
                        Complex* out[9]);
// same, storing only the upper triangle (11,12,13,22,23,33)
void inverse_divergence_sym(const Grid3& g, const Complex* in[3],
                            Complex* out[6]);

// fused: inverse_divergence(divergence(A)) and the Leray-composed variant
void inverse_divergence_of_divergence(const Grid3& g, const Complex* in[9],
                                      Complex* out[9], bool leray_compose);

}  // namespace slice

SpectralScalarField inverse_laplacian(const SpectralScalarField& f);
SpectralVectorField leray_Q(const SpectralVectorField& v);
SpectralVectorField leray_P(const SpectralVectorField& v);
SpectralMatrixField inverse_divergence(const SpectralVectorField& v);
SpectralMatrixField inverse_divergence_of_divergence(
    const SpectralMatrixField& a, bool leray_compose = false);

}  // namespace cvx
