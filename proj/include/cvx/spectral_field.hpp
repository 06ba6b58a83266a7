#pragma once

#include <Eigen/Core>

#include <array>
#include <vector>

#include "cvx/fft3.hpp"
#include "cvx/grid.hpp"

namespace cvx {

using Vector3i = Eigen::Vector3i;
using Vector3d = Eigen::Vector3d;
using Matrix3d = Eigen::Matrix3d;

// ---------------------------------------------------------------------------
// Slice-level primitives.  A slice is the half-complex spectrum (k3 >= 0) of
// one real scalar field; Hermitian symmetry is structural in this storage.
// ---------------------------------------------------------------------------
namespace slice {

void spec_to_phys(const Grid3& g, const ComplexBuf& spec, RealBuf& phys,
                  ComplexBuf& scratch);
void phys_to_spec(const Grid3& g, RealBuf& phys, ComplexBuf& spec);

// d/dx_axis: multiply mode k by i*k_axis, Nyquist plane zeroed. out == in ok.
void derivative(const Grid3& g, const ComplexBuf& in, int axis,
                ComplexBuf& out);

// zero all modes with any |k_a| > cut
void truncate(const Grid3& g, ComplexBuf& spec, int cut);

// logical coefficient access (any k in [-n/2, n/2)^3)
Complex mode(const Grid3& g, const ComplexBuf& spec, const Vector3i& k);
// assign a single coefficient; when the mode lives on a self-conjugate plane
// of the half-spectrum, the Hermitian partner inside the storage is kept
// consistent (value is averaged with the implied partner constraint).
void set_mode(const Grid3& g, ComplexBuf& spec, const Vector3i& k, Complex v);

double sup_abs(const RealBuf& phys);
// max |coeff| over the half-spectrum
double max_coeff(const ComplexBuf& spec);
// sum |f|^2 over the box divided by volume, evaluated spectrally
double mean_square(const Grid3& g, const ComplexBuf& spec);
// Hermitian consistency defect of the self-conjugate planes (k3 = 0, n/2)
double hermitian_defect(const Grid3& g, const ComplexBuf& spec);

}  // namespace slice

// ---------------------------------------------------------------------------
// Time-sampled band-limited fields on the torus.
// ---------------------------------------------------------------------------
class SpectralScalarField {
 public:
  SpectralScalarField() = default;
  SpectralScalarField(const Grid3& g, const TimeGrid& tg)
      : grid(g), time_grid(tg), slices(tg.samples) {
    for (auto& s : slices) s.assign(std::size_t(g.spec_size()), Complex(0));
  }

  Grid3 grid;
  TimeGrid time_grid;
  std::vector<ComplexBuf> slices;

  Complex mode(int t, const Vector3i& k) const {
    return slice::mode(grid, slices[t], k);
  }
  void set_mode(int t, const Vector3i& k, Complex v) {
    slice::set_mode(grid, slices[t], k, v);
  }
};

struct SpectralVectorField {
  SpectralVectorField() = default;
  SpectralVectorField(const Grid3& g, const TimeGrid& tg)
      : comp{SpectralScalarField(g, tg), SpectralScalarField(g, tg),
             SpectralScalarField(g, tg)} {}
  std::array<SpectralScalarField, 3> comp;
  bool solenoidal = false;

  const Grid3& grid() const { return comp[0].grid; }
  const TimeGrid& time_grid() const { return comp[0].time_grid; }
};

// nine components, row-major (i*3+j)
struct SpectralMatrixField {
  SpectralMatrixField() = default;
  SpectralMatrixField(const Grid3& g, const TimeGrid& tg) {
    for (auto& c : comp) c = SpectralScalarField(g, tg);
  }
  std::array<SpectralScalarField, 9> comp;
  bool symmetric = false;
  bool trace_free = false;

  SpectralScalarField& at(int i, int j) { return comp[i * 3 + j]; }
  const SpectralScalarField& at(int i, int j) const { return comp[i * 3 + j]; }
  const Grid3& grid() const { return comp[0].grid; }
  const TimeGrid& time_grid() const { return comp[0].time_grid; }
};

// transforms
std::vector<RealBuf> transform_to_physical(const SpectralScalarField& f);
SpectralScalarField transform_to_spectral(const Grid3& g, const TimeGrid& tg,
                                          const std::vector<RealBuf>& phys);

// calculus
SpectralScalarField derivative(const SpectralScalarField& f, int axis);
SpectralScalarField time_derivative(const SpectralScalarField& f);
SpectralVectorField time_derivative(const SpectralVectorField& f);
SpectralMatrixField time_derivative(const SpectralMatrixField& f);
SpectralVectorField gradient(const SpectralScalarField& f);
SpectralScalarField divergence(const SpectralVectorField& v);
SpectralVectorField divergence(const SpectralMatrixField& m);
SpectralVectorField curl(const SpectralVectorField& v);
SpectralMatrixField gradient(const SpectralVectorField& v);

// dealiased pointwise products
SpectralScalarField pointwise_product(const SpectralScalarField& f,
                                      const SpectralScalarField& g);
SpectralMatrixField outer_product(const SpectralVectorField& v,
                                  const SpectralVectorField& w);
SpectralScalarField dot_product(const SpectralVectorField& v,
                                const SpectralVectorField& w);

// means per time sample (coefficient at k = 0)
std::vector<double> space_mean(const SpectralScalarField& f);
std::vector<Vector3d> space_mean(const SpectralVectorField& f);
std::vector<Matrix3d> space_mean(const SpectralMatrixField& f);

// linear combinations (shared grids required)
SpectralScalarField lincomb(double a, const SpectralScalarField& f, double b,
                            const SpectralScalarField& g);
SpectralVectorField lincomb(double a, const SpectralVectorField& f, double b,
                            const SpectralVectorField& g);
SpectralMatrixField lincomb(double a, const SpectralMatrixField& f, double b,
                            const SpectralMatrixField& g);
void scale(SpectralScalarField& f, double a);

// norms and validation
double sup_norm(const SpectralScalarField& f);
double sup_norm(const SpectralVectorField& f);    // max |vector| over points
double sup_norm(const SpectralMatrixField& f);    // max operator norm
double solenoidal_defect(const SpectralVectorField& v);  // relative
double symmetry_defect(const SpectralMatrixField& m);
double trace_defect(const SpectralMatrixField& m);

// embed coefficients into a (finer) grid, exactly
SpectralScalarField regrid(const SpectralScalarField& f, const Grid3& g);
SpectralVectorField regrid(const SpectralVectorField& f, const Grid3& g);
SpectralMatrixField regrid(const SpectralMatrixField& f, const Grid3& g);

}  // namespace cvx
