#pragma once

#include <string>

#include "cvx/spectral_field.hpp"

namespace cvx {

// Binary snapshot: magic "CVXF0001", header (N u32, S u32, rank u8, flags u8)
// little-endian, then float64 (re,im) coefficients over the full logical mode
// cube in (t, k1, k2, k3, component) order, component fastest, each axis in
// FFT index order.  rank: 0 scalar, 1 vector, 2 matrix (9 components).
// flags: bit0 solenoidal, bit1 symmetric, bit2 trace-free.
struct SnapshotInfo {
  int n = 0;
  int samples = 0;
  int rank = 0;
  unsigned flags = 0;
};

struct SnapshotError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

SnapshotInfo read_snapshot_info(const std::string& path);

void write_snapshot(const std::string& path, const SpectralScalarField& f);
void write_snapshot(const std::string& path, const SpectralVectorField& f);
void write_snapshot(const std::string& path, const SpectralMatrixField& f);

SpectralScalarField read_snapshot_scalar(const std::string& path);
SpectralVectorField read_snapshot_vector(const std::string& path);
SpectralMatrixField read_snapshot_matrix(const std::string& path);

// -------------------------------------------------------------------------
// Thresholded sparse spectra for streamed time series of vector slices.
// -------------------------------------------------------------------------
struct SparseVec3 {
  std::vector<std::int64_t> idx;  // half-spectrum linear indices, ascending
  ComplexBuf val[3];

  std::size_t size() const { return idx.size(); }
};

// keep entries with max-component magnitude >= rel_threshold * global max
SparseVec3 sparsify_vec3(const Grid3& g, const ComplexBuf bufs[3],
                         double rel_threshold);
// dense[c] += w * sparse[c]
void accumulate(const SparseVec3& s, double w, ComplexBuf dense[3]);
// apply the solenoidal projection per mode in place
void leray_p_inplace(const Grid3& g, SparseVec3& s);
void leray_q_inplace(const Grid3& g, SparseVec3& s);

// deterministic compensated reduction helpers (fixed chunking)
double deterministic_sum(const double* data, std::size_t n);

}  // namespace cvx
