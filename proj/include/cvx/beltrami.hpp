#pragma once

#include <Eigen/Core>

#include <vector>

#include "cvx/spectral_field.hpp"

namespace cvx {

using Vector3cd = Eigen::Vector3cd;

// all integer vectors with |k|^2 = norm2
std::vector<Vector3i> shell_vectors(int norm2);
// first nonzero component positive
bool lex_positive(const Vector3i& k);

// Orthogonal frame data on one lattice shell: per pair {k,-k} a real vector
// A with A.k = 0, |A| = 1/sqrt(2), A_{-k} = A_k, and B_k = A + i k/|k| x A.
struct BeltramiBasis {
  struct Entry {
    Vector3i k;    // canonical (lexicographically positive) representative
    Vector3d A;
    Vector3cd B;   // value at +k; B_{-k} = conj(B)
  };
  int shell_norm = 0;
  double lambda0 = 0.0;  // sqrt(shell_norm), the curl eigenvalue
  std::vector<Entry> pairs;

  Vector3cd B_at(const Vector3i& k) const;  // any shell vector
  int pair_index(const Vector3i& k) const;  // index ignoring sign, -1 if none
};

// complex amplitude per pair, taken at the canonical representative;
// the opposite mode carries the conjugate so assembled flows are real
struct BeltramiCoefficients {
  std::vector<Complex> a;
};

BeltramiBasis build_basis(int lambda0);
BeltramiBasis build_basis_norm(int shell_norm);

// W(x) = sum over the shell of a_k B_k e^{ik.x}, replicated on every time
// sample of tg; divergence-free with curl W = lambda0 W
SpectralVectorField assemble_flow(const BeltramiBasis& basis,
                                  const BeltramiCoefficients& coeffs,
                                  const Grid3& grid,
                                  const TimeGrid& tg = TimeGrid(1));

// closed form of the average of W (x) W: 1/2 sum |a_k|^2 (Id - khat khat^T)
Matrix3d mean_stress(const BeltramiBasis& basis,
                     const BeltramiCoefficients& coeffs);

}  // namespace cvx
