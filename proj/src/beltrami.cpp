#include "cvx/beltrami.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cmath>

namespace cvx {

std::vector<Vector3i> shell_vectors(int norm2) {
  std::vector<Vector3i> out;
  int m = int(std::floor(std::sqrt(double(norm2)))) + 1;
  for (int a = -m; a <= m; ++a)
    for (int b = -m; b <= m; ++b)
      for (int c = -m; c <= m; ++c)
        if (a * a + b * b + c * c == norm2) out.emplace_back(a, b, c);
  std::sort(out.begin(), out.end(), [](const Vector3i& x, const Vector3i& y) {
    return std::lexicographical_compare(x.data(), x.data() + 3, y.data(),
                                        y.data() + 3);
  });
  return out;
}

bool lex_positive(const Vector3i& k) {
  for (int i = 0; i < 3; ++i) {
    if (k[i] > 0) return true;
    if (k[i] < 0) return false;
  }
  return false;
}

Vector3cd BeltramiBasis::B_at(const Vector3i& k) const {
  int idx = pair_index(k);
  require(idx >= 0, "B_at: vector not on the shell");
  return lex_positive(k) ? pairs[idx].B : pairs[idx].B.conjugate();
}

int BeltramiBasis::pair_index(const Vector3i& k) const {
  Vector3i c = lex_positive(k) ? k : Vector3i(-k);
  for (std::size_t i = 0; i < pairs.size(); ++i)
    if (pairs[i].k == c) return int(i);
  return -1;
}

BeltramiBasis build_basis(int lambda0) {
  require(lambda0 >= 1, "build_basis: lambda0 must be positive");
  return build_basis_norm(lambda0 * lambda0);
}

BeltramiBasis build_basis_norm(int shell_norm) {
  auto shell = shell_vectors(shell_norm);
  if (shell.empty())
    throw std::invalid_argument("build_basis: empty shell (norm " +
                                std::to_string(shell_norm) + ")");
  BeltramiBasis basis;
  basis.shell_norm = shell_norm;
  basis.lambda0 = std::sqrt(double(shell_norm));
  for (const auto& k : shell) {
    if (!lex_positive(k)) continue;
    Vector3d kd = k.cast<double>();
    // first axis vector not parallel to k
    Vector3d e = Vector3d::Zero();
    for (int a = 0; a < 3; ++a) {
      Vector3d cand = Vector3d::Unit(a);
      if (kd.cross(cand).norm() > 0) {
        e = cand;
        break;
      }
    }
    Vector3d A = kd.cross(e).normalized() / std::sqrt(2.0);
    Vector3d khat = kd.normalized();
    Vector3cd B = A.cast<Complex>() +
                  Complex(0, 1) * khat.cross(A).cast<Complex>();
    basis.pairs.push_back({k, A, B});
  }
  return basis;
}

SpectralVectorField assemble_flow(const BeltramiBasis& basis,
                                  const BeltramiCoefficients& coeffs,
                                  const Grid3& grid, const TimeGrid& tg) {
  require(coeffs.a.size() == basis.pairs.size(),
          "assemble_flow: coefficient count mismatch");
  int maxcomp = 0;
  for (const auto& p : basis.pairs)
    maxcomp = std::max(maxcomp, p.k.cwiseAbs().maxCoeff());
  require(maxcomp <= grid.n / 2 - 1, "assemble_flow: grid does not resolve the shell");

  SpectralVectorField w(grid, tg);
  for (int t = 0; t < tg.samples; ++t)
    for (std::size_t p = 0; p < basis.pairs.size(); ++p) {
      Vector3cd coeff = coeffs.a[p] * basis.pairs[p].B;
      for (int c = 0; c < 3; ++c)
        w.comp[c].set_mode(t, basis.pairs[p].k, coeff[c]);
    }
  w.solenoidal = true;
  return w;
}

Matrix3d mean_stress(const BeltramiBasis& basis,
                     const BeltramiCoefficients& coeffs) {
  Matrix3d m = Matrix3d::Zero();
  for (std::size_t p = 0; p < basis.pairs.size(); ++p) {
    Vector3d khat = basis.pairs[p].k.cast<double>().normalized();
    m += std::norm(coeffs.a[p]) *
         (Matrix3d::Identity() - khat * khat.transpose());
  }
  return m;
}

}  // namespace cvx
