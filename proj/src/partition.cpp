#include "cvx/partition.hpp"

#include <cmath>

namespace cvx {

double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  double a = std::exp(-1.0 / x);
  double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double mollifier(const PhasePartition& pp, const Vector3d& v) {
  double r2 = v.squaredNorm();
  return smooth_step((pp.c2 * pp.c2 - r2) / (pp.c2 * pp.c2 - pp.c1 * pp.c1));
}

namespace {
// squared normalization sum over the corners of the cell containing v
double bump_sum_sq(const PhasePartition& pp, const Vector3d& v) {
  Vector3i base(int(std::floor(v[0])), int(std::floor(v[1])),
                int(std::floor(v[2])));
  double sum = 0;
  for (int c = 0; c < 8; ++c) {
    Vector3i l = base + Vector3i(c & 1, (c >> 1) & 1, (c >> 2) & 1);
    double b = mollifier(pp, v - l.cast<double>());
    sum += b * b;
  }
  return sum;
}
}  // namespace

double alpha_weight(const PhasePartition& pp, const Vector3i& l,
                    const Vector3d& v) {
  double b = mollifier(pp, v - l.cast<double>());
  if (b == 0.0) return 0.0;
  return b / std::sqrt(bump_sum_sq(pp, v));
}

Vector3i active_cell(const Vector3d& u, int parity) {
  Vector3i base(int(std::floor(u[0])), int(std::floor(u[1])),
                int(std::floor(u[2])));
  Vector3i l = base;
  for (int a = 0; a < 3; ++a) {
    int want = (parity >> a) & 1;
    int have = ((base[a] % 2) + 2) % 2;
    if (want != have) l[a] += 1;
  }
  return l;
}

Complex phi_k(const PhasePartition& pp, int j, const Vector3i& k,
              const Vector3d& v, double tau) {
  require(j >= 0 && j < 8, "phi_k: class index must be 0..7");
  Vector3d u = double(pp.mu) * v;
  Vector3i l = active_cell(u, j);
  double a = alpha_weight(pp, l, u);
  if (a == 0.0) return Complex(0);
  double phase = -double(k.dot(l)) / double(pp.mu) * tau;
  return a * std::polar(1.0, phase);
}

Complex transport_defect(const PhasePartition& pp, int j, const Vector3i& k,
                         const Vector3d& v, double tau) {
  Complex phi = phi_k(pp, j, k, v, tau);
  if (phi == Complex(0)) return Complex(0);
  Vector3i l = active_cell(double(pp.mu) * v, j);
  double kv = k.cast<double>().dot(v - l.cast<double>() / double(pp.mu));
  return Complex(0, 1) * kv * phi;
}

}  // namespace cvx
