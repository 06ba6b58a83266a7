#include "cvx/simplex_lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace cvx {

namespace {
constexpr double kEps = 1e-11;

// tableau simplex on  min c.x, Ax = b, x >= 0  with a given starting basis
bool run_simplex(Eigen::MatrixXd& T, std::vector<int>& basis, int nvars) {
  const int m = int(T.rows()) - 1;
  for (int iter = 0; iter < 20000; ++iter) {
    int enter = -1;
    for (int j = 0; j < nvars; ++j)
      if (T(m, j) < -kEps) {
        enter = j;  // Bland: first improving column
        break;
      }
    if (enter < 0) return true;
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
      if (T(i, enter) > kEps) {
        double ratio = T(i, nvars) / T(i, enter);
        if (ratio < best - kEps ||
            (ratio < best + kEps && (leave < 0 || basis[i] < basis[leave]))) {
          best = ratio;
          leave = i;
        }
      }
    if (leave < 0) return false;  // unbounded
    T.row(leave) /= T(leave, enter);
    for (int i = 0; i <= m; ++i)
      if (i != leave && std::abs(T(i, enter)) > 0)
        T.row(i) -= T(i, enter) * T.row(leave);
    basis[leave] = enter;
  }
  return false;
}
}  // namespace

LpResult solve_lp(const Eigen::MatrixXd& A_in, const Eigen::VectorXd& b_in,
                  const Eigen::VectorXd& c) {
  const int m = int(A_in.rows());
  const int n = int(A_in.cols());
  Eigen::MatrixXd A = A_in;
  Eigen::VectorXd b = b_in;
  for (int i = 0; i < m; ++i)
    if (b[i] < 0) {
      A.row(i) *= -1;
      b[i] *= -1;
    }

  // phase 1: artificial variables
  int nv = n + m;
  Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m + 1, nv + 1);
  T.block(0, 0, m, n) = A;
  T.block(0, n, m, m) = Eigen::MatrixXd::Identity(m, m);
  T.block(0, nv, m, 1) = b;
  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;
  for (int j = 0; j < n; ++j) T(m, j) = -A.col(j).sum();
  T(m, nv) = -b.sum();

  LpResult res;
  if (!run_simplex(T, basis, nv)) return res;
  if (T(m, nv) < -1e-7) return res;  // infeasible

  // drive artificials out of the basis where possible
  for (int i = 0; i < m; ++i)
    if (basis[i] >= n) {
      int pivot = -1;
      for (int j = 0; j < n; ++j)
        if (std::abs(T(i, j)) > 1e-9) {
          pivot = j;
          break;
        }
      if (pivot >= 0) {
        T.row(i) /= T(i, pivot);
        for (int r = 0; r <= m; ++r)
          if (r != i && std::abs(T(r, pivot)) > 0)
            T.row(r) -= T(r, pivot) * T.row(i);
        basis[i] = pivot;
      }
    }

  // phase 2
  Eigen::MatrixXd T2 = Eigen::MatrixXd::Zero(m + 1, n + 1);
  T2.block(0, 0, m, n) = T.block(0, 0, m, n);
  T2.block(0, n, m, 1) = T.block(0, nv, m, 1);
  for (int j = 0; j < n; ++j) T2(m, j) = c[j];
  for (int i = 0; i < m; ++i)
    if (basis[i] < n && std::abs(T2(m, basis[i])) > 0)
      T2.row(m) -= T2(m, basis[i]) * T2.row(i);

  if (!run_simplex(T2, basis, n)) {
    res.feasible = true;
    res.bounded = false;
    return res;
  }

  res.feasible = true;
  res.x = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = T2(i, n);
  res.objective = c.dot(res.x);
  return res;
}

}  // namespace cvx
