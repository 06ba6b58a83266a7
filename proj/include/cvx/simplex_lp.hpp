#pragma once

#include <Eigen/Dense>

#include <vector>

namespace cvx {

// minimize c.x subject to A x = b, x >= 0 (dense two-phase simplex,
// Bland's rule).  Sizes here are tiny (tens of variables).
struct LpResult {
  bool feasible = false;
  bool bounded = true;
  double objective = 0.0;
  Eigen::VectorXd x;
};

LpResult solve_lp(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                  const Eigen::VectorXd& c);

}  // namespace cvx
