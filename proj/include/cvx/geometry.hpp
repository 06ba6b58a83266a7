#pragma once

#include <Eigen/Dense>

#include <array>
#include <random>
#include <string>
#include <vector>

#include "cvx/beltrami.hpp"

namespace cvx {

// ---------------------------------------------------------------------------
// Rational points on the unit sphere (inverse stereographic images of Q^2).
// ---------------------------------------------------------------------------
struct RationalPoint {
  long long x = 0, y = 0, z = 0, den = 1;  // exact: x^2+y^2+z^2 = den^2
  Vector3d approx() const {
    return Vector3d(double(x), double(y), double(z)) / double(den);
  }
};

// images of (p/q, r/t) with |p|,|r| <= bound and 1 <= q,t <= bound,
// deduplicated; every output lies exactly on the sphere
std::vector<RationalPoint> rational_sphere_points(int denominator_bound);

// largest gap to a quasi-uniform probe set (Fibonacci directions)
double covering_radius(const std::vector<RationalPoint>& pts, int probes);

// ---------------------------------------------------------------------------
// Direction systems: per velocity-lattice parity class, a symmetric set of
// lattice directions on one shell together with a smooth positive coefficient
// chart reconstructing matrices near the identity.
// ---------------------------------------------------------------------------
Matrix3d projection_matrix(const Vector3i& k);  // Id - khat khat^T
double sym_op_norm(const Matrix3d& m);
int parity_class(const Vector3i& l);  // 0..7

struct SimplexChart {
  static constexpr double kAlpha = 2.0 / 3.0;

  std::array<Matrix3d, 7> vertices;
  std::array<std::vector<double>, 7> carath;  // weights over pairs, positive
  double alpha = kAlpha;
  double theta = 0.0;      // inner radius of the simplex around alpha*Id
  double r0 = 0.0;         // domain radius (operator-norm ball at Id)
  double lp_margin = 0.0;  // certified min weight of the center combination
  Eigen::Matrix<double, 7, 1> beta0;       // center coordinates
  Eigen::Matrix<double, 7, 7> solve_mat;   // 6 component rows + null row
  // consolidated affine coefficient map lambda_p(R) = base_p + <G_p, R - Id>
  std::vector<double> base;
  std::vector<Matrix3d> gmat;

  // coordinates of alpha*R in the pinned vertex solve
  Eigen::Matrix<double, 7, 1> beta_of(const Matrix3d& R) const;
  // per-pair coefficients; exact reconstruction sum lambda_p M_p = R
  Eigen::VectorXd lambdas(const Matrix3d& R) const;
};

struct DirectionFamily {
  std::vector<Vector3i> pair_reps;  // canonical representatives, sorted
  SimplexChart chart;

  bool empty() const { return pair_reps.empty(); }
  std::vector<Vector3i> all_vectors() const;
  int pair_index(const Vector3i& k) const;  // sign-insensitive, -1 if absent
};

struct DirectionSystem {
  int shell_norm = 0;
  double lambda0 = 0.0;
  double r0 = 0.0;
  bool partial = false;  // true when some classes are intentionally empty
  std::array<DirectionFamily, 8> families;  // indexed by parity_class

  int family_of(const Vector3i& k) const;  // -1 if on no family
};

struct ChartError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct SystemSearchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// chart for one symmetric pair set; throws ChartError with the reason
SimplexChart build_chart(const std::vector<Vector3i>& pair_reps);

// certified margin of (2/3)Id inside the hull of the pair projections
// (largest m with a convex combination whose weights are all >= m);
// 0 when infeasible.  weights receives the maximizing combination.
double center_margin(const std::vector<Vector3i>& pair_reps,
                     Eigen::VectorXd* weights = nullptr);

// gamma coefficient sqrt(lambda_pair); domain error outside B_r0(Id)
double gamma_coeff(const DirectionSystem& sys, int family, const Vector3i& k,
                   const Matrix3d& R);
// (1/2) sum_{k in family} gamma_k^2 (Id - khat khat^T)
Matrix3d reconstruct(const DirectionFamily& fam, const Matrix3d& R);

double compute_eta(const DirectionSystem& sys, double energy_min);

// full eight-class search over integer shell norms with sqrt(norm) <= bound
DirectionSystem find_direction_system(int search_bound);

// pinned partial systems: "shell2_single", "shell5_single", "shell5_pair"
DirectionSystem make_preset_system(const std::string& name);

// invariant checks; throws with a description on violation
void validate_system(const DirectionSystem& sys, std::uint64_t seed,
                     int samples = 1000, double tol = 1e-10);

std::string serialize(const DirectionSystem& sys);
DirectionSystem parse_direction_system(const std::string& text);

}  // namespace cvx
