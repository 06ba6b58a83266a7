#pragma once

#include <Eigen/Core>

#include "cvx/geometry.hpp"

namespace cvx {

// Velocity-space partition of unity on the integer lattice, scaled by mu,
// with one bump class per parity of the lattice point.  Each point of
// velocity space is covered by the eight corners of its cell, one per class.
struct PhasePartition {
  double c1 = 0.90;
  double c2 = 0.95;
  int mu = 1;

  PhasePartition() = default;
  explicit PhasePartition(int mu_, double c1_ = 0.90, double c2_ = 0.95)
      : c1(c1_), c2(c2_), mu(mu_) {
    require(mu >= 1, "PhasePartition: mu must be a positive integer");
    require(std::sqrt(3.0) / 2.0 < c1 && c1 < c2 && c2 < 1.0,
            "PhasePartition: need sqrt(3)/2 < c1 < c2 < 1");
  }
};

// smooth step: 0 for x <= 0, 1 for x >= 1
double smooth_step(double x);
// radial bump, 1 on |v| <= c1, 0 on |v| >= c2
double mollifier(const PhasePartition& pp, const Vector3d& v);

// alpha_l(v) = phi(v - l)/sqrt(sum_m phi(v - m)^2); at most the eight cell
// corners contribute to the normalization
double alpha_weight(const PhasePartition& pp, const Vector3i& l,
                    const Vector3d& v);

// the unique corner of the cell of u with the given parity class
Vector3i active_cell(const Vector3d& u, int parity);

// phi_k^{(j)}(v,tau) = alpha_l(mu v) e^{-i (k.l/mu) tau} with l the active
// class-j corner of mu v
Complex phi_k(const PhasePartition& pp, int j, const Vector3i& k,
              const Vector3d& v, double tau);

// d/dtau phi + i (k.v) phi  =  i k.(v - l/mu) phi, evaluated analytically
Complex transport_defect(const PhasePartition& pp, int j, const Vector3i& k,
                         const Vector3d& v, double tau);

}  // namespace cvx
