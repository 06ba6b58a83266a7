#pragma once

#include <functional>
#include <optional>

#include "cvx/geometry.hpp"
#include "cvx/multipliers.hpp"
#include "cvx/partition.hpp"
#include "cvx/profile.hpp"
#include "cvx/snapshot.hpp"

namespace cvx {

// One rung of the iteration: a solution of the balance system
//   d_t v + div(v (x) v) + grad p = div rring,  div v = 0
// together with the stage size delta.
struct EulerReynoldsState {
  SpectralVectorField v;
  SpectralScalarField p;
  SpectralMatrixField rring;
  double delta = 1.0;
  int stage_index = 0;

  const Grid3& grid() const { return v.grid(); }
  const TimeGrid& time_grid() const { return v.time_grid(); }
};

struct StageParams {
  int lambda = 8;
  int mu = 1;
  double alpha = 0.05;
  double beta = 0.4;
  Grid3 grid;
  TimeGrid time_grid;
};

struct StageConstants {
  double eta = 0.0;
  double big_m = 1.05;
};

struct StageTargets {
  std::vector<double> rho;  // per time sample
};

struct StagePreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// rho(t) and the admissibility checks: energy band, stress bound, and the
// pointwise chart-domain condition on rring/rho
StageTargets compute_stage_targets(const EulerReynoldsState& state,
                                   const EnergyProfile& e,
                                   const StageConstants& consts,
                                   const DirectionSystem& sys);

// principal oscillatory perturbation, sampled pseudo-spectrally on the grid
SpectralVectorField build_w_o(const EulerReynoldsState& state,
                              const StageTargets& targets,
                              const DirectionSystem& sys,
                              const PhasePartition& pp,
                              const BeltramiBasis& basis,
                              const StageParams& params);

// w_c = -Q w_o restores the divergence constraint
SpectralVectorField build_corrector(const SpectralVectorField& w_o);

// p1 = p - |w_o|^2 / 2
SpectralScalarField build_pressure(const SpectralScalarField& p,
                                   const SpectralVectorField& w_o);

// stress closing the balance for (v1, p1); argument mean must vanish
SpectralMatrixField build_reynolds(const SpectralVectorField& v1,
                                   const SpectralScalarField& p1,
                                   double mean_tol = 1e-8);

struct DecompositionReport {
  double sup_transport = 0;
  double sup_oscillation = 0;
  double sup_error1 = 0;
  double sup_error2 = 0;
  double sup_error3 = 0;
  double sup_input = 0;   // residual carried by the incoming state
  double residual = 0;    // relative defect of the regrouped sum
};

struct StageReport {
  int stage_index = 0;
  int lambda = 0;
  int mu = 0;
  int grid_n = 0;
  int time_samples = 0;
  int shell_norm = 0;
  double alpha = 0, beta = 0;
  double delta_in = 1, delta_out = 0.5;
  double eta = 0, big_m = 0, r0 = 0;

  std::vector<double> t, e, rho, energy_in, energy_out;
  double sup_rring_in = 0, sup_rring_out = 0;
  double sup_w_o = 0, sup_w_c = 0, sup_w = 0, sup_dp = 0;
  double reynolds_target = 0, c0_target = 0, pressure_target = 0,
         wo_target = 0;
  double max_mean_residual = 0;
  bool energy_band_ok = false, c0_ok = false, pressure_ok = false,
       reynolds_ok = false, wo_bound_ok = false, success = false;
  std::optional<DecompositionReport> decomposition;
  std::string note;

  std::string render_json() const;
};

struct StageOptions {
  bool compute_decomposition = false;
  double sparse_threshold = 1e-13;
  double mean_tolerance = 1e-8;
  std::int64_t state_bytes_budget = std::int64_t(2) << 30;
  std::string note;
};

struct StageOutput {
  StageReport report;
  bool has_state = false;
  EulerReynoldsState state;
};

// one construction step; postcondition failures are recorded in the report,
// precondition failures raise StagePreconditionError
StageOutput run_stage(const EulerReynoldsState& state, const EnergyProfile& e,
                      const DirectionSystem& sys, const PhasePartition& pp,
                      const BeltramiBasis& basis, const StageParams& params,
                      const StageConstants& consts,
                      const StageOptions& opts = {});

// certified amplitude constant: 1 < M with sup|w_o| <= sqrt(M delta)/2 for
// every admissible state of the given profile
double calibrate_M(const EnergyProfile& e, const DirectionSystem& sys,
                   double margin = 1.02);

struct ParamConfig {
  double alpha = 0.05;
  double beta = 0.4;
  std::vector<int> lambda_schedule;  // explicit; empty means doubling
  int lambda_start = 8;
  double grid_rule = 4.0;
  int time_samples = 5;
};

StageParams choose_params(double delta, int stage_index,
                          const ParamConfig& cfg, const DirectionSystem& sys);

struct IterationConfig {
  ParamConfig params;
  int stage_budget = 1;
  int grid_cap = 512;
  StageOptions stage_options;
  std::function<void(int, const StageReport&, const EulerReynoldsState*)>
      on_stage;
};

struct IterationResult {
  std::vector<StageReport> reports;
  std::vector<std::string> events;
  bool has_final_state = false;
  EulerReynoldsState final_state;
};

IterationResult run_iteration(const EnergyProfile& e,
                              const DirectionSystem& sys,
                              const IterationConfig& cfg,
                              const EulerReynoldsState* resume_state = nullptr,
                              int resume_index = 0);

// ---------------------------------------------------------------------------
// synthetic states (exact by construction)
// ---------------------------------------------------------------------------
// closes the balance with rring := Rinv(d_t v + div(v(x)v) + grad p)
EulerReynoldsState make_state(SpectralVectorField v, SpectralScalarField p,
                              double delta = 1.0, int stage_index = 0);
EulerReynoldsState make_zero_state(const Grid3& g, const TimeGrid& tg);
// v = (0,0,u), u = amplitude (1 + wobble sin(2 pi t)) sin(x1) [cos(x2)]
EulerReynoldsState make_shear_state(const Grid3& g, const TimeGrid& tg,
                                    double amplitude, double wobble,
                                    bool vary_x2);
// profile c (1 + 0.05 t) clearing the delta = 1 energy band and stress bound
EnergyProfile band_profile(const EulerReynoldsState& state,
                           const DirectionSystem& sys, double safety = 1.2);

}  // namespace cvx
