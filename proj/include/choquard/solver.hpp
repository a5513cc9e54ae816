#pragma once

#include <string>

#include "choquard/energy.hpp"
#include "choquard/symmetry.hpp"

namespace choquard {

struct InitialGuess {
  std::string preset = "single_bump";  // single_bump | ring_bumps | zero
  double radius = 4.0;                 // ring radius rho_0
  double width = 1.0;                  // Gaussian width
  double amplitude = 1.0;
};

struct SolveConfig {
  int max_iter = 500;
  double tol_grad = 1e-9;
  double tol_nehari = 1e-10;
  double armijo_c = 1e-4;
  double step_floor = 1e-8;
  int symmetrize_every = 1;
  std::uint64_t seed = 0;
  InitialGuess guess;
};

struct TraceRow {
  int iter = 0;
  double j = 0.0;
  double grad_res = 0.0;
  double nehari_res = 0.0;
  double equiv_defect = 0.0;
};

struct SolveReport {
  ComplexField field;
  double j = 0.0;
  double norm_av_sq = 0.0;
  double d_value = 0.0;
  double t_u_drift = 0.0;        // |nehari_scale(u) - 1|
  double grad_residual = 0.0;
  double nehari_residual = 0.0;
  double equivariance_defect = 0.0;
  int winding = 0;
  bool winding_valid = false;
  bool converged = false;
  int iterations = 0;
  double wall_seconds = 0.0;
  double boundary_mass_fraction = 0.0;
  std::vector<TraceRow> trace;
};

/// Gaussian bump presets mirroring where low-energy equivariant mass sits:
/// `ring_bumps` places k phased copies at the ring radius, `single_bump`
/// one at the origin.
ComplexField initial_guess_field(const Grid& grid, const SymmetrySpec& spec,
                                 const InitialGuess& guess);

/// Equivariant Nehari-constrained descent on the grid. Iterates
/// descend -> rescale -> symmetrize until both residuals pass, or
/// max_iter with a non-converged report.
SolveReport solve(const EnergyContext& ctx, const SymmetrySpec& spec,
                  const SolveConfig& cfg);

struct PsSummary {
  bool is_ps_like = false;
  double c_estimate = 0.0;
  double residual_slope = 0.0;  // log-residual decay per iteration
  bool stagnation = false;
  double boundary_mass_fraction = 0.0;
};

/// Palais-Smale style monitor: bounded energy plus vanishing residual.
PsSummary ps_monitor(const SolveReport& report);

/// Mass fraction within one decay length of the box boundary.
double boundary_mass_fraction(const ComplexField& u);

}  // namespace choquard
