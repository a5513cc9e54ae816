#pragma once

#include "choquard/energy.hpp"
#include "choquard/radial.hpp"
#include "choquard/symmetry.hpp"

namespace choquard {

/// C^1 polynomial smoothstep cutoff: 1 on [0, 1-eps], 0 on [1, inf).
double chi_cutoff(double t, double eps);

/// chi(|x| / R) * u, radial version.
std::vector<double> cutoff_profile(const std::vector<double>& values,
                                   const RadialMesh& mesh, double r_cut,
                                   double eps);

/// chi(|x - center| / R) * u on the grid.
ComplexField cutoff_field(const ComplexField& u, double r_cut, double eps,
                          const std::array<double, 3>& center = {0, 0, 0});

/// R_y = [(kappa + 2 delta sqrt(mu)) / (4 delta sqrt(mu))] delta |y|;
/// requires 0 < kappa < 2 delta sqrt(mu), which makes R_y < delta |y|.
double cutoff_radius(double kappa, double delta, double mu, double y_norm);

/// Deterministic choice of mu in (0, V_inf) with kappa < 2 delta sqrt(mu).
double choose_mu(double v_inf, double kappa, double delta);

/// Upper end of the admissible eps window for the cutoff,
/// (2 delta sqrt(mu) - kappa) / (2 delta sqrt(mu) + kappa).
double eps_window_max(double kappa, double delta, double mu);

struct CutoffScanRow {
  double r_cut = 0.0;
  double delta_d = 0.0;     // |D(w) - D(w^R)|
  double delta_grad = 0.0;  // int | |grad w|^2 - |grad w^R|^2 |
};

struct CutoffScan {
  std::vector<CutoffScanRow> rows;
  double slope_d = 0.0;     // fitted exponential rate of delta_d vs R
  double slope_grad = 0.0;  // same for delta_grad
  double target_d = 0.0;    // p sqrt(mu) (1 - eps)
  double target_grad = 0.0; // 2 sqrt(mu) (1 - eps)
};

/// Tail-loss scan of the cutoff at a list of radii, with log-linear fits
/// of both loss columns against R.
CutoffScan cutoff_decay_scan(const RadialProfile& profile, double p, double mu,
                             double eps, const std::vector<double>& r_list,
                             int dim, double alpha);

struct BumpPlan {
  RadialProfile base;   // omega_infty, the V_inf ground state
  double y_norm = 6.0;  // |y| = rho_0
  double r_cut = 0.0;   // R_y
  double mu = 0.0;
  double eps = 0.0;
  SymmetrySpec spec;
};

BumpPlan make_bump_plan(const RadialProfile& base, double y_norm, double kappa,
                        double v_inf, const SymmetrySpec& spec);

/// theta = sum_{j} tau(g_j) (omega^{R_y}) translated to the j-th orbit
/// point of y = rho_0 e_plane0; equivariant by construction.
ComplexField build_theta(const BumpPlan& plan, const Grid& grid);

/// Single translated cutoff bump (the j = 0 summand of theta).
ComplexField build_single_bump(const BumpPlan& plan, const Grid& grid);

struct ThresholdReport {
  int k = 0;
  int m = 0;
  double rho0 = 0.0;
  double r_y = 0.0;
  double mu = 0.0;
  double eps = 0.0;
  double max_t_j_theta = 0.0;
  double k_e_vinf = 0.0;
  double gap = 0.0;           // k E_{V_inf} - max_t J(t theta)
  double cross_term = 0.0;    // long-range excess D(theta) - k D(single)
  double single_gap = 0.0;    // E_{V_inf} - max_t J(t single), per-bump gap
  bool h2_ok = false;
  double h2_worst = 0.0;      // worst nodewise slack of the (H2) bound
  bool certified = false;
};

/// Evaluates the multi-bump test function against the compactness
/// threshold k E_{V_inf}. Refuses when the (H2) preset data are invalid
/// (c0 <= 0, kappa out of range) or the nodewise bound fails.
ThresholdReport threshold_certificate(const BumpPlan& plan,
                                      const EnergyContext& ctx,
                                      double e_vinf);

struct ThresholdSweep {
  std::vector<ThresholdReport> reports;
  double d0_fit = 0.0;
  double kappa_fit = 0.0;   // fitted decay rate of the per-bump gap
  bool all_positive = false;
};

/// rho_0-sweep of certificates with a log-linear fit of the per-bump
/// gap against |y|.
ThresholdSweep threshold_sweep(const RadialProfile& base,
                               const std::vector<double>& y_norms,
                               const EnergyContext& ctx,
                               const SymmetrySpec& spec, double e_vinf);

}  // namespace choquard
