#pragma once

#include <vector>

#include "choquard/params.hpp"

namespace choquard {

struct RadialMesh {
  double r_max = 30.0;
  int m_nodes = 1200;

  double dr() const { return r_max / (m_nodes - 1); }
  double r(int i) const { return i * dr(); }
};

struct RadialProfile {
  RadialMesh mesh;
  std::vector<double> values;
  double lambda = 1.0;
  double energy = 0.0;
  double norm_sq = 0.0;
  double d_value = 0.0;
  double nehari_residual = 0.0;
  double grad_residual = 0.0;
  int iterations = 0;
  bool converged = false;
  std::vector<double> residual_trace;
};

/// Dense radial reduction of the Riesz convolution on a fixed mesh:
/// (K * f)(r_i) = sum_j M_ij f_j. N = 3, alpha = 1 uses the exact
/// Newtonian shell formula; other (N, alpha) the reduced angular kernel.
class RadialConvolution {
 public:
  RadialConvolution(const RadialMesh& mesh, int dim, double alpha);

  std::vector<double> apply(const std::vector<double>& f) const;

  /// D(u) = f^T B f with f = u^p, B the quadrature-weighted symmetric form.
  double d_functional(const std::vector<double>& u, double p) const;

  /// Gradient of D with respect to the nodal values:
  /// (dD/du)_i = 2 p (B f)_i u_i^{p-1}.
  std::vector<double> d_gradient(const std::vector<double>& u, double p) const;

  const RadialMesh& mesh() const { return mesh_; }
  int dim() const { return dim_; }
  double alpha() const { return alpha_; }
  double quad_weight(int i) const { return weight_[i]; }

 private:
  RadialMesh mesh_;
  int dim_;
  double alpha_;
  std::vector<double> conv_;    // M, row-major
  std::vector<double> form_;    // B = (diag(w) M + M^T diag(w)) / 2
  std::vector<double> weight_;  // quadrature weights of the radial measure
};

/// (K * f)(r) for a nonnegative radial profile f; standalone convenience
/// wrapper around RadialConvolution.
std::vector<double> radial_convolve(const std::vector<double>& f,
                                    const RadialMesh& mesh, int dim,
                                    double alpha);

struct RadialSolveConfig {
  int max_iter = 2000;
  double tol_grad = 1e-9;
  double tol_nehari = 1e-10;
  double armijo_c = 1e-4;
  double step_floor = 1e-8;
  double init_width = 0.0;  // 0 -> 1/sqrt(lambda)
};

/// Computes the positive radial ground state of the limit problem
/// -Lap u + lambda u = (K * u^p) u^{p-1} by preconditioned descent with
/// Nehari rescaling and positivity projection.
RadialProfile solve_ground_state(double lambda, const ProblemParams& params,
                                 const RadialMesh& mesh,
                                 const RadialSolveConfig& cfg = {});

struct DecayFit {
  double rate = 0.0;      // exponential rate
  double power = 0.0;     // algebraic prefactor exponent
  double offset = 0.0;
  double residual = 0.0;  // rms of the log-space fit
};

/// Least squares of log u(r) = c - rate * r - power * log r on [r_lo, r_hi].
DecayFit decay_fit(const RadialProfile& profile, double r_lo, double r_hi);
DecayFit decay_fit_values(const std::vector<double>& r,
                          const std::vector<double>& u);

/// Centered second-order derivative of the profile values.
std::vector<double> radial_derivative(const RadialProfile& profile);

/// Surface measure of the unit sphere in the given dimension.
double sphere_area(int dim);

}  // namespace choquard
