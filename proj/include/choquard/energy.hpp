#pragma once

#include "choquard/field.hpp"
#include "choquard/nonlocal.hpp"

namespace choquard {

/// Everything needed to evaluate the functional on one grid.
struct EnergyContext {
  ProblemParams params;
  PotentialPair pot;
  RieszKernel kernel;
  double sigma = 1.0;  // shift of the constant-coefficient preconditioner

  const Grid& grid() const { return kernel.grid; }
};

EnergyContext make_context(const ProblemParams& params, PotentialPair pot,
                           const Grid& grid);

/// J(u) = 1/2 ||u||_{A,V}^2 - 1/(2p) D(u).
double j_value(const ComplexField& u, const EnergyContext& ctx);

/// The directional derivative J'(u)v.
double j_prime(const ComplexField& u, const ComplexField& v,
               const EnergyContext& ctx);

/// L2 residual w with J'(u)v = Re int w conj(v): the Euler-Lagrange
/// operator applied to u.
ComplexField euler_lagrange(const ComplexField& u, const EnergyContext& ctx);

/// Riesz representative of J'(u) in the (-Laplace + sigma) inner product:
/// <grad_j(u), v>_sigma = J'(u)v for all v.
ComplexField grad_j(const ComplexField& u, const EnergyContext& ctx);

/// t_u = (||u||_{A,V}^2 / D(u))^{1/(2p-2)}; t_u u lies on the Nehari
/// manifold. Throws when u = 0 or D(u) = 0.
double nehari_scale(const ComplexField& u, const EnergyContext& ctx);
double nehari_scale_from(double norm_sq, double d_value, double p);

/// max_{t>=0} J(tu) in closed form,
/// ((p-1)/2p) (||u||^2 / D(u)^{1/p})^{p/(p-1)}.
double mountain_pass_value(const ComplexField& u, const EnergyContext& ctx);
double mountain_pass_from(double norm_sq, double d_value, double p);

}  // namespace choquard
