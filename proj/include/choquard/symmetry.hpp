#pragma once

#include "choquard/field.hpp"

namespace choquard {

/// tau(g_j) = exp(2 pi i j m / k), computed from exact integer phases.
cxd tau_phase(const SymmetrySpec& spec, int j);

/// True when rotation by 2 pi j / k maps the lattice to itself for all j
/// (k in {1, 2, 4}).
bool lattice_exact(const SymmetrySpec& spec);

/// The group action (u_g)(x) = tau(g) u(g^{-1} x) for g = g_j.
/// Lattice-exact orders use index permutation; others bilinear resampling.
ComplexField act(const ComplexField& u, int j, const SymmetrySpec& spec);

/// Averaging projector onto the tau-equivariant subspace.
ComplexField symmetrize(const ComplexField& u, const SymmetrySpec& spec);

/// Relative deviation of u from its symmetrization.
double equivariance_defect(const ComplexField& u, const SymmetrySpec& spec);

/// Discrete winding number of arg u around the circle of given radius in
/// the rotation plane. Throws if the loop passes too close to a zero or
/// the phase total is not cleanly integral (guard band 0.25).
int winding_number(const ComplexField& u, double radius,
                   const SymmetrySpec& spec, int samples = 256);

struct CompatReport {
  double max_a_violation = 0.0;  // max |A(gx) - gA(x)|
  double max_v_violation = 0.0;  // max |V(gx) - V(x)|
  double tolerance = 0.0;
  bool compatible = false;
};

/// Verifies A(gx) = gA(x) and V(gx) = V(x) nodewise over all group
/// elements; tolerance 1e-8 for lattice-exact k, 1e-5 for resampled k.
CompatReport compat_check(const PotentialPair& pot, const SymmetrySpec& spec);

}  // namespace choquard
