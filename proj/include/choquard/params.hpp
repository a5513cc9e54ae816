#pragma once

#include <array>
#include <string>
#include <vector>

namespace choquard {

/// Half-open/closed real interval with explicit endpoint closure flags.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  bool empty(double tol = 0.0) const {
    if (lo > hi + tol) return true;
    if (lo >= hi - tol && lo <= hi + tol) return !(lo_closed && hi_closed);
    return false;
  }
  bool contains(double x, double tol = 1e-12) const;
  std::string str() const;
};

Interval intersect(const Interval& a, const Interval& b);

/// Finite cyclic subgroup of S^1 of order k acting by rotation in a
/// coordinate plane, with homomorphism tau(zeta) = zeta^m.
struct SymmetrySpec {
  int k = 1;
  int m = 0;
  std::array<int, 2> plane = {0, 1};
};

struct ProblemParams {
  int dim = 3;          // N
  double alpha = 1.0;   // Riesz exponent, in (0, N)
  double p = 2.0;
  double v_inf = 1.0;   // lambda of the limit problem / V at infinity
  double kappa = 0.0;   // exponential approach rate of V to v_inf
  double c0 = 0.0;      // depth coefficient of the potential well
  double rho = 0.0;     // radius beyond which the well bound is required
  double eps_cutoff = 0.25;
  bool claim_h1 = false;
  bool claim_h2 = false;
  bool nonrigorous = false;  // permits dim == 2 smoke runs
};

struct ValidationReport {
  bool admissible = false;
  bool nonrigorous = false;
  std::vector<std::string> violations;
};

struct ExponentSet {
  double r = 0.0;   // 2N/(2N - alpha)
  double pr = 0.0;  // p * r
  std::vector<Interval> lambda_intervals;  // the four defining intervals
  Interval lambda_set;                     // their intersection
  bool empty = false;
  std::string first_empty_pair;  // names the first empty pairwise meet
};

/// Checks the standing assumptions (exponent window, hypothesis claims).
/// Report-style: never throws on bad parameters.
ValidationReport validate(const ProblemParams& params);

/// The four intervals whose intersection defines the admissible q-range
/// used by the regularity estimates, plus their intersection.
ExponentSet lambda_set(const ProblemParams& params);

/// Half the minimal orbit separation on the unit circle of the rotation
/// plane: sin(pi/k) for k >= 2, and 1 for the trivial group.
double delta_tau(const SymmetrySpec& spec);

}  // namespace choquard
