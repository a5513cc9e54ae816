#pragma once

#include <string>
#include <vector>

#include "choquard/radial.hpp"

namespace choquard {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  bool pass = false;
};

CheckResult make_check(const std::string& name, double measured, double lo,
                       double hi);

/// Decay-window checks on a converged radial ground state: exponential
/// rate of u and |u'| against the p-dependent window, algebraic power
/// against (N-1)/2 with +-0.3 slack. The p = 2 window uses the fixed
/// eps = 0.1 lambda rendering of the eps-family bound.
std::vector<CheckResult> appendix_decay_suite(const ProblemParams& params,
                                              const RadialProfile& profile);

/// Far-field behavior of K * u^p: vanishing tail relative to the center
/// value, tail monotonicity, and the algebraic tail power against alpha.
std::vector<CheckResult> kkstar_decay_of_convolution(
    const RadialProfile& profile, const ProblemParams& params);

}  // namespace choquard
