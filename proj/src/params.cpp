#include "choquard/params.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace choquard {

namespace {
constexpr double kTol = 1e-12;

std::string endpoint(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}
}  // namespace

bool Interval::contains(double x, double tol) const {
  if (lo_closed ? x < lo - tol : x <= lo + tol) return false;
  if (hi_closed ? x > hi + tol : x >= hi - tol) return false;
  return true;
}

std::string Interval::str() const {
  std::ostringstream os;
  os << (lo_closed ? '[' : '(') << endpoint(lo) << ", ";
  if (hi == std::numeric_limits<double>::infinity())
    os << "inf)";
  else
    os << endpoint(hi) << (hi_closed ? ']' : ')');
  return os.str();
}

Interval intersect(const Interval& a, const Interval& b) {
  Interval out;
  if (a.lo > b.lo) {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed;
  } else if (b.lo > a.lo) {
    out.lo = b.lo;
    out.lo_closed = b.lo_closed;
  } else {
    out.lo = a.lo;
    out.lo_closed = a.lo_closed && b.lo_closed;
  }
  if (a.hi < b.hi) {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed;
  } else if (b.hi < a.hi) {
    out.hi = b.hi;
    out.hi_closed = b.hi_closed;
  } else {
    out.hi = a.hi;
    out.hi_closed = a.hi_closed && b.hi_closed;
  }
  return out;
}

ValidationReport validate(const ProblemParams& q) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& s) { rep.violations.push_back(s); };

  const double N = q.dim;
  if (q.dim < 2) fail("N >= 2 required, got N = " + std::to_string(q.dim));
  if (q.dim == 2 && !q.nonrigorous)
    fail("N = 2 requires the nonrigorous flag (theory needs N >= 3)");
  rep.nonrigorous = (q.dim == 2);

  if (!(q.alpha > 0.0 && q.alpha < N))
    fail("alpha in (0, N) violated: alpha = " + endpoint(q.alpha));
  if (!(q.v_inf > 0.0)) fail("V_inf > 0 violated");
  if (!(q.eps_cutoff > 0.0 && q.eps_cutoff < 1.0))
    fail("epsilon_cutoff in (0, 1) violated");

  if (q.dim >= 3) {
    const double lo = 2.0 - q.alpha / N;
    const double hi = (2.0 * N - q.alpha) / (N - 2.0);
    if (!(q.p > lo + kTol))
      fail("p > 2 - alpha/N violated: p = " + endpoint(q.p) +
           " <= " + endpoint(lo));
    if (!(q.p < hi - kTol))
      fail("p < (2N - alpha)/(N - 2) violated: p = " + endpoint(q.p) +
           " >= " + endpoint(hi));
  }

  if (q.claim_h1) {
    if (q.p < 2.0 - kTol) fail("(H1) needs p >= 2, got p = " + endpoint(q.p));
    if (q.dim >= 3) {
      ExponentSet es = lambda_set(q);
      if (es.empty) fail("(H1) needs a nonempty exponent set; " + es.first_empty_pair);
    }
  }
  if (q.claim_h2) {
    if (!(q.c0 > 0.0)) fail("(H2) needs c0 > 0");
    if (!(q.kappa > 0.0)) fail("(H2) needs kappa > 0");
    // delta_tau <= 1 for every symmetry, so kappa >= 2 sqrt(V_inf) can
    // never satisfy kappa < 2 delta_tau sqrt(V_inf); the exact
    // per-symmetry cap is re-checked by the multibump setups
    if (q.v_inf > 0.0 && !(q.kappa < 2.0 * std::sqrt(q.v_inf)))
      fail("(H2) needs kappa < 2 delta_tau sqrt(V_inf), got kappa = " +
           endpoint(q.kappa));
  }
  rep.admissible = rep.violations.empty();
  return rep;
}

ExponentSet lambda_set(const ProblemParams& q) {
  const double N = q.dim;
  const double a = q.alpha;
  const double p = q.p;
  const double inf = std::numeric_limits<double>::infinity();

  ExponentSet es;
  es.r = 2.0 * N / (2.0 * N - a);
  es.pr = p * es.r;

  es.lambda_intervals = {
      Interval{2.0, 2.0 * N / (N - 2.0), true, true},
      Interval{p, p * N / (N - a), false, false},
      Interval{(2.0 * p - 2.0) * N / (N + 2.0 - a),
               (2.0 * p - 1.0) * N / (N + 2.0 - a), false, true},
      Interval{(2.0 * p - 1.0) * N / (2.0 * N - a), inf, true, false},
  };

  static const char* names[4] = {"[2, 2N/(N-2)]", "(p, pN/(N-alpha))",
                                 "((2p-2)N/(N+2-alpha), (2p-1)N/(N+2-alpha)]",
                                 "[(2p-1)N/(2N-alpha), inf)"};

  // pairwise meets first, to name the earliest empty one
  for (int i = 0; i < 4 && es.first_empty_pair.empty(); ++i)
    for (int j = i + 1; j < 4; ++j)
      if (intersect(es.lambda_intervals[i], es.lambda_intervals[j]).empty(kTol)) {
        es.first_empty_pair =
            std::string(names[i]) + " and " + names[j] + " do not meet";
        break;
      }

  es.lambda_set = es.lambda_intervals[0];
  for (int i = 1; i < 4; ++i)
    es.lambda_set = intersect(es.lambda_set, es.lambda_intervals[i]);
  es.empty = es.lambda_set.empty(kTol);
  return es;
}

double delta_tau(const SymmetrySpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("group order k must be >= 1");
  if (spec.m < 0 || (spec.k > 1 && spec.m >= spec.k))
    throw std::invalid_argument("homomorphism index m must satisfy 0 <= m < k");
  // trivial group: delta_G(x) = 2|x| on the unit sphere
  if (spec.k == 1) return 1.0;
  // off the fixed axis every point has trivial isotropy, which lies in
  // ker tau, so (H0) holds for the planar rotation action
  return std::sin(M_PI / spec.k);
}

}  // namespace choquard
