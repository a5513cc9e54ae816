#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <choquard/energy.hpp>
#include <choquard/multibump.hpp>
#include <choquard/radial.hpp>
#include <choquard/symmetry.hpp>
#include <cmath>
#include <random>
#include <vector>

using namespace choquard;

namespace {

ProblemParams well_params(double kappa, double c0) {
  ProblemParams q;
  q.dim = 3;
  q.alpha = 1.0;
  q.p = 2.0;
  q.v_inf = 1.0;
  q.kappa = kappa;
  q.c0 = c0;
  q.rho = 0.0;
  return q;
}

// lambda = 1, p = 2 ground state, shared across the certificate cases
const RadialProfile& base_profile() {
  static const RadialProfile prof = [] {
    return solve_ground_state(1.0, well_params(0.5, 0.3), {30.0, 1200});
  }();
  return prof;
}

RadialProfile exp_model(double rate, const RadialMesh& mesh) {
  RadialProfile p;
  p.mesh = mesh;
  p.values.resize(mesh.m_nodes);
  for (int i = 0; i < mesh.m_nodes; ++i)
    p.values[i] = std::exp(-rate * mesh.r(i));
  p.converged = true;
  return p;
}

EnergyContext exp_well_context(const Grid& g, const ProblemParams& q) {
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = potential_v_exp_well(g, q.v_inf, q.c0, q.kappa);
  pot.v_inf = q.v_inf;
  return make_context(q, std::move(pot), g);
}

// E_{V_inf} evaluated with the same grid quadrature as the bumps, so the
// O(h^2) discretization bias cancels in the gaps instead of swamping them
double e_vinf_on_grid(const Grid& g, const ProblemParams& q,
                      const SymmetrySpec& spec) {
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = potential_v_constant(g, q.v_inf);
  pot.v_inf = q.v_inf;
  const EnergyContext ctx = make_context(q, std::move(pot), g);
  BumpPlan ref = make_bump_plan(base_profile(), 4.0, q.kappa, q.v_inf, spec);
  ref.y_norm = 0.0;
  ref.r_cut = g.length - 2.0;  // effectively uncut: the tail is ~e^{-26}
  ref.eps = 0.05;
  return mountain_pass_value(build_single_bump(ref, g), ctx);
}

}  // namespace

TEST_CASE("chi is a C^1 smoothstep: plateau, ramp, support") {
  const double eps = 0.25;
  CHECK(chi_cutoff(0.0, eps) == 1.0);
  CHECK(chi_cutoff(1.0 - eps, eps) == 1.0);
  CHECK(chi_cutoff(1.0, eps) == 0.0);
  CHECK(chi_cutoff(2.0, eps) == 0.0);
  // midpoint of the ramp is exactly 1/2 for the odd-symmetric smoothstep
  CHECK(chi_cutoff(1.0 - 0.5 * eps, eps) == doctest::Approx(0.5).epsilon(1e-14));
  // nonincreasing across the ramp
  double prev = 1.0;
  for (int i = 0; i <= 100; ++i) {
    const double v = chi_cutoff(0.7 + 0.4 * i / 100.0, eps);
    CHECK(v <= prev + 1e-15);
    prev = v;
  }
  // flat derivative at both ramp ends (C^1 matching)
  const double d = 1e-6;
  CHECK(std::abs(chi_cutoff(1.0 - eps + d, eps) - 1.0) < 1e-10);
  CHECK(std::abs(chi_cutoff(1.0 - d, eps)) < 1e-10);
  CHECK_THROWS_AS(chi_cutoff(0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(chi_cutoff(0.5, 1.0), std::invalid_argument);
}

TEST_CASE("cutoff of u = 1 reproduces chi and never increases the norm") {
  const RadialMesh mesh{2.0, 401};
  std::vector<double> ones(mesh.m_nodes, 1.0);
  const double eps = 0.25;
  const std::vector<double> cut = cutoff_profile(ones, mesh, 1.0, eps);
  for (int i = 0; i < mesh.m_nodes; ++i) {
    const double r = mesh.r(i);
    CHECK(cut[i] == chi_cutoff(r, eps));
    if (r <= 1.0 - eps) CHECK(cut[i] == 1.0);
    if (r >= 1.0) CHECK(cut[i] == 0.0);
    CHECK(std::abs(cut[i]) <= 1.0);  // |u^R| <= |u| pointwise since chi <= 1
  }
  CHECK_THROWS_AS(cutoff_profile(ones, mesh, 0.0, eps), std::invalid_argument);
}

TEST_CASE("field cutoff: support in the ball, identity well inside") {
  const Grid g{3, 24, 4.0};
  ComplexField u = sample_complex(g, [](const std::array<double, 3>& x) {
    return cxd(1.0 + x[0], 0.5 - x[1]);
  });
  const double r_cut = 2.0, eps = 0.3;
  const ComplexField cut = cutoff_field(u, r_cut, eps);
  std::array<double, 3> x;
  for (std::size_t i = 0; i < cut.v.size(); ++i) {
    g.node_coords(i, x);
    const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    if (r <= (1.0 - eps) * r_cut) CHECK(cut.v[i] == u.v[i]);
    if (r >= r_cut) CHECK(cut.v[i] == cxd(0.0, 0.0));
    CHECK(std::abs(cut.v[i]) <= std::abs(u.v[i]) + 1e-15);
  }
  // R beyond the sampled ball: unchanged
  const ComplexField same = cutoff_field(u, 50.0, eps);
  for (std::size_t i = 0; i < same.v.size(); ++i) CHECK(same.v[i] == u.v[i]);
}

TEST_CASE("cutoff radius: worked value, limits, admissibility window") {
  // kappa = 0.5, delta = 1, mu = 1, |y| = 10 -> ((0.5 + 2) / 4) * 10
  CHECK(cutoff_radius(0.5, 1.0, 1.0, 10.0) == doctest::Approx(6.25).epsilon(1e-14));
  // kappa -> 0+ gives delta |y| / 2; kappa -> cap- gives delta |y|
  CHECK(cutoff_radius(1e-12, 1.0, 1.0, 10.0) == doctest::Approx(5.0).epsilon(1e-9));
  CHECK(cutoff_radius(2.0 - 1e-12, 1.0, 1.0, 10.0) == doctest::Approx(10.0).epsilon(1e-9));
  CHECK_THROWS_WITH_AS(cutoff_radius(2.0, 1.0, 1.0, 10.0),
                       doctest::Contains("kappa < 2 delta sqrt(mu)"),
                       std::invalid_argument);
  CHECK_THROWS_AS(cutoff_radius(0.0, 1.0, 1.0, 10.0), std::invalid_argument);

  // property: R_y < delta |y| over random admissible triples
  std::mt19937_64 rng(20240817);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const double delta = 0.1 + 0.9 * u01(rng);
    const double mu = 0.05 + 3.0 * u01(rng);
    const double cap = 2.0 * delta * std::sqrt(mu);
    const double kappa = cap * (1e-6 + (1.0 - 2e-6) * u01(rng));
    const double y = 0.5 + 20.0 * u01(rng);
    CHECK(cutoff_radius(kappa, delta, mu, y) < delta * y);
    CHECK(cutoff_radius(kappa, delta, mu, y) > 0.0);
  }
}

TEST_CASE("mu choice: admissible for moderate kappa, refused past the cap") {
  // the deterministic mu formula admits kappa < (4/3) delta sqrt(V_inf)
  for (double kappa : {0.1, 0.5, 1.0, 1.3}) {
    const double mu = choose_mu(1.0, kappa, 1.0);
    CHECK(mu > 0.0);
    CHECK(mu < 1.0);
    CHECK(kappa < 2.0 * std::sqrt(mu));
    const double w = eps_window_max(kappa, 1.0, mu);
    CHECK(w > 0.0);
    CHECK(w < 1.0);
  }
  // kappa = 0.5, V_inf = 1, delta = 1: mu = (1 - 0.5/4)^2 = 0.765625
  CHECK(choose_mu(1.0, 0.5, 1.0) == doctest::Approx(0.765625).epsilon(1e-14));
  CHECK_THROWS_AS(choose_mu(1.0, 1.4, 1.0), std::invalid_argument);
  // k = 4 shrinks delta_tau and with it the admissible kappa range
  CHECK_THROWS_AS(choose_mu(1.0, 1.0, std::sin(M_PI / 4.0)),
                  std::invalid_argument);
}

TEST_CASE("cutoff loss scan: fitted rates match the exponential model") {
  const RadialMesh mesh{40.0, 2001};
  const double p = 2.5, eps = 0.2;

  const RadialProfile prof1 = exp_model(1.0, mesh);
  const CutoffScan s1 =
      cutoff_decay_scan(prof1, p, 1.0, eps, {6.0, 8.0, 10.0, 12.0}, 3, 1.0);
  CHECK(s1.target_d == doctest::Approx(p * (1.0 - eps)));
  CHECK(s1.target_grad == doctest::Approx(2.0 * (1.0 - eps)));
  CHECK(s1.slope_d == doctest::Approx(s1.target_d).epsilon(0.10));
  CHECK(s1.slope_grad == doctest::Approx(s1.target_grad).epsilon(0.10));
  CHECK(s1.slope_d >= 0.9 * s1.target_d);
  CHECK(s1.slope_grad >= 0.9 * s1.target_grad);

  // quadrupling mu doubles both rates
  const RadialProfile prof4 = exp_model(2.0, mesh);
  const CutoffScan s4 =
      cutoff_decay_scan(prof4, p, 4.0, eps, {3.0, 4.0, 5.0, 6.0}, 3, 1.0);
  CHECK(s4.slope_d / s1.slope_d == doctest::Approx(2.0).epsilon(0.10));
  CHECK(s4.slope_grad / s1.slope_grad == doctest::Approx(2.0).epsilon(0.10));

  // R beyond the numerical support: both losses at the float floor
  const CutoffScan far =
      cutoff_decay_scan(prof4, p, 4.0, eps, {38.0}, 3, 1.0);
  CHECK(far.rows[0].delta_d < 1e-14);
  CHECK(far.rows[0].delta_grad < 1e-14);

  CHECK_THROWS_WITH_AS(
      cutoff_decay_scan(prof1, p, 1.0, eps, {45.0}, 3, 1.0),
      doctest::Contains("exceeds the domain"), std::invalid_argument);
  // profile decaying slower than sqrt(mu): precondition violated
  const RadialProfile slow = exp_model(0.5, mesh);
  CHECK_THROWS_WITH_AS(
      cutoff_decay_scan(slow, p, 1.0, eps, {6.0, 8.0}, 3, 1.0),
      doctest::Contains("below sqrt(mu)"), std::invalid_argument);
}

TEST_CASE("bump plan: derived quantities satisfy their defining windows") {
  const SymmetrySpec spec{2, 1, {0, 1}};
  const BumpPlan plan = make_bump_plan(base_profile(), 10.0, 0.5, 1.0, spec);
  CHECK(plan.mu == doctest::Approx(0.765625).epsilon(1e-14));
  CHECK(plan.eps > 0.0);
  CHECK(plan.eps < eps_window_max(0.5, 1.0, plan.mu));
  CHECK(plan.r_cut > 0.0);
  CHECK(plan.r_cut < delta_tau(spec) * plan.y_norm);
}

TEST_CASE("theta: equivariant by construction, norm splits over the orbit") {
  const ProblemParams q = well_params(0.5, 0.3);
  const Grid g{3, 64, 12.0};
  const SymmetrySpec spec{2, 1, {0, 1}};
  const EnergyContext ctx = exp_well_context(g, q);

  const BumpPlan plan = make_bump_plan(base_profile(), 6.0, q.kappa, q.v_inf, spec);
  const ComplexField theta = build_theta(plan, g);
  const ComplexField single = build_single_bump(plan, g);

  // k = 2, m = 1: odd under the half-turn; the projector fixes it
  CHECK(equivariance_defect(theta, spec) <= 1e-12);
  const ComplexField proj = symmetrize(theta, spec);
  double worst = 0.0;
  for (std::size_t i = 0; i < theta.v.size(); ++i)
    worst = std::max(worst, std::abs(proj.v[i] - theta.v[i]));
  CHECK(worst <= 1e-12);

  // disjoint supports split the norm; the spectral gradient leaks only a
  // little through the gap between the supports
  const double n_theta = norm_av_sq(theta, ctx.pot);
  const double n_single = norm_av_sq(single, ctx.pot);
  CHECK(n_theta == doctest::Approx(2.0 * n_single).epsilon(1e-3));

  // D does NOT split: the kernel is long-range, the cross term is positive
  const double d_theta = d_functional(theta, q.p, ctx.kernel);
  const double d_single = d_functional(single, q.p, ctx.kernel);
  CHECK(d_theta > 2.0 * d_single);
  // two unit-mass clusters at distance 2 rho_0 interact like m^2 / (2 rho_0)
  const double l2 = l2_norm(single);
  const double mass = l2 * l2;
  const double far_field = 2.0 * mass * mass / (2.0 * plan.y_norm);
  CHECK(d_theta - 2.0 * d_single ==
        doctest::Approx(far_field).epsilon(0.25));

  // overlapping supports and out-of-grid orbits are refused
  BumpPlan bad = plan;
  bad.r_cut = bad.y_norm + 1.0;
  CHECK_THROWS_WITH_AS(build_theta(bad, g),
                       doctest::Contains("overlapping supports"),
                       std::invalid_argument);
  BumpPlan wide = plan;
  wide.y_norm = 11.0;
  wide.r_cut = 4.0;
  CHECK_THROWS_WITH_AS(build_theta(wide, g),
                       doctest::Contains("do not fit"), std::invalid_argument);
}

TEST_CASE("k = 1 theta is the single shifted bump") {
  const Grid g{3, 32, 12.0};
  const SymmetrySpec spec{1, 0, {0, 1}};
  const BumpPlan plan = make_bump_plan(base_profile(), 6.0, 0.5, 1.0, spec);
  const ComplexField theta = build_theta(plan, g);
  const ComplexField single = build_single_bump(plan, g);
  for (std::size_t i = 0; i < theta.v.size(); ++i)
    CHECK(theta.v[i] == single.v[i]);
}

TEST_CASE("certificate refuses degenerate or inadmissible well data") {
  const Grid g{3, 32, 12.0};
  const SymmetrySpec spec{2, 1, {0, 1}};
  const BumpPlan plan = make_bump_plan(base_profile(), 6.0, 0.5, 1.0, spec);

  ProblemParams q0 = well_params(0.5, 0.0);  // c0 = 0: no well at all
  CHECK_THROWS_WITH_AS(
      threshold_certificate(plan, exp_well_context(g, q0), 1.168),
      doctest::Contains("c0 > 0"), std::invalid_argument);

  ProblemParams qk = well_params(2.0, 0.3);  // kappa beyond 2 delta sqrt(mu)
  CHECK_THROWS_WITH_AS(
      threshold_certificate(plan, exp_well_context(g, qk), 1.168),
      doctest::Contains("kappa outside"), std::invalid_argument);

  // V above the claimed envelope: nodewise check must fail
  ProblemParams qv = well_params(0.5, 0.3);
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = potential_v_constant(g, 1.05);  // exceeds V_inf - c0 e^{-kappa r}
  pot.v_inf = 1.0;
  const EnergyContext bad_ctx = make_context(qv, std::move(pot), g);
  CHECK_THROWS_WITH_AS(threshold_certificate(plan, bad_ctx, 1.168),
                       doctest::Contains("nodewise"), std::invalid_argument);
}

TEST_CASE("deeper well widens the gap at fixed rho_0") {
  const ProblemParams qa = well_params(0.5, 0.3);
  const ProblemParams qb = well_params(0.5, 0.6);
  const Grid g{3, 48, 12.0};
  const SymmetrySpec spec{2, 1, {0, 1}};
  const double e_ref = e_vinf_on_grid(g, qa, spec);
  const BumpPlan plan = make_bump_plan(base_profile(), 6.0, qa.kappa, qa.v_inf, spec);
  const ThresholdReport ra =
      threshold_certificate(plan, exp_well_context(g, qa), e_ref);
  const ThresholdReport rb =
      threshold_certificate(plan, exp_well_context(g, qb), e_ref);
  CHECK(ra.h2_ok);
  CHECK(rb.h2_ok);
  CHECK(rb.gap > ra.gap);
  CHECK(rb.single_gap > ra.single_gap);
}

TEST_CASE("rho_0 sweep: positive gaps, per-bump rate tracks kappa") {
  const ProblemParams q = well_params(0.2, 0.9);
  const Grid g{3, 120, 30.0};
  const SymmetrySpec spec{2, 1, {0, 1}};
  const double e_ref = e_vinf_on_grid(g, q, spec);
  const EnergyContext ctx = exp_well_context(g, q);

  const ThresholdSweep sw =
      threshold_sweep(base_profile(), {14.0, 16.0, 18.0}, ctx, spec, e_ref);
  REQUIRE(sw.reports.size() == 3);
  CHECK(sw.all_positive);
  for (const auto& rep : sw.reports) {
    CHECK(rep.h2_ok);
    CHECK(rep.certified);
    CHECK(rep.gap > 0.0);
    CHECK(rep.single_gap > 0.0);
    CHECK(rep.cross_term > 0.0);
    CHECK(rep.k_e_vinf == doctest::Approx(2.0 * e_ref));
  }
  // gaps shrink as the bumps move out of the well
  CHECK(sw.reports[0].single_gap > sw.reports[1].single_gap);
  CHECK(sw.reports[1].single_gap > sw.reports[2].single_gap);
  // fitted decay rate of the per-bump gap within 15% of kappa
  CHECK(sw.kappa_fit == doctest::Approx(q.kappa).epsilon(0.15));
  CHECK(sw.d0_fit > 0.0);
}
