#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "choquard/energy.hpp"
#include "choquard/radial.hpp"
#include "choquard/solver.hpp"
#include "doctest.h"

using namespace choquard;

namespace {

ProblemParams reference_params(double p = 2.0) {
  ProblemParams q;
  q.dim = 3;
  q.alpha = 1.0;
  q.p = p;
  q.v_inf = 1.0;
  return q;
}

EnergyContext trivial_context(const Grid& g, double lambda = 1.0) {
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = potential_v_constant(g, lambda);
  pot.v_inf = lambda;
  return make_context(reference_params(), std::move(pot), g);
}

SolveConfig quick_config(int max_iter = 80, double tol_grad = 1e-4) {
  SolveConfig cfg;
  cfg.max_iter = max_iter;
  cfg.tol_grad = tol_grad;
  cfg.tol_nehari = 1e-10;
  return cfg;
}

}  // namespace

TEST_CASE("zero initial guess is rejected as degenerate") {
  const Grid g{3, 16, 8.0};
  const EnergyContext ctx = trivial_context(g);
  const SymmetrySpec spec{1, 0, {0, 1}};
  SolveConfig cfg = quick_config();
  cfg.guess.preset = "zero";
  CHECK_THROWS_WITH_AS(solve(ctx, spec, cfg),
                       doctest::Contains("degenerate initial guess"),
                       std::invalid_argument);
}

TEST_CASE("incompatible potentials are rejected before iterating") {
  const Grid g{3, 16, 8.0};
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = sample_real(g, [](const std::array<double, 3>& x) {
    const double d2 = (x[0] - 3.0) * (x[0] - 3.0) + x[1] * x[1] + x[2] * x[2];
    return 1.0 + std::exp(-d2);  // off-axis bump breaks the rotation
  });
  pot.v_inf = 1.0;
  const EnergyContext ctx = make_context(reference_params(), std::move(pot), g);
  const SymmetrySpec spec{4, 1, {0, 1}};
  CHECK_THROWS_AS(solve(ctx, spec, quick_config()), std::invalid_argument);
}

TEST_CASE("trivial-symmetry solve matches the radial ground state within 1%") {
  const Grid g{3, 48, 16.0};
  const EnergyContext ctx = trivial_context(g);
  const SymmetrySpec spec{1, 0, {0, 1}};
  SolveConfig cfg = quick_config(120, 1e-5);
  cfg.guess.preset = "single_bump";
  const SolveReport rep = solve(ctx, spec, cfg);

  const RadialProfile radial =
      solve_ground_state(1.0, reference_params(), {30.0, 1200});
  REQUIRE(radial.converged);
  CHECK(std::abs(rep.j - radial.energy) / radial.energy < 0.01);
  // energy identity on the manifold
  CHECK(rep.j == doctest::Approx(0.25 * rep.norm_av_sq).epsilon(1e-8));
  CHECK(rep.nehari_residual < 1e-10);
}

TEST_CASE("k=4 equivariant solve: defect, winding, Nehari identity") {
  const Grid g{3, 48, 16.0};
  PotentialPair pot;
  pot.a = potential_a_constant_field(g, 0.1, {0, 1});
  pot.v = potential_v_constant(g, 1.0);
  pot.v_inf = 1.0;
  const EnergyContext ctx = make_context(reference_params(), std::move(pot), g);
  const SymmetrySpec spec{4, 1, {0, 1}};
  SolveConfig cfg = quick_config(40, 1e-3);
  cfg.guess.preset = "ring_bumps";
  // overlapping bumps seed a single central vortex; well-separated bumps
  // leave four charge -1 vortices between them (winding 1 - 4 = -3, still
  // admissible mod k) that survive many iterations before annihilating
  cfg.guess.radius = 1.5;
  cfg.guess.width = 1.5;
  const SolveReport rep = solve(ctx, spec, cfg);

  CHECK(rep.equivariance_defect <= 1e-10);
  CHECK(rep.winding_valid);
  CHECK(rep.winding == 1);
  CHECK(rep.j == doctest::Approx(0.25 * rep.norm_av_sq).epsilon(1e-8));
  CHECK(rep.j > 0.0);
}

TEST_CASE("identical config and seed give bit-identical reports") {
  const Grid g{3, 16, 8.0};
  const EnergyContext ctx = trivial_context(g);
  const SymmetrySpec spec{2, 1, {0, 1}};
  SolveConfig cfg = quick_config(25, 1e-12);  // runs the full 25 iterations
  cfg.guess.preset = "ring_bumps";
  cfg.guess.radius = 3.0;
  const SolveReport a = solve(ctx, spec, cfg);
  const SolveReport b = solve(ctx, spec, cfg);
  CHECK(a.j == b.j);
  CHECK(a.grad_residual == b.grad_residual);
  CHECK(a.iterations == b.iterations);
  CHECK(a.field.v == b.field.v);
}

TEST_CASE("accepted steps never increase J (backtracking contract)") {
  const Grid g{3, 16, 8.0};
  const EnergyContext ctx = trivial_context(g);
  const SymmetrySpec spec{1, 0, {0, 1}};
  const SolveReport rep = solve(ctx, spec, quick_config(40, 1e-12));
  REQUIRE(rep.trace.size() >= 10);
  for (std::size_t i = 1; i < rep.trace.size(); ++i)
    CHECK(rep.trace[i].j <= rep.trace[i - 1].j + 1e-12);
}

TEST_CASE("ps_monitor: converged run is PS-like with c = final J") {
  const Grid g{3, 24, 10.0};
  const EnergyContext ctx = trivial_context(g);
  const SymmetrySpec spec{1, 0, {0, 1}};
  const SolveReport rep = solve(ctx, spec, quick_config(80, 1e-4));
  REQUIRE(rep.trace.size() >= 10);
  const PsSummary ps = ps_monitor(rep);
  CHECK(ps.is_ps_like);
  CHECK(ps.c_estimate == rep.j);
  CHECK(ps.residual_slope < 0.0);
  CHECK_FALSE(ps.stagnation);
}

TEST_CASE("ps_monitor flags stagnation when mass hits the boundary") {
  // box deliberately too small: the ground state at lambda = 0.05 has decay
  // length ~4.5, far wider than L = 3
  const Grid g{3, 16, 3.0};
  const EnergyContext ctx = trivial_context(g, 0.05);
  const SymmetrySpec spec{1, 0, {0, 1}};
  const SolveReport rep = solve(ctx, spec, quick_config(40, 1e-12));
  REQUIRE(rep.trace.size() >= 10);
  const PsSummary ps = ps_monitor(rep);
  CHECK(ps.boundary_mass_fraction > 1e-6);
  CHECK(ps.stagnation);
}

TEST_CASE("equivariance defect stays at the projection floor") {
  const Grid g{3, 16, 8.0};
  const EnergyContext ctx = trivial_context(g);
  const SymmetrySpec spec{2, 1, {0, 1}};
  SolveConfig cfg = quick_config(30, 1e-12);
  cfg.guess.preset = "ring_bumps";
  cfg.guess.radius = 3.0;
  const SolveReport rep = solve(ctx, spec, cfg);
  for (const TraceRow& row : rep.trace) CHECK(row.equiv_defect <= 1e-10);
}
