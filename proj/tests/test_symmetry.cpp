#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>

#include "choquard/energy.hpp"
#include "choquard/field.hpp"
#include "choquard/nonlocal.hpp"
#include "choquard/symmetry.hpp"
#include "doctest.h"

using namespace choquard;

namespace {

Grid small_grid() { return Grid{3, 24, 8.0}; }

ComplexField gaussian(const Grid& g, double width = 1.5) {
  return sample_complex(g, [width](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cxd(std::exp(-r2 / (2.0 * width * width)), 0.0);
  });
}

ComplexField random_smooth(const Grid& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  std::array<double, 8> c{};
  for (auto& x : c) x = unif(rng);
  const double w = M_PI / g.length;
  return sample_complex(g, [c, w](const std::array<double, 3>& x) {
    // tight envelope: the lattice rotation is exact on the periodic torus,
    // so invariance statements need the field to vanish at the box rim
    const double env =
        std::exp(-0.7 * (x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
    const double a = c[0] * std::cos(w * x[0]) + c[1] * std::sin(w * x[1]) +
                     c[2] * std::cos(w * (x[0] + x[2]));
    const double b = c[3] * std::cos(w * x[1]) + c[4] * std::sin(2.0 * w * x[2]);
    return env * cxd(a, b);
  });
}

double max_diff(const ComplexField& a, const ComplexField& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    worst = std::max(worst, std::abs(a.v[i] - b.v[i]));
  return worst;
}

}  // namespace

TEST_CASE("tau phases are exact roots of unity and multiplicative") {
  const SymmetrySpec spec{4, 3, {0, 1}};
  CHECK(tau_phase(spec, 0) == cxd(1.0, 0.0));
  // tau(g_1) = e^{2 pi i 3/4} = -i exactly
  CHECK(tau_phase(spec, 1).real() == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(tau_phase(spec, 1).imag() == doctest::Approx(-1.0).epsilon(1e-15));
  // multiplicativity tau(g_{i+j}) = tau(g_i) tau(g_j), indices mod k
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const cxd lhs = tau_phase(spec, (i + j) % 4);
      const cxd rhs = tau_phase(spec, i) * tau_phase(spec, j);
      CHECK(std::abs(lhs - rhs) < 1e-15);
    }
}

TEST_CASE("identity element acts trivially") {
  const Grid g = small_grid();
  const ComplexField u = random_smooth(g, 11);
  for (int k : {1, 2, 4, 6}) {
    const SymmetrySpec spec{k, k > 1 ? 1 : 0, {0, 1}};
    CHECK(max_diff(act(u, 0, spec), u) == 0.0);
  }
}

TEST_CASE("k=4 action is tau(g) times a manual 90-degree permutation") {
  const Grid g = small_grid();
  const SymmetrySpec spec{4, 1, {0, 1}};
  const ComplexField u = random_smooth(g, 7);
  const ComplexField rotated = act(u, 1, spec);

  // Manual oracle: (u_g)(x) = tau(g) u(g^{-1} x); for the 90-degree rotation
  // g (x0,x1) = (-x1,x0) we have g^{-1}(x0,x1) = (x1,-x0).  Node -L has no
  // mirror partner on an even grid, so skip that rim.
  const cxd tau = tau_phase(spec, 1);
  std::array<int, 3> idx;
  double worst = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    g.node_index(i, idx);
    if (idx[0] == 0 || idx[1] == 0) continue;
    const std::array<int, 3> src{idx[1], g.n - idx[0], idx[2]};
    worst = std::max(worst,
                     std::abs(rotated.v[i] - tau * u.v[g.flat_index(src)]));
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("composition law act(act(u,i),j) = act(u,i+j) for lattice-exact k") {
  const Grid g = small_grid();
  const SymmetrySpec spec{4, 3, {1, 2}};
  const ComplexField u = random_smooth(g, 3);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const ComplexField lhs = act(act(u, i, spec), j, spec);
      const ComplexField rhs = act(u, (i + j) % 4, spec);
      CHECK(max_diff(lhs, rhs) < 1e-14);
    }
}

TEST_CASE("the action preserves the A,V norm for compatible potentials") {
  const Grid g = small_grid();
  const SymmetrySpec spec{4, 1, {0, 1}};
  PotentialPair pot;
  pot.a = potential_a_constant_field(g, 0.3, spec.plane);
  pot.v = sample_real(g, [](const std::array<double, 3>& x) {
    return 1.0 + std::exp(-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]));
  });
  pot.v_inf = 1.0;
  REQUIRE(compat_check(pot, spec).compatible);

  const ComplexField u = random_smooth(g, 21);
  const double base = norm_av(u, pot);
  for (int j = 1; j < 4; ++j)
    CHECK(norm_av(act(u, j, spec), pot) ==
          doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("symmetrize projects: idempotent, fixes equivariant fields") {
  const Grid g = small_grid();
  const SymmetrySpec spec{4, 1, {0, 1}};
  const ComplexField u = random_smooth(g, 17);

  const ComplexField s1 = symmetrize(u, spec);
  const ComplexField s2 = symmetrize(s1, spec);
  CHECK(max_diff(s1, s2) < 1e-12);
  CHECK(equivariance_defect(s1, spec) < 1e-12);

  // an explicitly equivariant field: (x0 + i x1) * radial bump has m = 1
  const ComplexField eq = sample_complex(g, [](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cxd(x[0], x[1]) * std::exp(-r2 / 2.0);
  });
  CHECK(max_diff(symmetrize(eq, spec), eq) < 1e-12);
  CHECK(equivariance_defect(eq, spec) < 1e-13);
}

TEST_CASE("symmetrize kills fields of the wrong parity (k=2, m=1)") {
  const Grid g = small_grid();
  const SymmetrySpec spec{2, 1, {0, 1}};
  // even real bump: invariant under x -> -x in the plane, so averaging with
  // the tau = e^{i pi} twist cancels it identically
  const ComplexField u = gaussian(g);
  const ComplexField s = symmetrize(u, spec);
  CHECK(max_abs(s) < 1e-14);
}

TEST_CASE("symmetrize is linear and norm-nonincreasing") {
  const Grid g = small_grid();
  const SymmetrySpec spec{4, 1, {0, 1}};
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = potential_v_constant(g, 1.0);
  pot.v_inf = 1.0;

  const ComplexField u = random_smooth(g, 5);
  const ComplexField v = random_smooth(g, 6);
  ComplexField lin = u;
  scale(lin, cxd(2.0, -1.0));
  axpy(lin, cxd(0.0, 3.0), v);
  ComplexField rhs = symmetrize(u, spec);
  scale(rhs, cxd(2.0, -1.0));
  axpy(rhs, cxd(0.0, 3.0), symmetrize(v, spec));
  CHECK(max_diff(symmetrize(lin, spec), rhs) < 1e-12);

  CHECK(norm_av(symmetrize(u, spec), pot) <= norm_av(u, pot) * (1.0 + 1e-12));
}

TEST_CASE("winding numbers of explicit phase fields") {
  const Grid g{3, 32, 8.0};
  const SymmetrySpec spec{4, 1, {0, 1}};

  const ComplexField bump = gaussian(g, 2.0);
  CHECK(winding_number(bump, 3.0, spec) == 0);

  const ComplexField deg1 = sample_complex(g, [](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return cxd(x[0], x[1]) * std::exp(-r2 / 6.0);
  });
  CHECK(winding_number(deg1, 3.0, spec) == 1);

  const ComplexField deg3 = sample_complex(g, [](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    const cxd z(x[0], x[1]);
    return z * z * z * std::exp(-r2 / 6.0);
  });
  CHECK(winding_number(deg3, 3.0, spec) == 3);
}

TEST_CASE("winding rejects loops through (near-)zeros") {
  const Grid g{3, 32, 8.0};
  const SymmetrySpec spec{4, 1, {0, 1}};
  // real field vanishing on the circle r = 3 in the plane
  const ComplexField u = sample_complex(g, [](const std::array<double, 3>& x) {
    const double rho = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    return cxd((rho - 3.0) * std::exp(-x[2] * x[2]), 0.0);
  });
  CHECK_THROWS_WITH_AS(winding_number(u, 3.0, spec),
                       doctest::Contains("degenerate loop"), std::runtime_error);
}

TEST_CASE("compat_check: radial V with A = 0 is compatible for every k") {
  const Grid g = small_grid();
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = sample_real(g, [](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
    return 2.0 - std::exp(-r2);
  });
  pot.v_inf = 2.0;
  for (int k : {1, 2, 4}) {
    const SymmetrySpec spec{k, k > 1 ? 1 : 0, {0, 1}};
    const CompatReport rep = compat_check(pot, spec);
    CHECK(rep.compatible);
    CHECK(rep.max_v_violation <= rep.tolerance);
  }

  // Non-lattice orders go through bilinear resampling whose error is
  // O(h^2 |V''|), so checking the 1e-5 budget needs a fine mesh; a 2-D
  // grid keeps that affordable.
  const Grid fine{2, 1024, 8.0};
  PotentialPair pot2;
  pot2.v = sample_real(fine, [](const std::array<double, 3>& x) {
    const double r2 = x[0] * x[0] + x[1] * x[1];
    return 2.0 - 0.5 * std::exp(-r2 / 16.0);
  });
  pot2.v_inf = 2.0;
  const SymmetrySpec oct{8, 1, {0, 1}};
  const CompatReport rep = compat_check(pot2, oct);
  CHECK(rep.compatible);
  CHECK(rep.max_v_violation <= 1e-5);
}

TEST_CASE("compat_check accepts the constant-field preset") {
  const Grid g = small_grid();
  PotentialPair pot;
  pot.a = potential_a_constant_field(g, 0.5, {0, 1});
  pot.v = potential_v_constant(g, 1.0);
  pot.v_inf = 1.0;
  for (int k : {2, 4}) {
    const SymmetrySpec spec{k, 1, {0, 1}};
    CHECK(compat_check(pot, spec).compatible);
  }
}

TEST_CASE("compat_check reports an off-axis bump broken by rotation") {
  const Grid g = small_grid();
  const double amp = 0.7;
  PotentialPair pot;
  pot.a = potential_a_zero(g);
  pot.v = sample_real(g, [amp](const std::array<double, 3>& x) {
    const double d2 = (x[0] - 3.0) * (x[0] - 3.0) + x[1] * x[1] + x[2] * x[2];
    return 1.0 + amp * std::exp(-d2);
  });
  pot.v_inf = 1.0;
  const SymmetrySpec spec{4, 1, {0, 1}};
  const CompatReport rep = compat_check(pot, spec);
  CHECK_FALSE(rep.compatible);
  // the bump moves with the rotation, so the violation is ~ its amplitude
  CHECK(rep.max_v_violation == doctest::Approx(amp).epsilon(0.05));
}

TEST_CASE("D and J are invariant under the lattice-exact group action") {
  const Grid g{3, 16, 6.0};
  const SymmetrySpec spec{4, 1, {0, 1}};
  const RieszKernel kern = make_riesz_kernel(g, 1.0);
  const ComplexField u = random_smooth(g, 13);

  const double d0 = d_functional(u, 2.0, kern);
  for (int j = 1; j < 4; ++j)
    CHECK(d_functional(act(u, j, spec), 2.0, kern) ==
          doctest::Approx(d0).epsilon(1e-10));

  PotentialPair pot;
  pot.a = potential_a_constant_field(g, 0.2, spec.plane);
  pot.v = potential_v_constant(g, 1.0);
  pot.v_inf = 1.0;
  ProblemParams pp; pp.p = 2.0;
  EnergyContext ctx{pp, pot, kern, 1.0};
  const double j0 = j_value(u, ctx);
  for (int j = 1; j < 4; ++j)
    CHECK(j_value(act(u, j, spec), ctx) ==
          doctest::Approx(j0).epsilon(1e-10));
}

TEST_CASE("grad_j of an equivariant field is again equivariant") {
  const Grid g{3, 16, 6.0};
  const SymmetrySpec spec{4, 1, {0, 1}};
  const RieszKernel kern = make_riesz_kernel(g, 1.0);
  PotentialPair pot;
  pot.a = potential_a_constant_field(g, 0.2, spec.plane);
  pot.v = potential_v_constant(g, 1.0);
  pot.v_inf = 1.0;
  ProblemParams pp; pp.p = 2.0;
  EnergyContext ctx{pp, pot, kern, 1.0};

  const ComplexField u = symmetrize(random_smooth(g, 29), spec);
  REQUIRE(equivariance_defect(u, spec) < 1e-12);
  const ComplexField gj = grad_j(u, ctx);
  CHECK(equivariance_defect(gj, spec) < 1e-10);
}
