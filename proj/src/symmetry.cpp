#include "choquard/symmetry.hpp"

#include <cmath>
#include <stdexcept>

namespace choquard {

namespace {

int mod(int a, int n) { return ((a % n) + n) % n; }

// index of the node at the negated coordinate, -x_i = x_{(n-i) mod n}
// (periodic identification of the two box faces)
int neg_index(int i, int n) { return mod(n - i, n); }

// Applies `quarters` counterclockwise quarter turns to a plane index pair.
// One quarter turn: (x, y) -> (-y, x).
void rotate_quarters(int& i0, int& i1, int quarters, int n) {
  for (int q = 0; q < mod(quarters, 4); ++q) {
    const int nx = neg_index(i1, n);
    const int ny = i0;
    i0 = nx;
    i1 = ny;
  }
}

// Bilinear interpolation of u at plane coordinates (x, y), remaining
// axes at the given fixed indices; zero outside the box.
cxd bilinear_plane(const ComplexField& u, const std::array<int, 2>& plane,
                   std::array<int, 3> idx, double x, double y) {
  const Grid& g = u.grid;
  const double h = g.h();
  const double fx = (x + g.length) / h;
  const double fy = (y + g.length) / h;
  const int ix = static_cast<int>(std::floor(fx));
  const int iy = static_cast<int>(std::floor(fy));
  const double wx = fx - ix;
  const double wy = fy - iy;
  cxd out(0.0);
  for (int dx = 0; dx <= 1; ++dx)
    for (int dy = 0; dy <= 1; ++dy) {
      const int jx = ix + dx;
      const int jy = iy + dy;
      if (jx < 0 || jx >= g.n || jy < 0 || jy >= g.n) continue;
      const double w = (dx ? wx : 1.0 - wx) * (dy ? wy : 1.0 - wy);
      idx[plane[0]] = jx;
      idx[plane[1]] = jy;
      out += w * u.v[g.flat_index(idx)];
    }
  return out;
}

void check_spec(const ComplexField& u, const SymmetrySpec& spec) {
  if (spec.k < 1) throw std::invalid_argument("symmetry: k must be >= 1");
  if (spec.plane[0] == spec.plane[1] || spec.plane[0] >= u.grid.dim ||
      spec.plane[1] >= u.grid.dim || spec.plane[0] < 0 || spec.plane[1] < 0)
    throw std::invalid_argument("symmetry: invalid rotation plane");
}

}  // namespace

cxd tau_phase(const SymmetrySpec& spec, int j) {
  const int num = mod(j * spec.m, spec.k);
  const double angle = 2.0 * M_PI * num / spec.k;
  return cxd(std::cos(angle), std::sin(angle));
}

bool lattice_exact(const SymmetrySpec& spec) {
  return spec.k == 1 || spec.k == 2 || spec.k == 4;
}

ComplexField act(const ComplexField& u, int j, const SymmetrySpec& spec) {
  check_spec(u, spec);
  if (j < 0 || j >= spec.k)
    throw std::invalid_argument("act: group element index out of range");
  if (j == 0) return u;  // tau(identity) = 1
  const Grid& g = u.grid;
  const cxd phase = tau_phase(spec, j);
  ComplexField out(g);
  std::array<int, 3> idx;

  if (lattice_exact(spec)) {
    // g^{-1} rotates by -2 pi j / k, i.e. -(4j/k) quarter turns
    const int quarters = -(4 / spec.k) * j;
    for (std::size_t f = 0; f < out.v.size(); ++f) {
      g.node_index(f, idx);
      int i0 = idx[spec.plane[0]];
      int i1 = idx[spec.plane[1]];
      rotate_quarters(i0, i1, quarters, g.n);
      std::array<int, 3> src = idx;
      src[spec.plane[0]] = i0;
      src[spec.plane[1]] = i1;
      out.v[f] = phase * u.v[g.flat_index(src)];
    }
    return out;
  }

  const double angle = -2.0 * M_PI * j / spec.k;  // g^{-1}
  const double c = std::cos(angle), s = std::sin(angle);
  std::array<double, 3> x;
  for (std::size_t f = 0; f < out.v.size(); ++f) {
    g.node_index(f, idx);
    g.node_coords(f, x);
    const double a = x[spec.plane[0]];
    const double b = x[spec.plane[1]];
    out.v[f] = phase * bilinear_plane(u, spec.plane, idx, c * a - s * b,
                                      s * a + c * b);
  }
  return out;
}

ComplexField symmetrize(const ComplexField& u, const SymmetrySpec& spec) {
  check_spec(u, spec);
  if (spec.k == 1) return u;
  ComplexField out(u.grid);
  // average of (u_g) over the group: (1/k) sum_j tau(g_j) u(g_j^{-1} x)
  for (int j = 0; j < spec.k; ++j) {
    ComplexField uj = act(u, j, spec);
    for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += uj.v[i];
  }
  const double inv = 1.0 / spec.k;
  for (auto& z : out.v) z *= inv;
  return out;
}

double equivariance_defect(const ComplexField& u, const SymmetrySpec& spec) {
  ComplexField proj = symmetrize(u, spec);
  double diff2 = 0.0, ref2 = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    diff2 += std::norm(u.v[i] - proj.v[i]);
    ref2 += std::norm(u.v[i]);
  }
  return (ref2 > 0.0) ? std::sqrt(diff2 / ref2) : 0.0;
}

int winding_number(const ComplexField& u, double radius,
                   const SymmetrySpec& spec, int samples) {
  check_spec(u, spec);
  if (!(radius > 0.0) || radius >= u.grid.length)
    throw std::invalid_argument("winding_number: radius outside the box");
  std::array<int, 3> idx{0, 0, 0};
  for (int d = 0; d < u.grid.dim; ++d) idx[d] = u.grid.n / 2;  // coordinate 0

  std::vector<cxd> loop(samples);
  double min_mod = 1e300, max_mod = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double th = 2.0 * M_PI * s / samples;
    loop[s] = bilinear_plane(u, spec.plane, idx, radius * std::cos(th),
                             radius * std::sin(th));
    min_mod = std::min(min_mod, std::abs(loop[s]));
    max_mod = std::max(max_mod, std::abs(loop[s]));
  }
  if (min_mod < 1e-8 * max_mod)
    throw std::runtime_error(
        "winding_number: degenerate loop, minimum modulus " +
        std::to_string(min_mod));
  double total = 0.0;
  for (int s = 0; s < samples; ++s)
    total += std::arg(loop[(s + 1) % samples] / loop[s]);
  const double turns = total / (2.0 * M_PI);
  const double rounded = std::round(turns);
  if (std::abs(turns - rounded) > 0.25)
    throw std::runtime_error("winding_number: phase total " +
                             std::to_string(turns) + " not cleanly integral");
  return static_cast<int>(rounded);
}

CompatReport compat_check(const PotentialPair& pot, const SymmetrySpec& spec) {
  const Grid& g = pot.v.grid;
  CompatReport rep;
  rep.tolerance = lattice_exact(spec) ? 1e-8 : 1e-5;
  if (spec.k == 1) {
    rep.compatible = true;
    return rep;
  }

  // wrap fields into complex containers so we can reuse the samplers
  ComplexField vc(g);
  for (std::size_t i = 0; i < vc.v.size(); ++i) vc.v[i] = pot.v.v[i];
  std::vector<ComplexField> ac;
  for (const auto& comp : pot.a) {
    ComplexField c(g);
    for (std::size_t i = 0; i < c.v.size(); ++i) c.v[i] = comp.v[i];
    ac.push_back(std::move(c));
  }

  std::array<int, 3> idx;
  std::array<double, 3> x;
  // interior nodes only: the lattice map wraps the i = 0 faces and the
  // resampler clips corners, neither of which reflects the potentials
  const double r_keep = g.length - 2.0 * g.h();

  for (int j = 1; j < spec.k; ++j) {
    const double angle = 2.0 * M_PI * j / spec.k;  // g itself
    const double c = std::cos(angle), s = std::sin(angle);
    SymmetrySpec plain = spec;
    plain.m = 0;  // no tau phase when transporting scalars/vectors
    ComplexField v_g = act(vc, j, plain);  // v_g(x) = V(g^{-1} x)
    std::vector<ComplexField> a_g;
    for (const auto& comp : ac) a_g.push_back(act(comp, j, plain));

    for (std::size_t f = 0; f < g.size(); ++f) {
      g.node_index(f, idx);
      g.node_coords(f, x);
      const double pr = std::hypot(x[spec.plane[0]], x[spec.plane[1]]);
      if (pr > r_keep) continue;
      bool boundary = false;
      for (int d = 0; d < g.dim; ++d)
        if (idx[d] == 0) boundary = true;
      if (boundary) continue;

      // V(g^{-1} x) vs V(x); g^{-1} runs over the whole group too
      rep.max_v_violation =
          std::max(rep.max_v_violation, std::abs(v_g.v[f].real() - pot.v.v[f]));

      if (!pot.a.empty()) {
        // compare A(g^{-1} x) with g^{-1} A(x): plane components rotate,
        // the rest must match directly
        const double a0 = pot.a[spec.plane[0]].v[f];
        const double a1 = pot.a[spec.plane[1]].v[f];
        const double r0 = c * a0 + s * a1;   // (g^{-1} A(x))_plane0
        const double r1 = -s * a0 + c * a1;  // (g^{-1} A(x))_plane1
        for (int d = 0; d < g.dim; ++d) {
          double expected;
          if (d == spec.plane[0])
            expected = r0;
          else if (d == spec.plane[1])
            expected = r1;
          else
            expected = pot.a[d].v[f];
          rep.max_a_violation = std::max(
              rep.max_a_violation, std::abs(a_g[d].v[f].real() - expected));
        }
      }
    }
  }
  rep.compatible = rep.max_a_violation <= rep.tolerance &&
                   rep.max_v_violation <= rep.tolerance;
  return rep;
}

}  // namespace choquard
