#include "choquard/solver.hpp"

#include <chrono>
#include <cmath>
#include <stdexcept>

namespace choquard {

ComplexField initial_guess_field(const Grid& grid, const SymmetrySpec& spec,
                                 const InitialGuess& guess) {
  if (guess.preset == "zero") return ComplexField(grid);

  const double w2 = 2.0 * guess.width * guess.width;
  if (guess.preset == "single_bump") {
    return sample_complex(grid, [&](const std::array<double, 3>& x) {
      double r2 = 0.0;
      for (int d = 0; d < grid.dim; ++d) r2 += x[d] * x[d];
      return cxd(guess.amplitude * std::exp(-r2 / w2), 0.0);
    });
  }
  if (guess.preset == "ring_bumps") {
    // k Gaussian copies at radius rho_0 in the rotation plane, carrying
    // the tau phases; already equivariant up to roundoff
    std::vector<std::array<double, 3>> centers;
    std::vector<cxd> phases;
    for (int j = 0; j < spec.k; ++j) {
      const double th = 2.0 * M_PI * j / spec.k;
      std::array<double, 3> c{0.0, 0.0, 0.0};
      c[spec.plane[0]] = guess.radius * std::cos(th);
      c[spec.plane[1]] = guess.radius * std::sin(th);
      centers.push_back(c);
      phases.push_back(tau_phase(spec, j));
    }
    return sample_complex(grid, [&](const std::array<double, 3>& x) {
      cxd s(0.0);
      for (int j = 0; j < spec.k; ++j) {
        double r2 = 0.0;
        for (int d = 0; d < grid.dim; ++d) {
          const double dx = x[d] - centers[j][d];
          r2 += dx * dx;
        }
        s += phases[j] * guess.amplitude * std::exp(-r2 / w2);
      }
      return s;
    });
  }
  throw std::invalid_argument("unknown initial-guess preset: " + guess.preset);
}

double boundary_mass_fraction(const ComplexField& u) {
  const Grid& g = u.grid;
  const int margin = std::max(1, g.n / 16);
  double total = 0.0, edge = 0.0;
  std::array<int, 3> idx;
  for (std::size_t f = 0; f < u.v.size(); ++f) {
    const double m = std::norm(u.v[f]);
    total += m;
    g.node_index(f, idx);
    bool near = false;
    for (int d = 0; d < g.dim; ++d)
      if (idx[d] < margin || idx[d] >= g.n - margin) near = true;
    if (near) edge += m;
  }
  return (total > 0.0) ? edge / total : 0.0;
}

SolveReport solve(const EnergyContext& ctx, const SymmetrySpec& spec,
                  const SolveConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const double p = ctx.params.p;

  {
    CompatReport compat = compat_check(ctx.pot, spec);
    if (!compat.compatible)
      throw std::invalid_argument(
          "solve: potentials not G-compatible (max violation " +
          std::to_string(std::max(compat.max_a_violation,
                                  compat.max_v_violation)) +
          ")");
  }

  ComplexField u = initial_guess_field(ctx.grid(), spec, cfg.guess);
  u = symmetrize(u, spec);
  double ns_cur = 0.0, dv_cur = 0.0;
  {
    const double ns = norm_av_sq(u, ctx.pot);
    const double dv = d_functional(u, p, ctx.kernel);
    if (!(ns > 0.0) || !(dv > 0.0))
      throw std::invalid_argument(
          "solve: degenerate initial guess (Nehari rescale undefined at 0)");
    const double t = nehari_scale_from(ns, dv, p);
    scale(u, t);
    ns_cur = t * t * ns;
    dv_cur = std::pow(t, 2.0 * p) * dv;
  }

  SolveReport rep;
  double j_cur = 0.5 * ns_cur - dv_cur / (2.0 * p);
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    ComplexField g = grad_j(u, ctx);
    const double g_ns = inner_sigma(g, g, ctx.sigma);
    const double u_ns = inner_sigma(u, u, ctx.sigma);
    const double res = std::sqrt(std::max(0.0, g_ns / u_ns));
    const double nres = std::abs(ns_cur - dv_cur) / ns_cur;
    rep.trace.push_back({it, j_cur, res, nres, 0.0});

    if (!std::isfinite(j_cur) || !std::isfinite(res))
      throw std::runtime_error("solve: NaN/overflow in iteration " +
                               std::to_string(it));
    if (res <= cfg.tol_grad && nres <= cfg.tol_nehari) {
      converged = true;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    while (true) {
      ComplexField v = u;
      axpy(v, cxd(-step, 0.0), g);
      double vns = norm_av_sq(v, ctx.pot);
      double vdv = d_functional(v, p, ctx.kernel);
      if (vns > 0.0 && vdv > 0.0) {
        // after the Nehari rescale J is available in closed form from
        // the homogeneity of the two terms; no extra transforms needed
        const double t = nehari_scale_from(vns, vdv, p);
        vns *= t * t;
        vdv *= std::pow(t, 2.0 * p);
        const double j_new = 0.5 * vns - vdv / (2.0 * p);
        if (j_new <= j_cur - cfg.armijo_c * step * g_ns ||
            (step <= cfg.step_floor && j_new <= j_cur + 1e-12)) {
          scale(v, t);
          if (cfg.symmetrize_every > 0 && (it % cfg.symmetrize_every) == 0)
            v = symmetrize(v, spec);
          u = std::move(v);
          j_cur = j_new;
          ns_cur = vns;
          dv_cur = vdv;
          accepted = true;
          break;
        }
      }
      if (step <= cfg.step_floor) break;
      step *= 0.5;
    }
    if (!accepted) break;  // stagnation at the step floor
  }

  // the in-loop symmetrize runs after the Nehari rescale, so the projection
  // can leave a tiny residual in ||u||^2 - D(u); one final rescale (a scalar
  // multiple, which commutes with the projector) restores the manifold
  // identity J = ((p-1)/2p) ||u||^2 exactly up to rounding
  {
    const double ns = norm_av_sq(u, ctx.pot);
    const double dv = d_functional(u, p, ctx.kernel);
    if (ns > 0.0 && dv > 0.0) scale(u, nehari_scale_from(ns, dv, p));
  }

  rep.field = u;
  rep.iterations = it;
  rep.converged = converged;
  rep.norm_av_sq = norm_av_sq(u, ctx.pot);
  rep.d_value = d_functional(u, p, ctx.kernel);
  rep.j = 0.5 * rep.norm_av_sq - rep.d_value / (2.0 * p);
  rep.t_u_drift =
      std::abs(nehari_scale_from(rep.norm_av_sq, rep.d_value, p) - 1.0);
  rep.nehari_residual = std::abs(rep.norm_av_sq - rep.d_value) / rep.norm_av_sq;
  {
    ComplexField g = grad_j(u, ctx);
    rep.grad_residual = std::sqrt(std::max(
        0.0, inner_sigma(g, g, ctx.sigma) / inner_sigma(u, u, ctx.sigma)));
  }
  rep.equivariance_defect = equivariance_defect(u, spec);
  rep.boundary_mass_fraction = boundary_mass_fraction(u);
  if (spec.k > 1) {
    try {
      rep.winding = winding_number(u, cfg.guess.radius, spec);
      rep.winding_valid = true;
    } catch (const std::exception&) {
      rep.winding_valid = false;
    }
  }
  rep.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - t0)
                         .count();
  return rep;
}

PsSummary ps_monitor(const SolveReport& report) {
  PsSummary s;
  const auto& tr = report.trace;
  if (tr.size() < 10)
    throw std::invalid_argument("ps_monitor: need at least 10 iterations");
  s.c_estimate = report.j;
  s.boundary_mass_fraction = report.boundary_mass_fraction;

  // log-linear fit of the gradient residual over the last half of the run
  const std::size_t lo = tr.size() / 2;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (std::size_t i = lo; i < tr.size(); ++i) {
    if (!(tr[i].grad_res > 0.0)) continue;
    const double x = static_cast<double>(tr[i].iter);
    const double y = std::log(tr[i].grad_res);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n >= 2) {
    const double denom = n * sxx - sx * sx;
    s.residual_slope = (denom != 0.0) ? (n * sxy - sx * sy) / denom : 0.0;
  }
  s.stagnation = !report.converged &&
                 (s.residual_slope > -1e-4 ||
                  report.boundary_mass_fraction > 1e-6);
  s.is_ps_like = report.converged ||
                 (std::isfinite(report.j) && !s.stagnation);
  return s;
}

}  // namespace choquard
