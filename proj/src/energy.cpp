#include "choquard/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace choquard {

EnergyContext make_context(const ProblemParams& params, PotentialPair pot,
                           const Grid& grid) {
  EnergyContext ctx;
  ctx.params = params;
  ctx.pot = std::move(pot);
  ctx.kernel = make_riesz_kernel(grid, params.alpha);
  ctx.sigma = params.v_inf;
  return ctx;
}

double j_value(const ComplexField& u, const EnergyContext& ctx) {
  const double ns = norm_av_sq(u, ctx.pot);
  const double d = d_functional(u, ctx.params.p, ctx.kernel);
  return 0.5 * ns - d / (2.0 * ctx.params.p);
}

double j_prime(const ComplexField& u, const ComplexField& v,
               const EnergyContext& ctx) {
  const double lin = inner_av(u, v, ctx.pot);
  const double nl = d_prime_pairing(u, v, ctx.params.p, ctx.kernel);
  return lin - nl / (2.0 * ctx.params.p);
}

ComplexField euler_lagrange(const ComplexField& u, const EnergyContext& ctx) {
  const Grid& g = u.grid;
  const double p = ctx.params.p;

  auto f = covariant_gradient(u, ctx.pot.a);
  ComplexField w = spectral_divergence(f);
  for (auto& z : w.v) z = -z;  // -div(grad_A u)

  if (!ctx.pot.a.empty()) {
    // -i A . grad_A u
    for (int d = 0; d < g.dim; ++d)
      for (std::size_t i = 0; i < w.v.size(); ++i)
        w.v[i] -= cxd(0.0, ctx.pot.a[d].v[i]) * f[d].v[i];
  }
  RealField conv = riesz_convolve(modulus_power(u, p), ctx.kernel);
  for (std::size_t i = 0; i < w.v.size(); ++i) {
    const double mod = std::abs(u.v[i]);
    const double factor = (mod == 0.0) ? 0.0 : std::pow(mod, p - 2.0);
    w.v[i] += ctx.pot.v.v[i] * u.v[i] - conv.v[i] * factor * u.v[i];
  }
  return w;
}

ComplexField grad_j(const ComplexField& u, const EnergyContext& ctx) {
  return helmholtz_solve(euler_lagrange(u, ctx), ctx.sigma);
}

double nehari_scale_from(double norm_sq, double d_value, double p) {
  if (!(norm_sq > 0.0))
    throw std::invalid_argument("nehari_scale: zero field");
  if (!(d_value > 0.0))
    throw std::invalid_argument("nehari_scale: D(u) must be positive");
  return std::pow(norm_sq / d_value, 1.0 / (2.0 * p - 2.0));
}

double nehari_scale(const ComplexField& u, const EnergyContext& ctx) {
  return nehari_scale_from(norm_av_sq(u, ctx.pot),
                           d_functional(u, ctx.params.p, ctx.kernel),
                           ctx.params.p);
}

double mountain_pass_from(double norm_sq, double d_value, double p) {
  if (!(norm_sq > 0.0))
    throw std::invalid_argument("mountain_pass_value: zero field");
  if (!(d_value > 0.0))
    throw std::invalid_argument("mountain_pass_value: D(u) must be positive");
  return (p - 1.0) / (2.0 * p) *
         std::pow(norm_sq / std::pow(d_value, 1.0 / p), p / (p - 1.0));
}

double mountain_pass_value(const ComplexField& u, const EnergyContext& ctx) {
  return mountain_pass_from(norm_av_sq(u, ctx.pot),
                            d_functional(u, ctx.params.p, ctx.kernel),
                            ctx.params.p);
}

}  // namespace choquard
