#include "choquard/nonlocal.hpp"

#include <cmath>
#include <stdexcept>

#include "fft.hpp"

namespace choquard {

namespace {

// 24-point Gauss-Legendre nodes/weights on [0, 1].
constexpr int kGL = 24;
struct GL {
  double x[kGL], w[kGL];
  GL() {
    // Newton iteration on Legendre polynomials, standard construction
    for (int i = 0; i < kGL; ++i) {
      double t = std::cos(M_PI * (i + 0.75) / (kGL + 0.5));
      double pp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = t;
        for (int k = 2; k <= kGL; ++k) {
          double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        pp = kGL * (t * p1 - p0) / (t * t - 1.0);
        double dt = p1 / pp;
        t -= dt;
        if (std::abs(dt) < 1e-15) break;
      }
      x[i] = 0.5 * (1.0 - t);  // map [-1,1] -> [0,1], descending roots
      w[i] = 1.0 / ((1.0 - t * t) * pp * pp);
    }
  }
};
const GL gl;

// Integral of |x|^{-alpha} over an axis-aligned box away from the origin.
double box_integral(int dim, double alpha, const double lo[3], const double hi[3]) {
  double sum = 0.0;
  if (dim == 2) {
    for (int i = 0; i < kGL; ++i)
      for (int j = 0; j < kGL; ++j) {
        const double xx = lo[0] + (hi[0] - lo[0]) * gl.x[i];
        const double yy = lo[1] + (hi[1] - lo[1]) * gl.x[j];
        sum += gl.w[i] * gl.w[j] * std::pow(xx * xx + yy * yy, -alpha / 2.0);
      }
    return sum * (hi[0] - lo[0]) * (hi[1] - lo[1]);
  }
  for (int i = 0; i < kGL; ++i)
    for (int j = 0; j < kGL; ++j)
      for (int k = 0; k < kGL; ++k) {
        const double xx = lo[0] + (hi[0] - lo[0]) * gl.x[i];
        const double yy = lo[1] + (hi[1] - lo[1]) * gl.x[j];
        const double zz = lo[2] + (hi[2] - lo[2]) * gl.x[k];
        sum += gl.w[i] * gl.w[j] * gl.w[k] *
               std::pow(xx * xx + yy * yy + zz * zz, -alpha / 2.0);
      }
  return sum * (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
}

// C(dim, alpha) = int_{[-1,1]^dim} |x|^{-alpha} dx via the dyadic-shell
// identity C = S + 2^{alpha-dim} C, where S is the integral over the
// shell [-1,1]^dim \ [-1/2,1/2]^dim (smooth, |x| >= 1/2 there).
double unit_cube_integral(int dim, double alpha) {
  static const double edges[5] = {-1.0, -0.5, 0.0, 0.5, 1.0};
  double shell = 0.0;
  const int boxes = (dim == 2) ? 16 : 64;
  for (int b = 0; b < boxes; ++b) {
    int code = b;
    double lo[3] = {0, 0, 0}, hi[3] = {0, 0, 0};
    bool inner = true;
    for (int d = 0; d < dim; ++d) {
      const int c = code % 4;
      code /= 4;
      lo[d] = edges[c];
      hi[d] = edges[c + 1];
      if (c == 0 || c == 3) inner = false;
    }
    if (inner) continue;
    shell += box_integral(dim, alpha, lo, hi);
  }
  return shell / (1.0 - std::pow(2.0, alpha - dim));
}

}  // namespace

double riesz_origin_cell_average(int dim, double alpha, double h) {
  if (!(alpha > 0.0 && alpha < dim))
    throw std::invalid_argument("riesz kernel needs 0 < alpha < dim");
  const double c = unit_cube_integral(dim, alpha);
  // cell [-h/2, h/2]^dim scales as (h/2)^{dim - alpha} times the unit cube
  return std::pow(h / 2.0, dim - alpha) * c / std::pow(h, dim);
}

namespace {

// Tabulated kernel value at an integer displacement; shared by the FFT
// tabulation and the brute-force oracle so their agreement is algebraic.
double kernel_value(const Grid& g, const std::array<int, 3>& delta,
                    double alpha, double origin_value) {
  double r2 = 0.0;
  for (int d = 0; d < g.dim; ++d) {
    const double x = delta[d] * g.h();
    r2 += x * x;
  }
  if (r2 == 0.0) return origin_value;
  return std::pow(r2, -alpha / 2.0);
}

}  // namespace

RieszKernel make_riesz_kernel(const Grid& grid, double alpha) {
  RieszKernel k;
  k.grid = grid;
  k.alpha = alpha;
  k.origin_value = riesz_origin_cell_average(grid.dim, alpha, grid.h());
  k.padded_n = 2 * grid.n;

  const int pn = k.padded_n;
  std::size_t total = 1;
  for (int d = 0; d < grid.dim; ++d) total *= static_cast<std::size_t>(pn);
  std::vector<double> tab(total, 0.0);

  std::array<int, 3> idx{0, 0, 0}, delta{0, 0, 0};
  for (std::size_t f = 0; f < total; ++f) {
    std::size_t rem = f;
    for (int d = grid.dim - 1; d >= 0; --d) {
      idx[d] = static_cast<int>(rem % pn);
      rem /= pn;
    }
    for (int d = 0; d < grid.dim; ++d)
      delta[d] = (idx[d] <= grid.n) ? idx[d] : idx[d] - pn;
    tab[f] = kernel_value(grid, delta, alpha, k.origin_value);
  }
  // the tabulation is real and even, so only the half spectrum is kept
  k.kernel_hat = fft::forward_r2c(tab, grid.dim, pn);
  return k;
}

RealField riesz_convolve(const RealField& f, const RieszKernel& kernel) {
  if (!(f.grid == kernel.grid))
    throw std::invalid_argument("riesz_convolve: grid mismatch");
  const Grid& g = f.grid;
  const int n = g.n;
  const int pn = kernel.padded_n;

  std::size_t total = 1;
  for (int d = 0; d < g.dim; ++d) total *= static_cast<std::size_t>(pn);
  std::vector<double> work(total, 0.0);

  std::array<int, 3> idx{0, 0, 0};
  for (std::size_t i = 0; i < f.v.size(); ++i) {
    g.node_index(i, idx);
    std::size_t pf = 0;
    for (int d = 0; d < g.dim; ++d) pf = pf * pn + static_cast<std::size_t>(idx[d]);
    work[pf] = f.v[i];
  }
  std::vector<cxd> spec = fft::forward_r2c(work, g.dim, pn);
  for (std::size_t i = 0; i < spec.size(); ++i) spec[i] *= kernel.kernel_hat[i];
  work = fft::backward_c2r(spec, g.dim, pn);

  RealField out(g);
  const double w = g.cell_volume();
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    g.node_index(i, idx);
    std::size_t pf = 0;
    for (int d = 0; d < g.dim; ++d) pf = pf * pn + static_cast<std::size_t>(idx[d]);
    out.v[i] = work[pf] * w;
  }
  return out;
}

RealField modulus_power(const ComplexField& u, double p) {
  RealField out(u.grid);
  for (std::size_t i = 0; i < u.v.size(); ++i)
    out.v[i] = std::pow(std::abs(u.v[i]), p);
  return out;
}

double d_functional(const ComplexField& u, double p, const RieszKernel& kernel) {
  RealField f = modulus_power(u, p);
  RealField conv = riesz_convolve(f, kernel);
  double s = 0.0;
  for (std::size_t i = 0; i < f.v.size(); ++i) s += conv.v[i] * f.v[i];
  return s * u.grid.cell_volume();
}

double d_prime_pairing(const ComplexField& u, const ComplexField& v, double p,
                       const RieszKernel& kernel) {
  if (p < 2.0)
    throw std::invalid_argument("d_prime_pairing: requires p >= 2");
  if (!(u.grid == v.grid))
    throw std::invalid_argument("d_prime_pairing: grid mismatch");
  RealField f = modulus_power(u, p);
  RealField conv = riesz_convolve(f, kernel);
  double s = 0.0;
  for (std::size_t i = 0; i < u.v.size(); ++i) {
    const double mod = std::abs(u.v[i]);
    // |u|^{p-2} u, continuously extended by 0 at zeros of u
    const double factor = (mod == 0.0) ? 0.0 : std::pow(mod, p - 2.0);
    s += conv.v[i] * factor * std::real(u.v[i] * std::conj(v.v[i]));
  }
  return 2.0 * p * s * u.grid.cell_volume();
}

HlsReport hls_check(const ComplexField& u, double p, const RieszKernel& kernel,
                    double k_const) {
  HlsReport rep;
  rep.d_value = d_functional(u, p, kernel);
  const double r = 2.0 * u.grid.dim / (2.0 * u.grid.dim - kernel.alpha);
  const double pr = p * r;
  double s = 0.0;
  for (const auto& z : u.v) s += std::pow(std::abs(z), pr);
  rep.lpr_norm = std::pow(s * u.grid.cell_volume(), 1.0 / pr);
  const double pw = std::pow(rep.lpr_norm, 2.0 * p);
  rep.bound = k_const * pw;
  rep.ratio = (pw > 0.0) ? rep.d_value / pw : 0.0;
  rep.finite = std::isfinite(rep.d_value) && std::isfinite(rep.bound);
  return rep;
}

double d_functional_bruteforce(const ComplexField& u, double p,
                               const RieszKernel& kernel) {
  const Grid& g = u.grid;
  RealField f = modulus_power(u, p);
  const std::size_t total = g.size();
  std::array<int, 3> ia{0, 0, 0}, ib{0, 0, 0}, delta{0, 0, 0};
  double s = 0.0;
  for (std::size_t a = 0; a < total; ++a) {
    g.node_index(a, ia);
    for (std::size_t b = 0; b < total; ++b) {
      g.node_index(b, ib);
      for (int d = 0; d < g.dim; ++d) delta[d] = ia[d] - ib[d];
      s += kernel_value(g, delta, kernel.alpha, kernel.origin_value) * f.v[a] *
           f.v[b];
    }
  }
  const double w = g.cell_volume();
  return s * w * w;
}

}  // namespace choquard
