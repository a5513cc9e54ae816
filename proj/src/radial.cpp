#include "choquard/radial.hpp"

#include "choquard/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace choquard {

double sphere_area(int dim) {
  if (dim == 2) return 2.0 * M_PI;
  if (dim == 3) return 4.0 * M_PI;
  return 2.0 * std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0);
}

namespace {

// Reduced angular kernel w(r,s): (K*f)(r) = int_0^inf w(r,s) f(s) ds for
// radial f in dimension N. Diagonal values carry the cell average of the
// weakly singular |r-s| factor.
double reduced_kernel(double r, double s, int dim, double alpha, double dr) {
  if (s == 0.0) return 0.0;
  if (r == 0.0) return sphere_area(dim) * std::pow(s, dim - 1 - alpha);

  if (dim == 3) {
    const double plus = std::pow(r + s, 2.0 - alpha);
    double minus;
    if (r == s) {
      if (alpha == 2.0) {
        // cell average of ln|r-s| over [-dr/2, dr/2]
        minus = std::log(dr / 2.0) - 1.0;
      } else {
        minus = std::pow(dr / 2.0, 2.0 - alpha) / (3.0 - alpha);
      }
    } else {
      minus = (alpha == 2.0) ? std::log(std::abs(r - s))
                             : std::pow(std::abs(r - s), 2.0 - alpha);
    }
    if (alpha == 2.0) return (2.0 * M_PI * s / r) * (std::log(r + s) - minus);
    return (M_PI * s / r) * (plus - minus) / (1.0 - alpha / 2.0);
  }

  // dim == 2: numeric angular quadrature (alpha < 2 keeps it integrable)
  const int nq = 256;
  double sum = 0.0;
  for (int q = 0; q < nq; ++q) {
    const double th = M_PI * (q + 0.5) / nq;
    const double d2 = r * r + s * s - 2.0 * r * s * std::cos(th);
    sum += std::pow(std::max(d2, (dr * dr) * 1e-6), -alpha / 2.0);
  }
  return s * 2.0 * (M_PI / nq) * sum;
}

double trap_weight(int i, int m, double dr) {
  return (i == 0 || i == m - 1) ? 0.5 * dr : dr;
}

// Solves tridiagonal systems with the Thomas algorithm.
struct Tridiag {
  std::vector<double> diag, off;  // off[i] couples i and i+1

  std::vector<double> solve(const std::vector<double>& rhs) const {
    const int m = static_cast<int>(diag.size());
    std::vector<double> c(m), d(m);
    c[0] = off[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for (int i = 1; i < m; ++i) {
      const double denom = diag[i] - off[i - 1] * c[i - 1];
      c[i] = (i < m - 1) ? off[i] / denom : 0.0;
      d[i] = (rhs[i] - off[i - 1] * d[i - 1]) / denom;
    }
    std::vector<double> x(m);
    x[m - 1] = d[m - 1];
    for (int i = m - 2; i >= 0; --i) x[i] = d[i] - c[i] * x[i + 1];
    return x;
  }

  std::vector<double> apply(const std::vector<double>& u) const {
    const int m = static_cast<int>(diag.size());
    std::vector<double> y(m);
    for (int i = 0; i < m; ++i) {
      y[i] = diag[i] * u[i];
      if (i > 0) y[i] += off[i - 1] * u[i - 1];
      if (i < m - 1) y[i] += off[i] * u[i + 1];
    }
    return y;
  }
};

// Discrete ||u||_lambda^2 form: staggered stiffness plus lumped mass, in
// the sigma_{N-1} r^{N-1} dr measure.
Tridiag energy_form(const RadialMesh& mesh, int dim, double lambda,
                    const std::vector<double>& weight) {
  const int m = mesh.m_nodes;
  const double dr = mesh.dr();
  const double sn = sphere_area(dim);
  Tridiag t;
  t.diag.assign(m, 0.0);
  t.off.assign(m - 1, 0.0);
  for (int i = 0; i < m - 1; ++i) {
    const double rmid = 0.5 * (mesh.r(i) + mesh.r(i + 1));
    const double k = sn * std::pow(rmid, dim - 1) / dr;
    t.diag[i] += k;
    t.diag[i + 1] += k;
    t.off[i] -= k;
  }
  for (int i = 0; i < m; ++i) t.diag[i] += lambda * weight[i];
  return t;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

RadialConvolution::RadialConvolution(const RadialMesh& mesh, int dim,
                                     double alpha)
    : mesh_(mesh), dim_(dim), alpha_(alpha) {
  if (!(alpha > 0.0 && alpha < dim))
    throw std::invalid_argument("radial convolution needs 0 < alpha < dim");
  const int m = mesh.m_nodes;
  const double dr = mesh.dr();
  const double sn = sphere_area(dim);

  weight_.resize(m);
  for (int i = 0; i < m; ++i)
    weight_[i] = sn * std::pow(mesh.r(i), dim - 1) * trap_weight(i, m, dr);

  conv_.assign(static_cast<std::size_t>(m) * m, 0.0);
  if (dim == 3 && alpha == 1.0) {
    // exact Newtonian shells: (4 pi / r) int_0^r s^2 f + 4 pi int_r^rmax s f
    for (int i = 0; i < m; ++i) {
      const double r = mesh.r(i);
      for (int j = 0; j < m; ++j) {
        const double s = mesh.r(j);
        double v = 0.0;
        if (i > 0 && j <= i) {
          const double tw = (j == 0 || j == i) ? 0.5 * dr : dr;
          v += (4.0 * M_PI / r) * tw * s * s;
        }
        if (j >= i) {
          const double tw = (j == i || j == m - 1) ? 0.5 * dr : dr;
          v += 4.0 * M_PI * tw * s;
        }
        conv_[static_cast<std::size_t>(i) * m + j] = v;
      }
    }
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        conv_[static_cast<std::size_t>(i) * m + j] =
            reduced_kernel(mesh.r(i), mesh.r(j), dim, alpha, dr) *
            trap_weight(j, m, dr);
  }

  // symmetric quadratic form B = (diag(w) M + M^T diag(w)) / 2
  form_.assign(conv_.size(), 0.0);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      form_[static_cast<std::size_t>(i) * m + j] =
          0.5 * (weight_[i] * conv_[static_cast<std::size_t>(i) * m + j] +
                 weight_[j] * conv_[static_cast<std::size_t>(j) * m + i]);
}

std::vector<double> RadialConvolution::apply(const std::vector<double>& f) const {
  const int m = mesh_.m_nodes;
  for (double x : f)
    if (x < 0.0)
      throw std::invalid_argument("radial_convolve: negative entries");
  std::vector<double> out(m, 0.0);
  for (int i = 0; i < m; ++i) {
    double s = 0.0;
    const double* row = conv_.data() + static_cast<std::size_t>(i) * m;
    for (int j = 0; j < m; ++j) s += row[j] * f[j];
    out[i] = s;
  }
  return out;
}

double RadialConvolution::d_functional(const std::vector<double>& u,
                                       double p) const {
  const int m = mesh_.m_nodes;
  std::vector<double> f(m);
  for (int i = 0; i < m; ++i) f[i] = std::pow(std::abs(u[i]), p);
  double s = 0.0;
  for (int i = 0; i < m; ++i) {
    const double* row = form_.data() + static_cast<std::size_t>(i) * m;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += row[j] * f[j];
    s += f[i] * acc;
  }
  return s;
}

std::vector<double> RadialConvolution::d_gradient(const std::vector<double>& u,
                                                  double p) const {
  const int m = mesh_.m_nodes;
  std::vector<double> f(m);
  for (int i = 0; i < m; ++i) f[i] = std::pow(std::abs(u[i]), p);
  std::vector<double> bf(m, 0.0);
  for (int i = 0; i < m; ++i) {
    const double* row = form_.data() + static_cast<std::size_t>(i) * m;
    double acc = 0.0;
    for (int j = 0; j < m; ++j) acc += row[j] * f[j];
    bf[i] = acc;
  }
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i)
    g[i] = 2.0 * p * bf[i] *
           (u[i] == 0.0 ? 0.0 : std::pow(std::abs(u[i]), p - 2.0) * u[i]);
  return g;
}

std::vector<double> radial_convolve(const std::vector<double>& f,
                                    const RadialMesh& mesh, int dim,
                                    double alpha) {
  return RadialConvolution(mesh, dim, alpha).apply(f);
}

RadialProfile solve_ground_state(double lambda, const ProblemParams& params,
                                 const RadialMesh& mesh,
                                 const RadialSolveConfig& cfg) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  const int m = mesh.m_nodes;
  if (m < 16) throw std::invalid_argument("mesh too coarse (m_nodes < 16)");
  const double p = params.p;

  RadialConvolution conv(mesh, params.dim, params.alpha);
  std::vector<double> weight(m);
  for (int i = 0; i < m; ++i) weight[i] = conv.quad_weight(i);
  const Tridiag s_form = energy_form(mesh, params.dim, lambda, weight);

  auto project = [&](std::vector<double>& u) {
    for (double& x : u) x = std::max(x, 0.0);
    u[m - 1] = 0.0;  // Dirichlet tail
  };
  auto norm_sq = [&](const std::vector<double>& u) {
    return dot(u, s_form.apply(u));
  };
  auto j_of = [&](const std::vector<double>& u) {
    return 0.5 * norm_sq(u) - conv.d_functional(u, p) / (2.0 * p);
  };

  RadialProfile prof;
  prof.mesh = mesh;
  prof.lambda = lambda;

  // deterministic Gaussian seed at the decay scale 1/sqrt(lambda)
  const double width = (cfg.init_width > 0.0) ? cfg.init_width
                                              : 1.0 / std::sqrt(lambda);
  std::vector<double> u(m);
  for (int i = 0; i < m; ++i) {
    const double r = mesh.r(i);
    u[i] = std::exp(-r * r / (2.0 * width * width));
  }
  project(u);
  {
    const double t = nehari_scale_from(norm_sq(u), conv.d_functional(u, p), p);
    for (double& x : u) x *= t;
  }

  double j_cur = j_of(u);
  bool converged = false;
  int it = 0;
  for (; it < cfg.max_iter; ++it) {
    std::vector<double> su = s_form.apply(u);
    std::vector<double> grad = conv.d_gradient(u, p);
    for (int i = 0; i < m; ++i) grad[i] = su[i] - grad[i] / (2.0 * p);
    std::vector<double> dir = s_form.solve(grad);

    const double u_ns = dot(u, su);
    const double g_ns = dot(dir, grad);  // dir^T S dir
    const double res = std::sqrt(std::max(0.0, g_ns / u_ns));
    prof.residual_trace.push_back(res);

    const double d_cur = conv.d_functional(u, p);
    const double nehari_res = std::abs(u_ns - d_cur) / u_ns;
    if (res <= cfg.tol_grad && nehari_res <= cfg.tol_nehari) {
      converged = true;
      break;
    }

    double step = 1.0;
    bool accepted = false;
    std::vector<double> v(m);
    while (true) {
      for (int i = 0; i < m; ++i) v[i] = u[i] - step * dir[i];
      project(v);
      double ns = norm_sq(v);
      double dv = conv.d_functional(v, p);
      if (ns > 0.0 && dv > 0.0) {
        const double t = nehari_scale_from(ns, dv, p);
        for (double& x : v) x *= t;
        // on the manifold J(tv) = ((p-1)/2p) ||tv||^2 = ((p-1)/2p) t^2 ns,
        // which spares a second dense d_functional per trial
        const double j_new = (p - 1.0) / (2.0 * p) * t * t * ns;
        if (j_new <= j_cur - cfg.armijo_c * step * g_ns ||
            (step <= cfg.step_floor && j_new <= j_cur + 1e-12)) {
          u = v;
          j_cur = j_new;
          accepted = true;
          break;
        }
      }
      if (step <= cfg.step_floor) break;
      step *= 0.5;
    }
    if (!accepted) break;  // stagnation at the step floor
  }

  prof.values = u;
  prof.iterations = it;
  prof.converged = converged;
  prof.norm_sq = norm_sq(u);
  prof.d_value = conv.d_functional(u, p);
  prof.energy = 0.5 * prof.norm_sq - prof.d_value / (2.0 * p);
  prof.nehari_residual = std::abs(prof.norm_sq - prof.d_value) / prof.norm_sq;
  {
    std::vector<double> su = s_form.apply(u);
    std::vector<double> grad = conv.d_gradient(u, p);
    for (int i = 0; i < m; ++i) grad[i] = su[i] - grad[i] / (2.0 * p);
    std::vector<double> dir = s_form.solve(grad);
    prof.grad_residual =
        std::sqrt(std::max(0.0, dot(dir, grad) / dot(u, su)));
  }
  return prof;
}

DecayFit decay_fit_values(const std::vector<double>& r,
                          const std::vector<double>& u) {
  if (r.size() != u.size() || r.size() < 4)
    throw std::invalid_argument("decay_fit: need at least 4 samples");
  // log u = c - rate * r - power * log r
  double a[3][3] = {{0}}, b[3] = {0};
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(u[i] > 0.0) || !(r[i] > 0.0))
      throw std::invalid_argument("decay_fit: nonpositive values in window");
    const double basis[3] = {1.0, -r[i], -std::log(r[i])};
    const double y = std::log(u[i]);
    for (int p = 0; p < 3; ++p) {
      for (int q = 0; q < 3; ++q) a[p][q] += basis[p] * basis[q];
      b[p] += basis[p] * y;
    }
  }
  // Gaussian elimination, 3x3
  double mtx[3][4];
  for (int p = 0; p < 3; ++p) {
    for (int q = 0; q < 3; ++q) mtx[p][q] = a[p][q];
    mtx[p][3] = b[p];
  }
  for (int c = 0; c < 3; ++c) {
    int piv = c;
    for (int rr = c + 1; rr < 3; ++rr)
      if (std::abs(mtx[rr][c]) > std::abs(mtx[piv][c])) piv = rr;
    std::swap(mtx[c], mtx[piv]);
    for (int rr = 0; rr < 3; ++rr) {
      if (rr == c) continue;
      const double f = mtx[rr][c] / mtx[c][c];
      for (int q = c; q < 4; ++q) mtx[rr][q] -= f * mtx[c][q];
    }
  }
  DecayFit fit;
  fit.offset = mtx[0][3] / mtx[0][0];
  fit.rate = mtx[1][3] / mtx[1][1];
  fit.power = mtx[2][3] / mtx[2][2];
  double ss = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double pred = fit.offset - fit.rate * r[i] - fit.power * std::log(r[i]);
    const double e = std::log(u[i]) - pred;
    ss += e * e;
  }
  fit.residual = std::sqrt(ss / r.size());
  return fit;
}

DecayFit decay_fit(const RadialProfile& profile, double r_lo, double r_hi) {
  const RadialMesh& mesh = profile.mesh;
  if (r_lo < 0.4 * mesh.r_max - 1e-12 || r_hi > 0.9 * mesh.r_max + 1e-12 ||
      r_lo >= r_hi)
    throw std::invalid_argument(
        "decay_fit: window must lie inside [0.4, 0.9] * r_max");
  std::vector<double> rs, us;
  for (int i = 0; i < mesh.m_nodes; ++i) {
    const double r = mesh.r(i);
    if (r < r_lo || r > r_hi) continue;
    rs.push_back(r);
    us.push_back(profile.values[i]);
  }
  return decay_fit_values(rs, us);
}

std::vector<double> radial_derivative(const RadialProfile& profile) {
  const int m = profile.mesh.m_nodes;
  const double dr = profile.mesh.dr();
  const auto& u = profile.values;
  std::vector<double> d(m);
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * dr);
  for (int i = 1; i < m - 1; ++i) d[i] = (u[i + 1] - u[i - 1]) / (2.0 * dr);
  d[m - 1] = (3.0 * u[m - 1] - 4.0 * u[m - 2] + u[m - 3]) / (2.0 * dr);
  return d;
}

}  // namespace choquard
