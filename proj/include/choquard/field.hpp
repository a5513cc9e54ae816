#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "choquard/params.hpp"

namespace choquard {

using cxd = std::complex<double>;

/// Truncated Cartesian box [-L, L)^dim with n even nodes per axis.
struct Grid {
  int dim = 3;
  int n = 32;
  double length = 8.0;  // half extent L

  double h() const { return 2.0 * length / n; }
  std::size_t size() const {
    std::size_t s = 1;
    for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
    return s;
  }
  double coord(int i) const { return -length + i * h(); }
  double cell_volume() const {
    double v = 1.0;
    for (int d = 0; d < dim; ++d) v *= h();
    return v;
  }
  /// Fourier wavenumber of mode index m on this box (Nyquist mapped to
  /// the negative side).
  double wavenumber(int m) const {
    const int half = n / 2;
    const int mm = (m < half) ? m : m - n;
    return M_PI / length * mm;
  }
  void node_coords(std::size_t flat, std::array<double, 3>& x) const;
  void node_index(std::size_t flat, std::array<int, 3>& idx) const;
  std::size_t flat_index(const std::array<int, 3>& idx) const;

  bool operator==(const Grid&) const = default;
};

struct RealField {
  Grid grid;
  std::vector<double> v;

  RealField() = default;
  explicit RealField(const Grid& g) : grid(g), v(g.size(), 0.0) {}
};

struct ComplexField {
  Grid grid;
  std::vector<cxd> v;

  ComplexField() = default;
  explicit ComplexField(const Grid& g) : grid(g), v(g.size(), cxd(0.0)) {}
};

/// Vector potential A and electric potential V sampled on one grid.
struct PotentialPair {
  std::vector<RealField> a;  // one component per axis; empty means A = 0
  RealField v;
  double v_inf = 1.0;
};

RealField sample_real(const Grid& g,
                      const std::function<double(const std::array<double, 3>&)>& f);
ComplexField sample_complex(
    const Grid& g, const std::function<cxd(const std::array<double, 3>&)>& f);

// ---- linear algebra on fields ----------------------------------------

void axpy(ComplexField& y, cxd a, const ComplexField& x);
void scale(ComplexField& u, cxd a);
double l2_norm(const ComplexField& u);      // includes quadrature weight
double max_abs(const ComplexField& u);
RealField modulus(const ComplexField& u);

// ---- spectral calculus ------------------------------------------------

/// Spectral gradient, one complex component per axis.
std::vector<ComplexField> spectral_gradient(const ComplexField& u);

/// nabla_A u = nabla u + i A u.
std::vector<ComplexField> covariant_gradient(const ComplexField& u,
                                             const std::vector<RealField>& a);

/// Spectral divergence of a vector field.
ComplexField spectral_divergence(const std::vector<ComplexField>& f);

/// Solves (-Laplace + sigma) g = rhs spectrally; sigma > 0.
ComplexField helmholtz_solve(const ComplexField& rhs, double sigma);

// ---- the A,V geometry -------------------------------------------------

double inner_av(const ComplexField& u, const ComplexField& v,
                const PotentialPair& pot);
double norm_av_sq(const ComplexField& u, const PotentialPair& pot);
double norm_av(const ComplexField& u, const PotentialPair& pot);

/// Inner product of the constant-coefficient preconditioner geometry,
/// Re int (grad u . conj grad v + sigma u conj v).
double inner_sigma(const ComplexField& u, const ComplexField& v, double sigma);

struct DiamagneticReport {
  double lhs = 0.0;       // || grad |u| ||_L2
  double rhs = 0.0;       // || grad_A u ||_L2
  double margin = 0.0;    // rhs - lhs
  double tol_disc = 0.0;  // discretization allowance used
  bool holds = false;
};

DiamagneticReport diamagnetic_check(const ComplexField& u,
                                    const std::vector<RealField>& a,
                                    double tol_rel = 1e-3);

// ---- potential presets ------------------------------------------------

/// A = 0 everywhere.
std::vector<RealField> potential_a_zero(const Grid& g);

/// Constant magnetic field in the given plane: A = b * (-x2, x1) on the
/// plane axes, zero on the rest.
std::vector<RealField> potential_a_constant_field(const Grid& g, double b,
                                                  const std::array<int, 2>& plane);

/// V identically v_inf.
RealField potential_v_constant(const Grid& g, double v_inf);

/// V = v_inf - c0 exp(-kappa |x|): the exponential-approach well.
RealField potential_v_exp_well(const Grid& g, double v_inf, double c0,
                               double kappa);

}  // namespace choquard
