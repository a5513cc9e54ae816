#pragma once

#include "choquard/field.hpp"

namespace choquard {

/// Tabulated Riesz kernel |x|^{-alpha} on the 2x zero-padded companion of
/// a grid, stored as its Fourier transform so convolutions cost two FFTs.
struct RieszKernel {
  Grid grid;
  double alpha = 1.0;
  double origin_value = 0.0;       // cell-average regularization at x = 0
  std::vector<cxd> kernel_hat;     // forward FFT of the padded tabulation
  int padded_n = 0;
};

/// Cell average of |x|^{-alpha} over [-h/2, h/2]^dim (the origin cell of
/// the tabulation); alpha < dim keeps it finite.
double riesz_origin_cell_average(int dim, double alpha, double h);

RieszKernel make_riesz_kernel(const Grid& grid, double alpha);

/// Linear (aperiodic) convolution sum_y K(x - y) f(y) h^dim via the
/// zero-padded FFT; preserves positivity up to roundoff.
RealField riesz_convolve(const RealField& f, const RieszKernel& kernel);

/// |u|^p as a real field.
RealField modulus_power(const ComplexField& u, double p);

/// The double integral int int |u(x)|^p |u(y)|^p / |x-y|^alpha.
double d_functional(const ComplexField& u, double p, const RieszKernel& kernel);

/// Directional derivative d/dt D(u + t v) at t = 0; requires p >= 2.
double d_prime_pairing(const ComplexField& u, const ComplexField& v, double p,
                       const RieszKernel& kernel);

struct HlsReport {
  double d_value = 0.0;
  double lpr_norm = 0.0;   // ||u||_{L^{pr}}
  double bound = 0.0;      // k_const * ||u||_{L^{pr}}^{2p}
  double ratio = 0.0;      // d_value / ||u||_{L^{pr}}^{2p}
  bool finite = false;
};

/// Reports both sides of the Hardy-Littlewood-Sobolev bound for D. The
/// constant is configurable; the report asserts finiteness and tracks
/// the empirical ratio, no sharp constant is assumed.
HlsReport hls_check(const ComplexField& u, double p, const RieszKernel& kernel,
                    double k_const = 1.0);

/// O(n^{2 dim}) double sum with the identical tabulated kernel; test oracle.
double d_functional_bruteforce(const ComplexField& u, double p,
                               const RieszKernel& kernel);

}  // namespace choquard
