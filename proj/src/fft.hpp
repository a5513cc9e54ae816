#pragma once

#include <complex>
#include <vector>

namespace choquard::fft {

// In-place c2c transforms on a dim-dimensional cube with n nodes per axis.
// Unnormalized forward; backward divides by the total node count.
void forward(std::vector<std::complex<double>>& data, int dim, int n);
void backward(std::vector<std::complex<double>>& data, int dim, int n);

// Real-input transforms for the convolution path: forward returns the
// half spectrum (last axis trimmed to n/2 + 1), backward consumes it
// (destroying the spectrum) and divides by the total node count.
std::vector<std::complex<double>> forward_r2c(const std::vector<double>& data,
                                              int dim, int n);
std::vector<double> backward_c2r(std::vector<std::complex<double>>& spec,
                                 int dim, int n);

}  // namespace choquard::fft
