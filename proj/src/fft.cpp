#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace choquard::fft {

namespace {

struct PlanKey {
  int dim;
  int n;
  int sign;
  auto operator<=>(const PlanKey&) const = default;
};

// FFTW planning is not thread safe; execution on distinct buffers is.
std::mutex plan_mutex;
std::map<PlanKey, fftw_plan> plan_cache;

fftw_plan get_plan(int dim, int n, int sign, fftw_complex* buf) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanKey key{dim, n, sign};
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  fftw_plan plan = nullptr;
  // FFTW_ESTIMATE keeps planning deterministic and leaves buf untouched
  if (dim == 2)
    plan = fftw_plan_dft_2d(n, n, buf, buf, sign, FFTW_ESTIMATE);
  else if (dim == 3)
    plan = fftw_plan_dft_3d(n, n, n, buf, buf, sign, FFTW_ESTIMATE);
  else
    throw std::invalid_argument("fft: dim must be 2 or 3");
  plan_cache.emplace(key, plan);
  return plan;
}

void run(std::vector<std::complex<double>>& data, int dim, int n, int sign) {
  std::size_t total = 1;
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
  if (data.size() != total) throw std::invalid_argument("fft: size mismatch");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_plan plan = get_plan(dim, n, sign, buf);
  fftw_execute_dft(plan, buf, buf);
}

}  // namespace

namespace {

// kind: 2 = r2c, 3 = c2r (reusing the c2c cache keyed by sign 1/-1)
fftw_plan get_real_plan(int dim, int n, int kind, double* re,
                        fftw_complex* sp) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  PlanKey key{dim, n, kind};
  auto it = plan_cache.find(key);
  if (it != plan_cache.end()) return it->second;
  fftw_plan plan = nullptr;
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  if (kind == 2)
    plan = (dim == 2) ? fftw_plan_dft_r2c_2d(n, n, re, sp, flags)
                      : fftw_plan_dft_r2c_3d(n, n, n, re, sp, flags);
  else
    plan = (dim == 2) ? fftw_plan_dft_c2r_2d(n, n, sp, re, flags)
                      : fftw_plan_dft_c2r_3d(n, n, n, sp, re, flags);
  if (!plan) throw std::runtime_error("fft: real plan creation failed");
  plan_cache.emplace(key, plan);
  return plan;
}

}  // namespace

std::vector<std::complex<double>> forward_r2c(const std::vector<double>& data,
                                              int dim, int n) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("fft: dim must be 2 or 3");
  std::size_t total = 1, half = static_cast<std::size_t>(n / 2 + 1);
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
  for (int d = 0; d < dim - 1; ++d) half *= static_cast<std::size_t>(n);
  if (data.size() != total) throw std::invalid_argument("fft: size mismatch");
  std::vector<std::complex<double>> spec(half);
  // FFTW r2c may scribble on its input for multi-d transforms; copy first
  std::vector<double> work(data);
  auto* sp = reinterpret_cast<fftw_complex*>(spec.data());
  fftw_plan plan = get_real_plan(dim, n, 2, work.data(), sp);
  fftw_execute_dft_r2c(plan, work.data(), sp);
  return spec;
}

std::vector<double> backward_c2r(std::vector<std::complex<double>>& spec,
                                 int dim, int n) {
  if (dim != 2 && dim != 3)
    throw std::invalid_argument("fft: dim must be 2 or 3");
  std::size_t total = 1, half = static_cast<std::size_t>(n / 2 + 1);
  for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(n);
  for (int d = 0; d < dim - 1; ++d) half *= static_cast<std::size_t>(n);
  if (spec.size() != half) throw std::invalid_argument("fft: size mismatch");
  std::vector<double> out(total);
  auto* sp = reinterpret_cast<fftw_complex*>(spec.data());
  fftw_plan plan = get_real_plan(dim, n, 3, out.data(), sp);
  fftw_execute_dft_c2r(plan, sp, out.data());
  const double scale = 1.0 / static_cast<double>(total);
  for (auto& x : out) x *= scale;
  return out;
}

void forward(std::vector<std::complex<double>>& data, int dim, int n) {
  run(data, dim, n, FFTW_FORWARD);
}

void backward(std::vector<std::complex<double>>& data, int dim, int n) {
  run(data, dim, n, FFTW_BACKWARD);
  const double scale = 1.0 / static_cast<double>(data.size());
  for (auto& z : data) z *= scale;
}

}  // namespace choquard::fft
