#include "dmnls/transforms.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace dmnls::transforms {

namespace {

// FFTW planning and execution share scratch buffers; one lock covers both.
std::mutex& fftw_mutex() {
  static std::mutex m;
  return m;
}

struct ComplexPlan {
  fftw_plan plan = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t n = 0;
};

struct RealPlan {
  fftw_plan plan = nullptr;
  double* in = nullptr;
  double* out = nullptr;
  std::size_t n = 0;
};

ComplexPlan& complex_plan(std::size_t n, int sign) {
  static std::map<std::pair<std::size_t, int>, ComplexPlan> cache;
  auto [it, inserted] = cache.try_emplace({n, sign});
  ComplexPlan& p = it->second;
  if (inserted) {
    p.n = n;
    p.buf = fftw_alloc_complex(n);
    p.plan = fftw_plan_dft_1d(static_cast<int>(n), p.buf, p.buf, sign,
                              FFTW_ESTIMATE);
    if (!p.plan) throw std::runtime_error("fftw plan creation failed");
  }
  return p;
}

RealPlan& real_plan(std::size_t n, fftw_r2r_kind kind) {
  static std::map<std::pair<std::size_t, int>, RealPlan> cache;
  auto [it, inserted] = cache.try_emplace({n, static_cast<int>(kind)});
  RealPlan& p = it->second;
  if (inserted) {
    p.n = n;
    p.in = fftw_alloc_real(n);
    p.out = fftw_alloc_real(n);
    p.plan = fftw_plan_r2r_1d(static_cast<int>(n), p.in, p.out, kind,
                              FFTW_ESTIMATE);
    if (!p.plan) throw std::runtime_error("fftw plan creation failed");
  }
  return p;
}

void run_dft(std::span<const cdouble> in, std::span<cdouble> out, int sign) {
  if (in.size() != out.size()) throw std::invalid_argument("size mismatch");
  std::lock_guard<std::mutex> lock(fftw_mutex());
  ComplexPlan& p = complex_plan(in.size(), sign);
  std::memcpy(p.buf, in.data(), in.size() * sizeof(cdouble));
  fftw_execute(p.plan);
  std::memcpy(out.data(), p.buf, in.size() * sizeof(cdouble));
}

void run_r2r(std::span<const double> in, std::span<double> out,
             fftw_r2r_kind kind) {
  if (in.size() != out.size()) throw std::invalid_argument("size mismatch");
  std::lock_guard<std::mutex> lock(fftw_mutex());
  RealPlan& p = real_plan(in.size(), kind);
  std::memcpy(p.in, in.data(), in.size() * sizeof(double));
  fftw_execute(p.plan);
  std::memcpy(out.data(), p.out, in.size() * sizeof(double));
}

}  // namespace

void dft_forward(std::span<const cdouble> in, std::span<cdouble> out) {
  run_dft(in, out, FFTW_FORWARD);
}

void dft_backward(std::span<const cdouble> in, std::span<cdouble> out) {
  run_dft(in, out, FFTW_BACKWARD);
}

void dst1(std::span<const double> in, std::span<double> out) {
  run_r2r(in, out, FFTW_RODFT00);
}

void dst1(std::span<const cdouble> in, std::span<cdouble> out) {
  const std::size_t n = in.size();
  std::vector<double> re(n), im(n), tre(n), tim(n);
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = in[j].real();
    im[j] = in[j].imag();
  }
  dst1(re, tre);
  dst1(im, tim);
  for (std::size_t j = 0; j < n; ++j) out[j] = {tre[j], tim[j]};
}

void cosine_series_interior(std::span<const double> coeffs,
                            std::span<double> out) {
  const std::size_t n = coeffs.size();
  if (out.size() != n) throw std::invalid_argument("size mismatch");
  // REDFT00 on n+2 points: f_j = c_0 + (-1)^j c_{n+1}
  //                              + 2 sum_{m=1}^{n} c_m cos(pi m j/(n+1)).
  std::vector<double> padded(n + 2, 0.0);
  for (std::size_t m = 0; m < n; ++m) padded[m + 1] = 0.5 * coeffs[m];
  std::vector<double> full(n + 2);
  run_r2r(padded, full, FFTW_REDFT00);
  for (std::size_t j = 0; j < n; ++j) out[j] = full[j + 1];
}

void cosine_series_interior(std::span<const cdouble> coeffs,
                            std::span<cdouble> out) {
  const std::size_t n = coeffs.size();
  std::vector<double> re(n), im(n), tre(n), tim(n);
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = coeffs[j].real();
    im[j] = coeffs[j].imag();
  }
  cosine_series_interior(std::span<const double>(re), std::span<double>(tre));
  cosine_series_interior(std::span<const double>(im), std::span<double>(tim));
  for (std::size_t j = 0; j < n; ++j) out[j] = {tre[j], tim[j]};
}

}  // namespace dmnls::transforms
