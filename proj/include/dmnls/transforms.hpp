#pragma once

#include <complex>
#include <span>
#include <vector>

namespace dmnls {

using cdouble = std::complex<double>;

/// Thin wrappers over FFTW with cached plans.  All calls are serialized
/// internally, so concurrent trajectories stay bitwise deterministic.
namespace transforms {

/// Unnormalized forward DFT, e^{-2 pi i j k / n} convention.
void dft_forward(std::span<const cdouble> in, std::span<cdouble> out);

/// Unnormalized backward DFT; dft_backward(dft_forward(x)) = n * x.
void dft_backward(std::span<const cdouble> in, std::span<cdouble> out);

/// DST-I (FFTW RODFT00) of n interior samples: out_m = 2 sum_j in_j
/// sin(pi (j+1)(m+1) / (n+1)).  Self-inverse up to the factor 2(n+1).
void dst1(std::span<const double> in, std::span<double> out);

/// Complex DST-I, applied to real and imaginary parts separately.
void dst1(std::span<const cdouble> in, std::span<cdouble> out);

/// Evaluate a cosine series sum_{m=1}^{n} c_m cos(pi m j / (n+1)) at the
/// interior points j = 1..n (FFTW REDFT00 on the padded coefficient array).
void cosine_series_interior(std::span<const double> coeffs,
                            std::span<double> out);
void cosine_series_interior(std::span<const cdouble> coeffs,
                            std::span<cdouble> out);

}  // namespace transforms

}  // namespace dmnls
