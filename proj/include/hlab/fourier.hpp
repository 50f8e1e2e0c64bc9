#pragma once

#include "hlab/grid.hpp"

namespace hlab {

// Transform conventions:
//   forward   (Fg)(t) = \int g(s) e^{-ist} ds
//   inverse  (F^-1 f)(t) = (1/2pi) \int f(s) e^{+ist} ds
// so that Plancherel reads ||Fg||_2^2 = 2*pi*||g||_2^2 and F^-1 F = id.
// Both land on the dual grid of their input.

/// Warn threshold: tail_fraction above this suggests the function has not
/// decayed at the grid boundary and the transform is polluted by truncation.
constexpr double kTailWarnThreshold = 1e-3;

struct TransformOptions {
    bool warn_on_tail = true;
};

SampledFunction fourier_forward(const SampledFunction& g, const TransformOptions& opt = {});
SampledFunction fourier_inverse(const SampledFunction& f, const TransformOptions& opt = {});

/// True when the last forward/inverse call on this thread saw tail mass above
/// threshold (diagnostic only; transforms never fail on tails).
bool last_transform_tail_warning();

/// Linear convolution (f*g)(t) = \int f(t-s) g(s) ds restricted to [-L, L],
/// via FFT with zero padding to 2N, scaled by the grid spacing.
SampledFunction convolve(const SampledFunction& f, const SampledFunction& g);

/// Translation tau_t f = f(. - t) for arbitrary (off-grid) t, realized as
/// Fourier-side modulation e^{its} f[inverse](s). Exact on band-limited input.
SampledFunction translate(const SampledFunction& f, double t);

/// Unnormalized in-place radix-2 FFT; sign=-1 forward, sign=+1 inverse kernel.
void fft_radix2(std::vector<cplx>& data, int sign);

}  // namespace hlab
