#include "hlab/fourier.hpp"

#include <cmath>
#include <numbers>

namespace hlab {

namespace {

thread_local bool g_tail_warning = false;

// With s_k = (k - N/2) h and t_j = (j - N/2) dt, dt = 2pi/(N h), the kernel
// e^{-i s_k t_j} factors as (-1)^k (-1)^j e^{-i pi N/2} times the standard
// DFT kernel. N is a power of two >= 8, so N/2 is even and the last factor
// is 1.
std::vector<cplx> checkerboard(std::span<const cplx> v) {
    std::vector<cplx> out(v.begin(), v.end());
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
    return out;
}

void apply_checkerboard_scale(std::vector<cplx>& v, double scale) {
    for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] *= (j % 2 == 0) ? scale : -scale;
    }
}

void note_tail(const SampledFunction& f, const TransformOptions& opt) {
    g_tail_warning = opt.warn_on_tail && tail_fraction(f) > kTailWarnThreshold;
}

}  // namespace

void fft_radix2(std::vector<cplx>& data, int sign) {
    const std::size_t n = data.size();
    if (n == 0 || (n & (n - 1)) != 0) throw config_error("FFT length must be a power of two");
    // bit reversal
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(len);
        const cplx wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            cplx w(1.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cplx u = data[i + k];
                const cplx v = data[i + k + len / 2] * w;
                data[i + k] = u + v;
                data[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

SampledFunction fourier_forward(const SampledFunction& g, const TransformOptions& opt) {
    note_tail(g, opt);
    std::vector<cplx> x = checkerboard(g.values());
    fft_radix2(x, -1);
    apply_checkerboard_scale(x, g.grid().spacing());
    return SampledFunction(g.grid().dual(), std::move(x));
}

SampledFunction fourier_inverse(const SampledFunction& f, const TransformOptions& opt) {
    note_tail(f, opt);
    std::vector<cplx> x = checkerboard(f.values());
    fft_radix2(x, +1);
    apply_checkerboard_scale(x, f.grid().spacing() / (2.0 * std::numbers::pi));
    return SampledFunction(f.grid().dual(), std::move(x));
}

bool last_transform_tail_warning() { return g_tail_warning; }

SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
    if (f.grid() != g.grid()) throw input_error("convolve: grid mismatch");
    const std::size_t n = f.size();
    std::vector<cplx> a(2 * n, cplx(0.0)), b(2 * n, cplx(0.0));
    std::copy(f.values().begin(), f.values().end(), a.begin());
    std::copy(g.values().begin(), g.values().end(), b.begin());
    fft_radix2(a, -1);
    fft_radix2(b, -1);
    for (std::size_t k = 0; k < a.size(); ++k) a[k] *= b[k];
    fft_radix2(a, +1);
    const double scale = f.grid().spacing() / static_cast<double>(2 * n);
    // linear convolution index m <-> t = -2L + m h; keep t in [-L, L)
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) out[j] = a[j + n / 2] * scale;
    return SampledFunction(f.grid(), std::move(out));
}

SampledFunction translate(const SampledFunction& f, double t) {
    SampledFunction spec = fourier_inverse(f, {.warn_on_tail = false});
    spec = spec.mapped([t](double s, cplx v) {
        return v * cplx(std::cos(t * s), std::sin(t * s));
    });
    return fourier_forward(spec, {.warn_on_tail = false});
}

}  // namespace hlab
