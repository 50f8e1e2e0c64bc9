#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "hlab/errors.hpp"

namespace hlab {

using cplx = std::complex<double>;

/// Uniform symmetric grid on [-L, L): N samples at s_k = -L + k*h, h = 2L/N.
/// N must be a power of two >= 8 so that all transforms run through the
/// radix-2 FFT and h*N = 2L holds exactly.
class Grid {
public:
    Grid(double half_width, std::size_t points);

    double half_width() const { return half_width_; }
    std::size_t points() const { return points_; }
    double spacing() const { return spacing_; }
    double point(std::size_t k) const { return -half_width_ + spacing_ * static_cast<double>(k); }

    /// Frequency-side partner: spacing 2*pi/(N*h), same N, half-width pi/h.
    Grid dual() const;
    /// Same half-width, twice the points (convergence checks).
    Grid refined() const;

    bool operator==(const Grid& other) const;
    bool operator!=(const Grid& other) const { return !(*this == other); }

private:
    double half_width_;
    std::size_t points_;
    double spacing_;
};

/// Complex samples of a function on a Grid; the carrier for every norm and
/// transform in the library. Values are validated to be finite.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<cplx> values);

    static SampledFunction zero(const Grid& grid);
    static SampledFunction sample(const Grid& grid, const std::function<cplx(double)>& f);

    const Grid& grid() const { return grid_; }
    std::span<const cplx> values() const { return values_; }
    cplx value(std::size_t k) const { return values_[k]; }
    std::size_t size() const { return values_.size(); }

    SampledFunction& operator+=(const SampledFunction& other);
    SampledFunction& operator-=(const SampledFunction& other);
    SampledFunction& operator*=(cplx c);
    friend SampledFunction operator+(SampledFunction a, const SampledFunction& b) { return a += b; }
    friend SampledFunction operator-(SampledFunction a, const SampledFunction& b) { return a -= b; }
    friend SampledFunction operator*(cplx c, SampledFunction f) { return f *= c; }

    /// Pointwise product, same grid required.
    SampledFunction pointwise(const SampledFunction& other) const;
    /// Map values in place through g(s_k, f_k).
    SampledFunction mapped(const std::function<cplx(double, cplx)>& g) const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

/// Trapezoidal rule over [-L, L]; equals h * sum for samples that vanish at
/// the ends (the periodic trapezoid weighting).
cplx integral(const SampledFunction& f);

double norm_l2(const SampledFunction& f);
double norm_lp(const SampledFunction& f, double p);  // p in [1, inf]
double norm_sup(const SampledFunction& f);

/// Fraction of total |f| mass carried by the outer 5% of the grid. Used to
/// warn when a function has not decayed at +-L.
double tail_fraction(const SampledFunction& f);

constexpr double kDefaultHalfWidth = 32.0;
constexpr std::size_t kDefaultPoints = 4096;
Grid default_grid();

}  // namespace hlab
