#include "hlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hlab {

namespace {
bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }
}

Grid::Grid(double half_width, std::size_t points)
    : half_width_(half_width), points_(points), spacing_(2.0 * half_width / static_cast<double>(points)) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) {
        throw config_error("grid half-width must be positive and finite");
    }
    if (points < 8 || !is_pow2(points)) {
        throw config_error("grid points must be a power of two >= 8, got " + std::to_string(points));
    }
}

Grid Grid::dual() const {
    const double dual_spacing = 2.0 * std::numbers::pi / (static_cast<double>(points_) * spacing_);
    return Grid(dual_spacing * static_cast<double>(points_) / 2.0, points_);
}

Grid Grid::refined() const { return Grid(half_width_, 2 * points_); }

bool Grid::operator==(const Grid& other) const {
    return points_ == other.points_ && half_width_ == other.half_width_;
}

SampledFunction::SampledFunction(Grid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.points()) {
        throw input_error("sample count does not match grid");
    }
    for (const cplx& v : values_) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw input_error("non-finite sample value");
        }
    }
}

SampledFunction SampledFunction::zero(const Grid& grid) {
    return SampledFunction(grid, std::vector<cplx>(grid.points(), cplx(0.0)));
}

SampledFunction SampledFunction::sample(const Grid& grid, const std::function<cplx(double)>& f) {
    std::vector<cplx> v(grid.points());
    for (std::size_t k = 0; k < grid.points(); ++k) v[k] = f(grid.point(k));
    return SampledFunction(grid, std::move(v));
}

SampledFunction& SampledFunction::operator+=(const SampledFunction& other) {
    if (grid_ != other.grid_) throw input_error("grid mismatch in +=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] += other.values_[k];
    return *this;
}

SampledFunction& SampledFunction::operator-=(const SampledFunction& other) {
    if (grid_ != other.grid_) throw input_error("grid mismatch in -=");
    for (std::size_t k = 0; k < values_.size(); ++k) values_[k] -= other.values_[k];
    return *this;
}

SampledFunction& SampledFunction::operator*=(cplx c) {
    for (cplx& v : values_) v *= c;
    return *this;
}

SampledFunction SampledFunction::pointwise(const SampledFunction& other) const {
    if (grid_ != other.grid_) throw input_error("grid mismatch in pointwise product");
    std::vector<cplx> v(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) v[k] = values_[k] * other.values_[k];
    return SampledFunction(grid_, std::move(v));
}

SampledFunction SampledFunction::mapped(const std::function<cplx(double, cplx)>& g) const {
    std::vector<cplx> v(values_.size());
    for (std::size_t k = 0; k < values_.size(); ++k) v[k] = g(grid_.point(k), values_[k]);
    return SampledFunction(grid_, std::move(v));
}

cplx integral(const SampledFunction& f) {
    cplx acc(0.0);
    for (const cplx& v : f.values()) acc += v;
    return acc * f.grid().spacing();
}

double norm_l2(const SampledFunction& f) {
    double acc = 0.0;
    for (const cplx& v : f.values()) acc += std::norm(v);
    return std::sqrt(acc * f.grid().spacing());
}

double norm_sup(const SampledFunction& f) {
    double m = 0.0;
    for (const cplx& v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

double norm_lp(const SampledFunction& f, double p) {
    if (std::isinf(p)) return norm_sup(f);
    if (p < 1.0) throw input_error("p must be >= 1");
    if (p == 2.0) return norm_l2(f);
    double acc = 0.0;
    for (const cplx& v : f.values()) acc += std::pow(std::abs(v), p);
    return std::pow(acc * f.grid().spacing(), 1.0 / p);
}

double tail_fraction(const SampledFunction& f) {
    const std::size_t n = f.size();
    const std::size_t edge = std::max<std::size_t>(1, n / 20);
    double total = 0.0, tail = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(f.value(k));
        total += a;
        if (k < edge || k >= n - edge) tail += a;
    }
    return total > 0.0 ? tail / total : 0.0;
}

Grid default_grid() { return Grid(kDefaultHalfWidth, kDefaultPoints); }

}  // namespace hlab
