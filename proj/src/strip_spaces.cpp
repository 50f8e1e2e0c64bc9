#include "hlab/strip_spaces.hpp"

#include <cmath>
#include <numbers>

namespace hlab {

namespace {

// weighted L^2 of the coefficient against e^{y s} (signed exponent)
double line_l2_fourier_side(const SampledFunction& g, double y) {
    double acc = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        acc += std::exp(2.0 * y * g.grid().point(k)) * std::norm(g.value(k));
    }
    return std::sqrt(2.0 * std::numbers::pi * acc * g.grid().spacing());
}

}  // namespace

StripFunctionRep::StripFunctionRep(SampledFunction coeff, double omega, Weight weight, std::string label)
    : coeff_(std::move(coeff)), omega_(omega), weight_(std::move(weight)), label_(std::move(label)) {
    if (omega_ < 0.0) throw input_error("strip height must be >= 0");
    const double n = weighted_norm(coeff_, weight_, omega_, 2.0);
    if (!std::isfinite(n)) throw divergence_error("coefficient not in L^2_{v,omega} on grid", n);
    // spot-check anchors on the real line and (if omega > 0) inside the strip
    ref_points_ = {cplx(0.0, 0.0), cplx(0.7, 0.5 * omega_), cplx(-1.3, -0.5 * omega_)};
    for (std::size_t i = 0; i < 3; ++i) ref_values_[i] = evaluate(ref_points_[i]);
}

StripFunctionRep StripFunctionRep::from_line_samples(const SampledFunction& center_line, double omega,
                                                     Weight weight, std::string label) {
    SampledFunction g = fourier_inverse(center_line);
    return StripFunctionRep(std::move(g), omega, std::move(weight), std::move(label));
}

StripFunctionRep StripFunctionRep::from_function(const std::function<cplx(cplx)>& f,
                                                 const Grid& line_grid, double omega, Weight weight,
                                                 std::string label) {
    SampledFunction line = SampledFunction::sample(line_grid, [&f](double x) { return f(cplx(x, 0.0)); });
    return from_line_samples(line, omega, std::move(weight), std::move(label));
}

cplx StripFunctionRep::evaluate(cplx z) const {
    cplx acc(0.0);
    for (std::size_t k = 0; k < coeff_.size(); ++k) {
        const double s = coeff_.grid().point(k);
        acc += coeff_.value(k) * std::exp(cplx(0.0, -1.0) * z * s);
    }
    return acc * coeff_.grid().spacing();
}

SampledFunction StripFunctionRep::line_samples() const { return fourier_forward(coeff_); }

void StripFunctionRep::verify_spot_checks(double tol) const {
    for (std::size_t i = 0; i < 3; ++i) {
        const cplx now = evaluate(ref_points_[i]);
        const double scale = std::max(1.0, std::abs(ref_values_[i]));
        if (std::abs(now - ref_values_[i]) > tol * scale) {
            throw input_error("strip representation failed its spot checks: " + label_);
        }
    }
}

double sobolev_norm(const StripFunctionRep& f) {
    return weighted_norm(f.coeff(), f.weight(), f.omega(), 2.0);
}

double fourier_algebra_norm(const StripFunctionRep& f, bool* tail_warning) {
    const auto vw = weight_samples(f.weight(), f.omega(), f.coeff().grid());
    if (tail_warning != nullptr) {
        SampledFunction weighted = f.coeff().mapped([&](double, cplx v) { return v; });
        std::vector<cplx> wv(f.coeff().size());
        for (std::size_t k = 0; k < wv.size(); ++k) wv[k] = vw[k] * f.coeff().value(k);
        *tail_warning = tail_fraction(SampledFunction(f.coeff().grid(), std::move(wv))) > kTailWarnThreshold;
    }
    return weighted_norm_pre(f.coeff(), vw, 1.0);
}

HardyNorm hardy2_norm(const StripFunctionRep& f, double omega_prime, std::size_t ordinates) {
    if (!(omega_prime > 0.0)) throw input_error("hardy2_norm needs omega' > 0");
    const auto& g = f.coeff();
    // divergence guard: e^{omega'|s|} g must decay at the grid edge
    {
        const double L = g.grid().half_width();
        double interior = 0.0, edge = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) {
            const double w = std::exp(omega_prime * std::abs(g.grid().point(k))) * std::abs(g.value(k));
            if (std::abs(g.grid().point(k)) > 0.95 * L) edge = std::max(edge, w);
            else interior = std::max(interior, w);
        }
        if (edge > 1e-8 * interior && edge > 1e-300) {
            throw divergence_error("e^{omega'|s|} g blows up on the grid edge", interior);
        }
    }
    HardyNorm best{0.0, 0.0};
    for (std::size_t j = 0; j <= ordinates; ++j) {
        const double y = -omega_prime + 2.0 * omega_prime * static_cast<double>(j) / static_cast<double>(ordinates);
        const double n = line_l2_fourier_side(g, y);
        if (n > best.value) best = {n, y};
    }
    return best;
}

LineFunction line_restriction(const StripFunctionRep& f, double y) {
    if (std::abs(y) > f.omega() && f.omega() > 0.0) throw domain_error("ordinate outside the closed strip");
    SampledFunction shifted = f.coeff().mapped([y](double s, cplx v) { return v * std::exp(y * s); });
    return LineFunction{fourier_forward(shifted, {.warn_on_tail = false}), y};
}

BoundaryValues boundary_values(const StripFunctionRep& f) {
    if (f.omega() == 0.0) throw domain_error("St_0 = R has no boundary lines");
    // reuse the hardy guard at height omega
    (void)hardy2_norm(f, f.omega(), 2);
    BoundaryValues out{line_restriction(f, f.omega()), line_restriction(f, -f.omega()), {}};
    const std::array<double, 3> deltas{0.1, 0.01, 0.001};
    for (std::size_t i = 0; i < 3; ++i) {
        const double d = std::min(deltas[i], 0.5 * f.omega());
        double acc = 0.0;
        for (std::size_t k = 0; k < f.coeff().size(); ++k) {
            const double s = f.coeff().grid().point(k);
            const double diff = std::exp((f.omega() - d) * s) - std::exp(f.omega() * s);
            acc += diff * diff * std::norm(f.coeff().value(k));
        }
        out.continuity_gaps[i] = std::sqrt(2.0 * std::numbers::pi * acc * f.coeff().grid().spacing());
    }
    return out;
}

StripFunctionRep resolvent_rep(cplx lambda, double omega, const Weight& v, const Grid& coeff_grid) {
    if (std::abs(lambda.imag()) <= omega) {
        throw domain_error("resolvent_rep needs |Im lambda| > omega");
    }
    const bool upper = lambda.imag() > 0.0;
    std::vector<cplx> g(coeff_grid.points());
    for (std::size_t k = 0; k < coeff_grid.points(); ++k) {
        const double s = coeff_grid.point(k);
        const cplx phase = std::exp(cplx(0.0, 1.0) * lambda * s);
        if (s == 0.0) {
            g[k] = (upper ? cplx(0.0, -0.5) : cplx(0.0, 0.5));  // midpoint at the jump
        } else if (upper) {
            g[k] = s > 0.0 ? cplx(0.0, -1.0) * phase : cplx(0.0);
        } else {
            g[k] = s < 0.0 ? cplx(0.0, 1.0) * phase : cplx(0.0);
        }
    }
    return StripFunctionRep(SampledFunction(coeff_grid, std::move(g)), omega, v, "resolvent");
}

StripFunctionRep gaussian_rep(double omega, const Weight& v, const Grid& coeff_grid) {
    const double c = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    SampledFunction g = SampledFunction::sample(
        coeff_grid, [c](double s) { return cplx(c * std::exp(-s * s / 4.0), 0.0); });
    return StripFunctionRep(std::move(g), omega, v, "gaussian");
}

}  // namespace hlab
