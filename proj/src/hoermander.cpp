#include "hlab/hoermander.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace hlab {

namespace {

// W^2_v norm of the product window(x - t) * f(x) sampled on the line, with
// precomputed line values and weight samples on the dual grid.
double windowed_norm(const std::vector<cplx>& f_line, const Localizer& loc, double t,
                     const Grid& line_grid, std::span<const double> vw_dual) {
    std::vector<cplx> prod(f_line.size());
    for (std::size_t k = 0; k < prod.size(); ++k) {
        prod[k] = loc(cplx(line_grid.point(k) - t, 0.0)) * f_line[k];
    }
    SampledFunction g = fourier_inverse(SampledFunction(line_grid, std::move(prod)), {.warn_on_tail = false});
    const double n = weighted_norm_pre(g, vw_dual, 2.0);
    if (!std::isfinite(n)) throw divergence_error("windowed product left W^2_v on this grid", n);
    return n;
}

std::vector<cplx> line_values(const StripFn& f, const Grid& grid) {
    std::vector<cplx> out(grid.points());
    for (std::size_t k = 0; k < grid.points(); ++k) out[k] = f(cplx(grid.point(k), 0.0));
    return out;
}

}  // namespace

StripFn as_strip_fn(const StripFunctionRep& rep) {
    auto shared = std::make_shared<StripFunctionRep>(rep);
    return [shared](cplx z) { return shared->evaluate(z); };
}

Localizer::Localizer(Kind kind, double strip_margin, std::string name, StripFn eval,
                     SampledFunction coeff)
    : kind_(kind), strip_margin_(strip_margin), name_(std::move(name)), eval_(std::move(eval)),
      coeff_(std::move(coeff)) {
    double sup = 0.0;
    for (const cplx& v : coeff_.values()) sup = std::max(sup, std::abs(v));
    if (sup == 0.0) throw input_error("localizer must not vanish identically");
}

Localizer Localizer::gaussian(const Grid& coeff_grid) {
    const double c = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    SampledFunction coeff = SampledFunction::sample(
        coeff_grid, [c](double s) { return cplx(c * std::exp(-s * s / 4.0), 0.0); });
    return Localizer(Kind::gaussian, 8.0, "gaussian",
                     [](cplx z) { return std::exp(-z * z); }, std::move(coeff));
}

Localizer Localizer::modulated_gaussian(const Grid& coeff_grid, double s0) {
    const double c = 1.0 / (2.0 * std::sqrt(std::numbers::pi));
    SampledFunction coeff = SampledFunction::sample(coeff_grid, [c, s0](double s) {
        return cplx(c * std::exp(-(s - s0) * (s - s0) / 4.0), 0.0);
    });
    return Localizer(Kind::modulated_gaussian, 8.0, "modulated_gaussian",
                     [s0](cplx z) { return std::exp(-z * z) * std::exp(cplx(0.0, -s0) * z); },
                     std::move(coeff));
}

Localizer Localizer::sech_power(const Grid& coeff_grid) {
    // (sech^2)^inv(s) = s / (2 sinh(pi s / 2)), value 1/pi at s = 0.
    auto coeff_fn = [](double s) {
        if (std::abs(s) < 1e-8) return cplx(1.0 / std::numbers::pi, 0.0);
        return cplx(s / (2.0 * std::sinh(std::numbers::pi * s / 2.0)), 0.0);
    };
    // calibrate to the Gaussian's line L^2 mass: \int sech^4 = 4/3,
    // \int e^{-2x^2} = sqrt(pi/2); scale c with c^2 * 4/3 = sqrt(pi/2)
    const double c = std::sqrt(std::sqrt(std::numbers::pi / 2.0) * 3.0 / 4.0);
    SampledFunction coeff = SampledFunction::sample(
        coeff_grid, [&](double s) { return c * coeff_fn(s); });
    return Localizer(Kind::sech_power, 0.45 * std::numbers::pi, "sech_power",
                     [c](cplx z) {
                         const cplx ch = std::cosh(z);
                         return c / (ch * ch);
                     },
                     std::move(coeff));
}

Localizer Localizer::fourier_of_bump(const Grid& coeff_grid, double a) {
    if (!(a > 0.0)) throw input_error("bump support half-width must be positive");
    // smooth bump on (-a, a), unit mass; the localizer is its Fourier image
    const int n = 256;
    std::vector<double> nodes(n + 1), bump(n + 1);
    double mass = 0.0;
    for (int k = 0; k <= n; ++k) {
        nodes[k] = -a + 2.0 * a * static_cast<double>(k) / n;
        const double x = nodes[k] / a;
        bump[k] = std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        const double w = (k == 0 || k == n) ? 0.5 : 1.0;
        mass += w * bump[k];
    }
    mass *= 2.0 * a / n;
    for (double& b : bump) b /= mass;
    auto eval = [nodes, bump, a, n](cplx z) {
        // \int bump(s) e^{-isz} ds, trapezoid over the support
        cplx acc(0.0);
        for (int k = 0; k <= n; ++k) {
            const double w = (k == 0 || k == n) ? 0.5 : 1.0;
            acc += w * bump[k] * std::exp(cplx(0.0, -1.0) * z * nodes[k]);
        }
        return acc * (2.0 * a / n);
    };
    SampledFunction coeff = SampledFunction::sample(coeff_grid, [&](double s) {
        if (std::abs(s) >= a) return cplx(0.0);
        const double x = s / a;
        return cplx(std::exp(-1.0 / (1.0 - x * x)) / mass, 0.0);
    });
    return Localizer(Kind::fourier_of_bump, 16.0, "fourier_of_bump", eval, std::move(coeff));
}

double Localizer::decay_constant(double alpha) const {
    double c = 0.0;
    for (int k = -400; k <= 400; ++k) {
        const double x = 0.05 * static_cast<double>(k);
        c = std::max(c, std::pow(1.0 + std::abs(x), alpha) * std::abs(eval_(cplx(x, 0.0))));
    }
    return c;
}

Localizer Localizer::rescaled(double factor) const {
    SampledFunction coeff = coeff_;
    coeff *= cplx(factor, 0.0);
    auto base = eval_;
    return Localizer(kind_, strip_margin_, name_, [base, factor](cplx z) { return factor * base(z); },
                     std::move(coeff));
}

double Localizer::l2_mass_sq() const {
    double acc = 0.0;
    // line mass from the evaluator (the coefficient grid may be coarse)
    const double h = 0.01;
    for (int k = -4000; k <= 4000; ++k) acc += std::norm(eval_(cplx(h * k, 0.0)));
    return acc * h;
}

HoermanderEstimate hoermander_norm(const StripFn& f, const Localizer& loc, const Weight& v,
                                   double omega, const Grid& line_grid, const HoermanderParams& params) {
    if (params.t_step <= 0.0 || params.t_range <= 0.0) throw config_error("bad translate lattice");
    const auto fl = line_values(f, line_grid);
    const auto vw = weight_samples(v, omega, line_grid.dual());

    auto sweep = [&](double step) {
        HoermanderEstimate est;
        est.t_range = params.t_range;
        est.t_step = step;
        for (double t = -params.t_range; t <= params.t_range + 1e-12; t += step) {
            const double n = windowed_norm(fl, loc, t, line_grid, vw);
            if (n > est.value) {
                est.value = n;
                est.argmax_t = t;
            }
        }
        return est;
    };

    HoermanderEstimate est = sweep(params.t_step);
    if (params.refine_check) {
        const HoermanderEstimate fine = sweep(params.t_step / 2.0);
        const double rel = std::abs(fine.value - est.value) / std::max(fine.value, 1e-300);
        est.value = std::max(est.value, fine.value);
        est.argmax_t = fine.value >= est.value ? fine.argmax_t : est.argmax_t;
        est.convergence_flag = rel < 1e-4;
    }
    return est;
}

HoermanderEstimate hoermander_norm(const StripFunctionRep& f, const Localizer& loc,
                                   const HoermanderParams& params) {
    SampledFunction line = f.line_samples();
    const Grid grid = line.grid();
    std::vector<cplx> vals(line.values().begin(), line.values().end());
    auto fn = [vals, grid](cplx z) -> cplx {
        // center-line lookup; products are only ever formed on the line
        const double x = z.real();
        const double pos = (x + grid.half_width()) / grid.spacing();
        const auto k = static_cast<std::ptrdiff_t>(std::llround(pos));
        if (k < 0 || k >= static_cast<std::ptrdiff_t>(grid.points())) return cplx(0.0);
        return vals[static_cast<std::size_t>(k)];
    };
    return hoermander_norm(fn, loc, f.weight(), f.omega(), grid, params);
}

double calderon_residual(const StripFn& f, const Localizer& phi, const Localizer& psi_in,
                         const Weight& v, double omega, const Grid& line_grid, double t_range,
                         double t_step) {
    // normalize psi: \int psi* psi = \int |psi|^2 = 1 on the line
    const double mass = psi_in.l2_mass_sq();
    if (mass <= 0.0) throw degenerate_error("psi has no mass");
    const Localizer psi = std::abs(mass - 1.0) <= 1e-10 ? psi_in : psi_in.rescaled(1.0 / std::sqrt(mass));

    const auto fl = line_values(f, line_grid);
    const auto vw = weight_samples(v, omega, line_grid.dual());
    const std::size_t n = line_grid.points();

    std::vector<cplx> lhs(n), rhs(n, cplx(0.0));
    for (std::size_t k = 0; k < n; ++k) lhs[k] = phi(cplx(line_grid.point(k), 0.0)) * fl[k];

    for (double t = -t_range; t <= t_range + 1e-12; t += t_step) {
        for (std::size_t k = 0; k < n; ++k) {
            const cplx w = psi(cplx(line_grid.point(k) - t, 0.0));
            rhs[k] += std::conj(w) * w * lhs[k];
        }
    }
    for (cplx& r : rhs) r *= t_step;

    SampledFunction glhs = fourier_inverse(SampledFunction(line_grid, lhs), {.warn_on_tail = false});
    std::vector<cplx> diff(n);
    for (std::size_t k = 0; k < n; ++k) diff[k] = rhs[k] - lhs[k];
    SampledFunction gdiff =
        fourier_inverse(SampledFunction(line_grid, std::move(diff)), {.warn_on_tail = false});

    const double denom = weighted_norm_pre(glhs, vw, 2.0);
    if (denom <= 0.0) throw degenerate_error("phi f vanishes; Calderon residual undefined");
    return weighted_norm_pre(gdiff, vw, 2.0) / denom;
}

DecayProfile coefficient_decay(const StripFn& f, const Localizer& phi, std::span<const cplx> z_lattice,
                               const Weight& v, double omega, const Grid& line_grid,
                               double hoermander_value) {
    const auto vw = weight_samples(v, omega, line_grid.dual());
    const std::size_t n = line_grid.points();
    DecayProfile out;
    out.s.resize(n);
    out.profile.assign(n, 0.0);
    const Grid dual = line_grid.dual();
    for (std::size_t k = 0; k < n; ++k) out.s[k] = dual.point(k);

    for (const cplx& z : z_lattice) {
        std::vector<cplx> prod(n);
        for (std::size_t k = 0; k < n; ++k) {
            prod[k] = phi(cplx(line_grid.point(k), 0.0) - z) * f(cplx(line_grid.point(k), 0.0));
        }
        SampledFunction g =
            fourier_inverse(SampledFunction(line_grid, std::move(prod)), {.warn_on_tail = false});
        for (std::size_t k = 0; k < n; ++k) {
            out.profile[k] = std::max(out.profile[k], vw[k] * std::abs(g.value(k)));
        }
    }
    out.sup = *std::max_element(out.profile.begin(), out.profile.end());
    out.ratio_to_hoermander = hoermander_value > 0.0 ? out.sup / hoermander_value : 0.0;
    return out;
}

double representation_residual(const StripFn& f, const Localizer& phi, cplx z_probe, const Weight& v,
                               double omega, const Grid& line_grid) {
    const cplx phi0 = phi(cplx(0.0, 0.0));
    if (std::abs(phi0) < 1e-14) throw input_error("phi(0) = 0: representation formula degenerate");
    if (std::abs(z_probe.imag()) > omega && omega > 0.0) {
        throw domain_error("probe outside the closed strip");
    }
    if (std::abs(z_probe.imag()) >= omega && omega > 0.0 && !v.report().strongly_admissible) {
        throw domain_error("boundary probe needs a strongly admissible weight");
    }
    const std::size_t n = line_grid.points();
    std::vector<cplx> prod(n);
    for (std::size_t k = 0; k < n; ++k) {
        const cplx x(line_grid.point(k), 0.0);
        prod[k] = phi(x - z_probe) * f(x);
    }
    SampledFunction g =
        fourier_inverse(SampledFunction(line_grid, std::move(prod)), {.warn_on_tail = false});
    cplx rhs(0.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double s = g.grid().point(k);
        rhs += g.value(k) * std::exp(cplx(0.0, -1.0) * z_probe * s);
    }
    rhs *= g.grid().spacing();
    const cplx lhs = phi0 * f(z_probe);
    const double err = std::abs(lhs - rhs);
    return std::abs(lhs) > 1e-14 ? err / std::abs(lhs) : err;
}

PartitionOfUnity build_partition(double theta, double alpha) {
    if (!(theta > 0.0)) throw input_error("theta must be positive");
    if (!(alpha > 0.0) || !(alpha < std::numbers::pi / (2.0 * theta))) {
        throw input_error("alpha must lie in (0, pi/(2 theta))");
    }
    // c = alpha makes \int eta = 1
    auto eta = [alpha](cplx z) {
        const cplx e = std::exp(alpha * z);
        const cplx onep = 1.0 + e;
        return alpha * e / (onep * onep);
    };
    // phi(z) = \int_0^1 eta(s - z) ds by Simpson quadrature (513 nodes)
    auto phi = [eta](cplx z) {
        const int n = 512;
        cplx acc(0.0);
        for (int k = 0; k <= n; ++k) {
            const double s = static_cast<double>(k) / n;
            const double w = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
            acc += w * eta(cplx(s, 0.0) - z);
        }
        return acc / (3.0 * n);
    };
    auto psi = [phi](cplx z) { return std::pow(phi(z), 1.0 / 3.0); };
    return PartitionOfUnity{theta, alpha, eta, phi, psi};
}

WindowedLrBound windowed_lr_bound(const StripFn& f, const Localizer& psi, double r, const Weight& v,
                                  double omega, const Grid& line_grid, int n_range) {
    if (!(r >= 1.0 && r <= 2.0)) throw input_error("r must lie in [1, 2]");
    const double r_prime = (r == 1.0) ? std::numeric_limits<double>::infinity() : r / (r - 1.0);
    const auto fl = line_values(f, line_grid);
    const auto vw = weight_samples(v, omega, line_grid.dual());

    WindowedLrBound out;
    out.r_prime = r_prime;
    for (int m = -n_range; m <= n_range; ++m) {
        std::vector<cplx> prod(fl.size());
        for (std::size_t k = 0; k < fl.size(); ++k) {
            prod[k] = psi(cplx(line_grid.point(k) - m, 0.0)) * fl[k];
        }
        SampledFunction g =
            fourier_inverse(SampledFunction(line_grid, std::move(prod)), {.warn_on_tail = false});
        const double lr = weighted_norm_pre(g, vw, r_prime);
        const double l2 = weighted_norm_pre(g, vw, 2.0);
        const double li = weighted_norm_pre(g, vw, std::numeric_limits<double>::infinity());
        out.value = std::max(out.value, lr);
        const double interp =
            std::isinf(r_prime) ? li : std::pow(l2, 2.0 / r_prime) * std::pow(li, 1.0 - 2.0 / r_prime);
        out.interpolation_bound = std::max(out.interpolation_bound, interp);
    }
    return out;
}

}  // namespace hlab
