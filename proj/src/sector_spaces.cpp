#include "hlab/sector_spaces.hpp"

#include <cmath>
#include <numbers>

namespace hlab {

SectorFunctionRep sector_rep_from_function(const std::function<cplx(cplx)>& f_on_sector,
                                           const Grid& line_grid, double angle, Weight v,
                                           std::string label) {
    if (!(angle >= 0.0) || !(angle < std::numbers::pi)) {
        throw input_error("sector angle must lie in [0, pi)");
    }
    auto pullback = [&f_on_sector](cplx z) { return f_on_sector(std::exp(z)); };
    StripFunctionRep rep =
        StripFunctionRep::from_function(pullback, line_grid, angle, std::move(v), std::move(label));
    // consistency: f(w) = pullback(log w) at three reference points
    for (double w : {0.5, 1.0, 3.0}) {
        const cplx direct = f_on_sector(cplx(w, 0.0));
        const cplx via = rep.evaluate(cplx(std::log(w), 0.0));
        if (std::abs(direct - via) > 1e-8 * std::max(1.0, std::abs(direct)) + 1e-4) {
            // the rep stores a band-limited fit; tolerate fit error but reject
            // gross inconsistency (wrong branch, wrong function)
            throw input_error("sector rep inconsistent with its pullback at w=" + std::to_string(w));
        }
    }
    return SectorFunctionRep{std::move(rep), angle};
}

double sector_sobolev_norm(const SectorFunctionRep& f) { return sobolev_norm(f.pullback); }

HoermanderEstimate sector_hoermander_norm(const SectorFunctionRep& f, const Localizer& loc,
                                          const HoermanderParams& params) {
    return hoermander_norm(f.pullback, loc, params);
}

HoermanderEstimate sector_hoermander_norm(const std::function<cplx(cplx)>& f_on_sector,
                                          const Localizer& loc, const Weight& v, double angle,
                                          const Grid& line_grid, const HoermanderParams& params) {
    auto pullback = [&f_on_sector](cplx z) { return f_on_sector(std::exp(z)); };
    return hoermander_norm(pullback, loc, v, angle, line_grid, params);
}

std::function<double(double)> positive_bump(double lo, double hi) {
    if (!(0.0 < lo && lo < hi)) throw input_error("bump support must satisfy 0 < lo < hi");
    return [lo, hi](double x) {
        if (x <= lo || x >= hi) return 0.0;
        const double u = (2.0 * x - lo - hi) / (hi - lo);  // (-1, 1)
        return std::exp(1.0 - 1.0 / (1.0 - u * u));
    };
}

ClassicalHoermanderCheck classical_hoermander_check(const std::function<cplx(double)>& m, double alpha,
                                                    double bump_lo, double bump_hi,
                                                    const Grid& line_grid) {
    if (!(alpha > 0.5)) throw input_error("classical Hoermander order needs alpha > 1/2");
    const auto eta = positive_bump(bump_lo, bump_hi);
    const Weight va = Weight::poly(alpha);
    const auto vw = weight_samples(va, 0.0, line_grid.dual());

    ClassicalHoermanderCheck out;
    // dilation sup over a logarithmic t-lattice
    for (int k = -24; k <= 24; ++k) {
        const double t = std::pow(2.0, 0.25 * static_cast<double>(k));
        std::vector<cplx> prod(line_grid.points());
        for (std::size_t i = 0; i < line_grid.points(); ++i) {
            const double x = line_grid.point(i);
            const double e = eta(x);
            prod[i] = e > 0.0 ? e * m(t * x) : cplx(0.0);
        }
        SampledFunction g =
            fourier_inverse(SampledFunction(line_grid, std::move(prod)), {.warn_on_tail = false});
        out.dilation_sup = std::max(out.dilation_sup, weighted_norm_pre(g, vw, 2.0));
    }

    // pullback estimate: m(e^x) on the line with v_alpha, omega = 0
    auto pullback = [&m](cplx z) { return m(std::exp(z.real())); };
    const Localizer gauss = Localizer::gaussian(line_grid.dual());
    out.sector_estimate = hoermander_norm(pullback, gauss, va, 0.0, line_grid, {}).value;
    out.ratio = out.sector_estimate > 0.0 ? out.dilation_sup / out.sector_estimate : 0.0;
    return out;
}

}  // namespace hlab
