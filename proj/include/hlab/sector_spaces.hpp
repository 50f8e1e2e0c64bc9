#pragma once

#include "hlab/hoermander.hpp"

namespace hlab {

/// Function on the sector S_omega stored through its strip pullback f(e^z);
/// all sector norms are the strip norms of the pullback.
struct SectorFunctionRep {
    StripFunctionRep pullback;
    double angle = 0.0;
};

/// Builds the pullback rep by sampling f(e^x) on the line grid. Consistency
/// f(w) = pullback(log w) is checked at three reference points.
SectorFunctionRep sector_rep_from_function(const std::function<cplx(cplx)>& f_on_sector,
                                           const Grid& line_grid, double angle, Weight v,
                                           std::string label);

double sector_sobolev_norm(const SectorFunctionRep& f);

HoermanderEstimate sector_hoermander_norm(const SectorFunctionRep& f, const Localizer& loc,
                                          const HoermanderParams& params = {});
/// Callable variant (for multipliers like w^{-is0} with no L^2 pullback).
HoermanderEstimate sector_hoermander_norm(const std::function<cplx(cplx)>& f_on_sector,
                                          const Localizer& loc, const Weight& v, double angle,
                                          const Grid& line_grid, const HoermanderParams& params = {});

struct ClassicalHoermanderCheck {
    double dilation_sup = 0.0;     // sup_t || eta . m(t s) ||_{W^{alpha,2}(R)}
    double sector_estimate = 0.0;  // Hoermander estimate of m(e^z) with v_alpha, omega = 0
    double ratio = 0.0;
};

/// Classical Hoermander condition of order alpha against the exp/log bridge:
/// the dilation sup over a logarithmic t-lattice and the line Hoermander
/// estimate of the pullback must be finite together; their ratio is the
/// equivalence witness.
ClassicalHoermanderCheck classical_hoermander_check(const std::function<cplx(double)>& m, double alpha,
                                                    double bump_lo, double bump_hi,
                                                    const Grid& line_grid);

/// The smooth bump on (lo, hi) used by the classical check (unit sup).
std::function<double(double)> positive_bump(double lo, double hi);

}  // namespace hlab
