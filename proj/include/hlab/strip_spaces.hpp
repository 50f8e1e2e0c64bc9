#pragma once

#include <array>
#include <string>

#include "hlab/fourier.hpp"
#include "hlab/weights.hpp"

namespace hlab {

/// Holomorphic function on the strip St_omega stored through its inverse
/// Fourier transform g = f^inv on a grid, so that f(z) = \int e^{-izs} g(s) ds.
/// Membership in W^2_v(St_omega) means ||v e^{omega|s|} g||_2 < inf.
class StripFunctionRep {
public:
    StripFunctionRep(SampledFunction coeff, double omega, Weight weight, std::string label);

    /// Fit-then-verify constructor: inverse transform of center-line samples.
    static StripFunctionRep from_line_samples(const SampledFunction& center_line, double omega,
                                              Weight weight, std::string label);
    static StripFunctionRep from_function(const std::function<cplx(cplx)>& f, const Grid& line_grid,
                                          double omega, Weight weight, std::string label);

    const SampledFunction& coeff() const { return coeff_; }
    double omega() const { return omega_; }
    const Weight& weight() const { return weight_; }
    const std::string& label() const { return label_; }

    /// f(z) = \int e^{-izs} g(s) ds by quadrature over the coefficient grid.
    cplx evaluate(cplx z) const;
    /// Center-line samples f|_0 on the dual of the coefficient grid.
    SampledFunction line_samples() const;

    /// Re-evaluates the three stored reference points; throws input_error when
    /// the representation drifted beyond 1e-8 (it cannot, unless mutated).
    void verify_spot_checks(double tol = 1e-8) const;

private:
    SampledFunction coeff_;
    double omega_;
    Weight weight_;
    std::string label_;
    std::array<cplx, 3> ref_points_;
    std::array<cplx, 3> ref_values_;
};

/// Restriction of a strip function to a horizontal line Im z = ordinate.
struct LineFunction {
    SampledFunction samples;
    double ordinate;
};

/// ||f||_{W^2_v(St_omega)} = ||g||_{L^2_{v,omega}}.
double sobolev_norm(const StripFunctionRep& f);

/// ||f||_{A_v} = ||g||_{L^1_{v,omega}}. tail_warning (optional) is set when the
/// weighted coefficient still carries mass at the grid edge, i.e. the L^1
/// membership is not resolved on this grid.
double fourier_algebra_norm(const StripFunctionRep& f, bool* tail_warning = nullptr);

struct HardyNorm {
    double value;
    double argmax_ordinate;
};

/// sup_{|y| <= omega'} ||f|_y||_2, computed Fourier-side as
/// sqrt(2 pi) sup_y ||e^{ys} g||_2 over sampled ordinates including the
/// endpoints (where the sup lives for one-signed coefficients).
HardyNorm hardy2_norm(const StripFunctionRep& f, double omega_prime, std::size_t ordinates = 64);

struct BoundaryValues {
    LineFunction upper;  // f|_{+omega}
    LineFunction lower;  // f|_{-omega}
    std::array<double, 3> continuity_gaps;  // ||f|_{omega-d} - f|_omega||_2 for d = .1, .01, .001
};

/// Both boundary lines f|_{+-omega} = (e^{+-omega s} g)^hat. Rejected for
/// omega = 0 (a line has no boundary).
BoundaryValues boundary_values(const StripFunctionRep& f);

/// f|_y as a line function, |y| <= omega.
LineFunction line_restriction(const StripFunctionRep& f, double y);

// --- canonical representatives used across tests and experiments ---

/// r_lambda = (lambda - z)^{-1}, |Im lambda| > omega. Coefficient is the
/// one-sided exponential -i e^{i lambda s} 1_{s>0} (Im lambda > 0) with the
/// midpoint value at the jump.
StripFunctionRep resolvent_rep(cplx lambda, double omega, const Weight& v, const Grid& coeff_grid);

/// e^{-z^2}; coefficient e^{-s^2/4} / (2 sqrt(pi)).
StripFunctionRep gaussian_rep(double omega, const Weight& v, const Grid& coeff_grid);

}  // namespace hlab
