#pragma once

#include "hlab/hoermander.hpp"
#include "hlab/operators.hpp"

namespace hlab {

enum class CalcMethod { oracle, contour, sobolev_integral, meda };
enum class CalcStatus { ok, divergence_warning, degenerate };

struct CalculusResult {
    OperatorMatrix matrix;
    CalcMethod method = CalcMethod::oracle;
    CalcStatus status = CalcStatus::ok;
    std::string note;

    // quadrature metadata
    double contour_height = 0.0;
    double truncation = 0.0;
    double step = 0.0;

    // meda extras: || f(A) || <= triangle_bound (sum of ||F_s(A)|| ||U_s|| h)
    double triangle_bound = 0.0;

    double deviation_from_oracle = 0.0;
};

/// Ground truth on diagonalizable models: V diag(f(eig)) V^{-1}.
CalculusResult spectral_oracle(const DiagonalizableOperator& a, const std::function<cplx(cplx)>& f);

/// Cauchy integral (1/2 pi i) \oint f(w) R(w, A) dw over the rectangle
/// |Re w| <= truncation, |Im w| <= omega', traversed counterclockwise:
/// trapezoidal steps on the two horizontal lines plus the two short closing
/// segments (they complete the contour; without them slowly decaying f like
/// resolvents lose ~1/truncation^2 of mass).
CalculusResult elementary_contour(const DiagonalizableOperator& a, const std::function<cplx(cplx)>& f,
                                  double omega_prime, double truncation, double step = 0.02);

/// Contour height default: geometric mean of spectral height and margin.
double default_contour_height(const DiagonalizableOperator& a, double theta);

/// Group integral f(A) = sum_s g(s) e^{-isA} h over the coefficient grid of
/// the stored representation. f_exact (when given) feeds the oracle used in
/// deviation_from_oracle; without it the deviation is not meaningful (the rep
/// itself is the only description of f) and the note says so.
CalculusResult sobolev_integral(const DiagonalizableOperator& a, const StripFunctionRep& f,
                                const std::function<cplx(cplx)>* f_exact = nullptr);

/// Meda representation f(A) = \int F_s(A) e^{-isA} ds with
/// F_s = (tau_z phi . f)^inv(s), phi(0) = 1 (rescaled otherwise). F_s(A) is
/// assembled through the spectral oracle of the scalar functions F_s; the
/// windowed transforms run one FFT per eigenvalue.
CalculusResult meda_hoermander(const DiagonalizableOperator& a, const StripFn& f, const Localizer& phi,
                               const Grid& line_grid,
                               const std::function<cplx(cplx)>* f_exact = nullptr);

struct RegularizerProfile {
    double l2_profile = 0.0;  // max over basis pairs of ||e^{-omega|s|}/v <U_s^h x, x'>||_2
    bool is_regularizer = false;
    double refined_profile = 0.0;  // same on the doubled s-range
};

/// Orbit square-integrability diagnostic for h as a W^2_v-regularizer.
RegularizerProfile regularizer_profile(const DiagonalizableOperator& a,
                                       const std::function<cplx(cplx)>& h, const Weight& v,
                                       double omega, const Grid& s_grid);

struct GaussianApproxStep {
    int n = 0;
    double deviation = 0.0;     // ||g_n(A) - f(A)||
    double hoer_ratio = 0.0;    // ||g_n||_Hoer / ||f||_Hoer
};

struct GaussianApproxReport {
    std::vector<GaussianApproxStep> steps;
    double k_estimate = 0.0;  // sup_n hoer_ratio
};

/// Approximants g_n = e^{-z^2/n} f evaluated by the meda route; reports the
/// K-estimate and the deviation trend towards f(A).
GaussianApproxReport gaussian_approximation_harness(const DiagonalizableOperator& a, const StripFn& f,
                                                    const Weight& v, const Grid& line_grid,
                                                    std::span<const int> n_list);

enum class StripMethod { auto_select, contour, sobolev, oracle };

/// Composition rule: f(A) = [f(e^z)](log A). Builds the strip model log A,
/// pulls f back, evaluates by the chosen strip method and compares with the
/// direct sector oracle.
CalculusResult sector_calculus(const DiagonalizableOperator& a_sectorial,
                               const std::function<cplx(cplx)>& f_on_sector,
                               StripMethod method = StripMethod::auto_select);

}  // namespace hlab
