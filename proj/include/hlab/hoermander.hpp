#pragma once

#include "hlab/strip_spaces.hpp"

namespace hlab {

/// A function evaluable on a strip (center line always suffices: localized
/// products are formed sample-side on Im z = 0 and re-expanded).
using StripFn = std::function<cplx(cplx)>;

StripFn as_strip_fn(const StripFunctionRep& rep);

/// Window function for Hoermander norms: holomorphic Schwartz on St_theta
/// with |loc(z)| <= C (1+|Re z|)^{-alpha}, alpha >= 2, carrying its own
/// Fourier-side representative.
class Localizer {
public:
    enum class Kind { gaussian, modulated_gaussian, sech_power, fourier_of_bump, partition_window };

    static Localizer gaussian(const Grid& coeff_grid);
    static Localizer modulated_gaussian(const Grid& coeff_grid, double s0);
    /// sech(z)^2, analytic on |Im z| < pi/2, calibrated to the Gaussian's
    /// L^2 mass on the line so cross-localizer ratios are scale-free.
    static Localizer sech_power(const Grid& coeff_grid);
    /// Fourier transform of a smooth bump supported in [-a, a]; entire.
    static Localizer fourier_of_bump(const Grid& coeff_grid, double support_half_width);

    Kind kind() const { return kind_; }
    double strip_margin() const { return strip_margin_; }
    const std::string& name() const { return name_; }
    const SampledFunction& coeff() const { return coeff_; }
    cplx operator()(cplx z) const { return eval_(z); }

    /// Measured decay constant: sup over the line of (1+|x|)^alpha |loc(x)|.
    double decay_constant(double alpha = 2.0) const;
    Localizer rescaled(double factor) const;
    /// \int |loc|^2 on the line.
    double l2_mass_sq() const;

    Localizer(Kind kind, double strip_margin, std::string name, StripFn eval, SampledFunction coeff);

private:
    Kind kind_;
    double strip_margin_;
    std::string name_;
    StripFn eval_;
    SampledFunction coeff_;
};

/// Lattice maximum standing in for sup_t ||tau_t psi . f||_{W^2_v}; the flag
/// certifies stability under halving the lattice step.
struct HoermanderEstimate {
    double value = 0.0;
    double argmax_t = 0.0;
    double t_range = 0.0;
    double t_step = 0.0;
    bool convergence_flag = false;
};

struct HoermanderParams {
    double t_range = 20.0;
    double t_step = 0.25;
    bool refine_check = true;
};

HoermanderEstimate hoermander_norm(const StripFn& f, const Localizer& loc, const Weight& v,
                                   double omega, const Grid& line_grid,
                                   const HoermanderParams& params = {});
HoermanderEstimate hoermander_norm(const StripFunctionRep& f, const Localizer& loc,
                                   const HoermanderParams& params = {});

/// Relative W^2_v defect of the reproducing formula
///   phi f = \int (tau_t psi* . phi)(tau_t psi . f) dt ,
/// psi normalized to unit line L^2 mass.
double calderon_residual(const StripFn& f, const Localizer& phi, const Localizer& psi,
                         const Weight& v, double omega, const Grid& line_grid, double t_range,
                         double t_step);

struct DecayProfile {
    std::vector<double> s;
    std::vector<double> profile;  // sup_z v(s) e^{omega|s|} |(tau_z phi . f)^inv(s)|
    double sup = 0.0;
    double ratio_to_hoermander = 0.0;  // empirical constant of the decay theorem
};

DecayProfile coefficient_decay(const StripFn& f, const Localizer& phi, std::span<const cplx> z_lattice,
                               const Weight& v, double omega, const Grid& line_grid,
                               double hoermander_value);

/// Relative defect of phi(0) f(z) = \int (tau_z phi . f)^inv(s) e^{-isz} ds at
/// one probe point (absolute defect when f(z) = 0).
double representation_residual(const StripFn& f, const Localizer& phi, cplx z_probe, const Weight& v,
                               double omega, const Grid& line_grid);

/// The eta / phi / psi triple with sum_n phi(z - n) = 1 on St_theta:
/// eta = alpha e^{alpha z}/(1+e^{alpha z})^2, phi = \int_0^1 eta(s - z) ds
/// (quadrature), psi = phi^{1/3} (principal branch; Re phi > 0).
struct PartitionOfUnity {
    double theta = 0.0;
    double alpha = 0.0;
    StripFn eta;
    StripFn phi;
    StripFn psi;
};

PartitionOfUnity build_partition(double theta, double alpha);

struct WindowedLrBound {
    double value = 0.0;                // sup_n || v e^{omega|s|} (tau_n psi . f)^inv ||_{r'}
    double interpolation_bound = 0.0;  // sup_n (L^2)^{2/r'} (L^inf)^{1-2/r'}
    double r_prime = 0.0;
};

WindowedLrBound windowed_lr_bound(const StripFn& f, const Localizer& psi, double r, const Weight& v,
                                  double omega, const Grid& line_grid, int n_range = 20);

}  // namespace hlab
