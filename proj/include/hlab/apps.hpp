#pragma once

#include "hlab/calculus.hpp"
#include "hlab/sector_spaces.hpp"

namespace hlab {

/// arcsin|1 - 2/p|: the optimal sector angle for symmetric contraction
/// semigroups on L^p. Domain (1, inf).
double omega_p(double p);

/// Finite symmetric contraction semigroup model: A = I - P with P symmetric,
/// entrywise nonnegative, substochastic, on a finite measure space with
/// weights mu_k > 0 (mu-symmetry mu_k P_kl = mu_l P_lk required).
class ContractionModel {
public:
    ContractionModel(Eigen::MatrixXd p, Eigen::VectorXd mu);

    static ContractionModel random(std::size_t dim, std::uint64_t seed);
    /// P = antidiagonal swap on two states.
    static ContractionModel swap_pair();
    /// Symmetric lazy random walk on an n-cycle.
    static ContractionModel cycle(std::size_t dim);

    Eigen::Index dim() const { return p_.rows(); }
    const Eigen::MatrixXd& p() const { return p_; }
    const Eigen::VectorXd& mu() const { return mu_; }
    /// A = I - P as a sectorial model (angle 0, spectrum in [0, 2]).
    const DiagonalizableOperator& generator() const { return gen_; }

    double mu_p_norm(const Vec& x, double p) const;
    /// Lower estimate of the mu-weighted p -> p norm of M on the ambient space.
    double operator_p_norm(const Mat& m, double p, std::uint64_t seed = 13, int starts = 32) const;
    /// Same restricted to ran(A).
    double operator_p_norm_on_range(const Mat& m, double p, std::uint64_t seed = 13,
                                    int starts = 32) const;
    const InjectivePart& range_part() const { return range_; }
    Mat semigroup(double t) const;  // e^{-tA}

private:
    Eigen::MatrixXd p_;
    Eigen::VectorXd mu_;
    DiagonalizableOperator gen_;
    InjectivePart range_;
};

struct CdGrowthReport {
    bool passes = false;
    bool degenerate = false;  // empty injective part
    double fitted_c = 0.0;    // max measured / ((1+|s|)^{1/2} e^{omega_p |s|})
    std::vector<double> s;
    std::vector<double> measured;
    std::vector<double> bound;
};

/// Measures ||A^{-is}||_{p->p} on ran(A) over the s-grid against the
/// (1+|s|)^{1/2} e^{omega_p|s|} envelope; passes when the fitted constant is
/// finite and the ratio shows no growth across dyadic windows.
CdGrowthReport cd_growth_check(const ContractionModel& model, double p, std::span<const double> s_grid,
                               std::uint64_t seed = 17);

/// 1-D Ornstein-Uhlenbeck spectral model: eigenvalues {0..N}, Hermite
/// eigenfunctions orthonormalized against the Gaussian weight on a
/// Gauss-Hermite grid of 4N nodes.
class OUModel {
public:
    explicit OUModel(int truncation);

    int truncation() const { return n_; }
    const Eigen::VectorXd& nodes() const { return nodes_; }
    const Eigen::VectorXd& quad_weights() const { return weights_; }  // sum to 1
    /// values[q][k] = h_k(x_q)
    const Eigen::MatrixXd& eigenfunction_values() const { return h_; }
    /// Gram defect max |<h_i, h_j> - delta_ij| under the discrete measure.
    double gram_defect() const;

    /// L^p(gamma) norm of the function with Hermite coefficients c.
    double lp_norm(const Vec& coeff, double p) const;
    /// Lower estimate of ||L^{-is}||_{p->p} on ran(L) (coefficients 1..N).
    double imaginary_power_norm(double s, double p, std::uint64_t seed = 19, int starts = 32) const;

private:
    int n_;
    Eigen::VectorXd nodes_, weights_;
    Eigen::MatrixXd h_;
};

struct MultiplierReport {
    double operator_norm = 0.0;   // ||m(A_p)||_{p->p} on ran(A), lower estimate
    double hoermander_norm = 0.0; // ||m||_{Hoer^2_v(S_{omega_p})}
    double ratio = 0.0;
    double calculus_deviation = 0.0;  // sector_calculus vs oracle
};

/// End-to-end multiplier experiment: m(A_p) by the composition rule on the
/// injective part, measured p -> p norm, sector Hoermander norm of m, ratio.
/// Requires v strongly admissible with (1+|s|)^{1/2}/v in L^2.
MultiplierReport multiplier_experiment(const ContractionModel& model,
                                       const std::function<cplx(cplx)>& m, double p, const Weight& v,
                                       const Grid& line_grid);

}  // namespace hlab
