#pragma once

#include <Eigen/Dense>
#include <map>

#include "hlab/errors.hpp"
#include "hlab/rng.hpp"

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace hlab {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

enum class OperatorKind { strip_type, sectorial };

constexpr double kSpectralCollisionTol = 1e-12;

/// Dense matrix with cached p-norms; the common carrier for f(A) results.
class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(Mat entries);
    const Mat& entries() const { return entries_; }
    Eigen::Index dim() const { return entries_.rows(); }
    /// Exact for p in {1, 2, inf}; lower estimate otherwise (32 seeded starts
    /// plus coordinate vectors).
    double norm(double p) const;

private:
    Mat entries_;
    mutable std::map<double, double> norm_cache_;
};

/// Finite-dimensional diagonalizable model A = V diag(eig) V^{-1} with its
/// spectrum located in a strip (|Im| <= omega) or sector (|arg| <= omega).
class DiagonalizableOperator {
public:
    DiagonalizableOperator(Vec eig, Mat basis, Mat basis_inv, double p_index, OperatorKind kind,
                           double omega);

    /// Computes and validates the inverse basis.
    static DiagonalizableOperator make(Vec eig, Mat basis, double p_index, OperatorKind kind,
                                       double omega);
    static DiagonalizableOperator diagonal(Vec eig, double p_index, OperatorKind kind, double omega);
    /// Seeded random strip-type model: eigenvalues in [-re_span, re_span] x
    /// [-omega, omega], basis I + skew * G with G gaussian (well-conditioned).
    static DiagonalizableOperator random_strip(std::size_t dim, double omega, double p_index,
                                               std::uint64_t seed, double skew = 0.25,
                                               double re_span = 3.0);

    Eigen::Index dim() const { return eig_.size(); }
    const Vec& eig() const { return eig_; }
    const Mat& basis() const { return basis_; }
    const Mat& basis_inv() const { return basis_inv_; }
    double p_index() const { return p_index_; }
    OperatorKind kind() const { return kind_; }
    double omega() const { return omega_; }

    Mat matrix() const;  // V diag(eig) V^{-1}
    /// Spectral assembly V diag(f(eig)) V^{-1}; throws domain_error when f is
    /// not finite at an eigenvalue.
    Mat apply_function(const std::function<cplx(cplx)>& f) const;
    bool self_adjoint(double tol = 1e-10) const;
    double basis_condition() const;  // ||V||_2 ||V^{-1}||_2

private:
    Vec eig_;
    Mat basis_;
    Mat basis_inv_;
    double p_index_;
    OperatorKind kind_;
    double omega_;
};

// serialization per the manifest schema
std::string to_json(const DiagonalizableOperator& op);
DiagonalizableOperator operator_from_json(const std::string& json_text);

OperatorMatrix resolvent(const DiagonalizableOperator& a, cplx lambda);

/// max ||R(lambda, A)||_p over a logarithmic lattice on Im lambda = +-omega',
/// |Re lambda| <= 10^3; includes the exact 1/(omega' - omega) normal-case
/// value when the basis is unitary.
double strip_type_constant(const DiagonalizableOperator& a, double omega_prime);

/// U_s = e^{-isA}.
OperatorMatrix group_orbit(const DiagonalizableOperator& a, double s);

/// A^{-is} = e^{-is log A} with the principal logarithm; requires a sectorial
/// model with no zero eigenvalue (take the injective part first).
OperatorMatrix imaginary_power(const DiagonalizableOperator& a, double s);

/// Restriction to Y = ran(A): zero eigenvalues dropped, with the embedding
/// kept so p-norms can be measured on the subspace in the ambient norm.
class InjectivePart {
public:
    bool empty() const { return eig_.size() == 0; }
    Eigen::Index ambient_dim() const { return embed_.rows(); }
    Eigen::Index dim() const { return eig_.size(); }
    const Vec& eig() const { return eig_; }
    double omega() const { return omega_; }
    double p_index() const { return p_index_; }
    OperatorKind kind() const { return kind_; }

    /// f(A_Y) embedded as an ambient matrix supported on Y.
    Mat apply_function(const std::function<cplx(cplx)>& f) const;
    /// Orthonormal (ell^2) basis of Y, used to sample Y in norm estimates.
    const Mat& subspace_basis() const { return on_basis_; }

    /// Lower estimate of sup { ||M y||_p / ||y||_p : y in Y }.
    double subspace_p_norm(const Mat& m, double p, std::uint64_t seed = 11, int starts = 32) const;

    InjectivePart(Vec eig, Mat embed, Mat coembed, Mat on_basis, double p_index, OperatorKind kind,
                  double omega);

private:
    Vec eig_;
    Mat embed_;    // n x k columns of V kept
    Mat coembed_;  // k x n rows of V^{-1} kept
    Mat on_basis_;
    double p_index_;
    OperatorKind kind_;
    double omega_;
};

InjectivePart injective_part(const DiagonalizableOperator& a);

/// Vector p-norm, p in [1, inf].
double vector_p_norm(const Vec& x, double p);

/// Exact for p in {1, 2, inf}; otherwise a lower estimate by a p-norm
/// power-type iteration from seeded random starts plus coordinate vectors.
double matrix_p_norm(const Mat& m, double p, std::uint64_t seed = 7, int starts = 32);

/// Riesz-Thorin upper bound ||M||_1^{1/p} ||M||_inf^{1-1/p}.
double p_norm_interpolation_upper(const Mat& m, double p);

}  // namespace hlab
