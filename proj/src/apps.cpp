#include "hlab/apps.hpp"

#include <cmath>
#include <numbers>

namespace hlab {

double omega_p(double p) {
    if (!(p > 1.0) || std::isinf(p)) throw domain_error("omega_p needs p in (1, inf)");
    return std::asin(std::abs(1.0 - 2.0 / p));
}

namespace {

DiagonalizableOperator generator_from_p(const Eigen::MatrixXd& p) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(p);
    const Eigen::Index n = p.rows();
    Vec eig(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double a = 1.0 - es.eigenvalues()[j];
        if (std::abs(a) < 1e-12) a = 0.0;  // kernel of A, up to symmetric-solver roundoff
        if (a < 0.0) a = 0.0;              // spectral radius of P is <= 1
        eig[j] = cplx(a, 0.0);
    }
    Mat basis = es.eigenvectors().cast<cplx>();
    Mat basis_inv = basis.adjoint();
    return DiagonalizableOperator(std::move(eig), std::move(basis), std::move(basis_inv), 2.0,
                                  OperatorKind::sectorial, 0.0);
}

}  // namespace

ContractionModel::ContractionModel(Eigen::MatrixXd p, Eigen::VectorXd mu)
    : p_(std::move(p)), mu_(std::move(mu)), gen_(generator_from_p(p_)), range_(injective_part(gen_)) {
    const Eigen::Index n = p_.rows();
    if (p_.cols() != n || mu_.size() != n) throw input_error("contraction model shape mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!(mu_[i] > 0.0)) throw input_error("measure weights must be positive");
        double row = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (p_(i, j) < 0.0) throw input_error("P must be entrywise nonnegative");
            if (std::abs(p_(i, j) - p_(j, i)) > 1e-12) throw input_error("P must be symmetric");
            if (std::abs(mu_[i] * p_(i, j) - mu_[j] * p_(j, i)) > 1e-12) {
                throw input_error("P must be mu-symmetric");
            }
            row += p_(i, j);
        }
        if (row > 1.0 + 1e-12) throw input_error("P must be substochastic");
    }
}

ContractionModel ContractionModel::random(std::size_t dim, std::uint64_t seed) {
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(dim);
    Eigen::MatrixXd r(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double g = std::abs(rng.gaussian());
            r(i, j) = g;
            r(j, i) = g;
        }
    }
    if (rng.uniform() < 0.5) {
        // strictly substochastic: invertible generator
        const double slack = 1.0 + rng.uniform(0.05, 0.5);
        const double maxrow = r.rowwise().sum().maxCoeff();
        r /= maxrow * slack;
    } else {
        // lazy symmetric walk mixed with the identity: stochastic, kernel = constants
        const double theta = rng.uniform(0.2, 0.8);
        Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
        for (Eigen::Index i = 0; i < n; ++i) {
            s(i, (i + 1) % n) += 0.5;
            s(i, (i + n - 1) % n) += 0.5;
        }
        r = theta * Eigen::MatrixXd::Identity(n, n) + (1.0 - theta) * 0.5 * (s + s.transpose());
    }
    return ContractionModel(std::move(r), Eigen::VectorXd::Ones(n));
}

ContractionModel ContractionModel::swap_pair() {
    Eigen::MatrixXd p(2, 2);
    p << 0.0, 1.0, 1.0, 0.0;
    return ContractionModel(std::move(p), Eigen::VectorXd::Ones(2));
}

ContractionModel ContractionModel::cycle(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    if (n < 3) throw input_error("cycle model needs dim >= 3");
    Eigen::MatrixXd p = 0.5 * Eigen::MatrixXd::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        p(i, (i + 1) % n) += 0.25;
        p(i, (i + n - 1) % n) += 0.25;
    }
    return ContractionModel(std::move(p), Eigen::VectorXd::Ones(n));
}

double ContractionModel::mu_p_norm(const Vec& x, double p) const {
    if (std::isinf(p)) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]));
        return m;
    }
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) acc += mu_[i] * std::pow(std::abs(x[i]), p);
    return std::pow(acc, 1.0 / p);
}

double ContractionModel::operator_p_norm(const Mat& m, double p, std::uint64_t seed, int starts) const {
    Rng rng(seed);
    const Eigen::Index n = dim();
    double best = 0.0;
    auto ratio = [&](const Vec& x) {
        const double nx = mu_p_norm(x, p);
        return nx > 0.0 ? mu_p_norm(m * x, p) / nx : 0.0;
    };
    for (Eigen::Index j = 0; j < n; ++j) best = std::max(best, ratio(Vec::Unit(n, j)));
    for (int r = 0; r < starts; ++r) {
        Vec x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = cplx(rng.gaussian(), rng.gaussian());
        best = std::max(best, ratio(x));
        Vec y = m * x;  // one ascent step through the adjoint
        if (mu_p_norm(y, p) > 0.0) best = std::max(best, ratio(m.adjoint() * y));
    }
    return best;
}

double ContractionModel::operator_p_norm_on_range(const Mat& m, double p, std::uint64_t seed,
                                                  int starts) const {
    if (range_.empty()) throw degenerate_error("ran(A) is trivial");
    Rng rng(seed);
    const Mat& basis = range_.subspace_basis();
    const Eigen::Index k = basis.cols();
    double best = 0.0;
    auto ratio = [&](const Vec& y) {
        const double ny = mu_p_norm(y, p);
        return ny > 0.0 ? mu_p_norm(m * y, p) / ny : 0.0;
    };
    for (Eigen::Index j = 0; j < k; ++j) best = std::max(best, ratio(basis.col(j)));
    for (int r = 0; r < starts; ++r) {
        Vec c(k);
        for (Eigen::Index i = 0; i < k; ++i) c[i] = cplx(rng.gaussian(), rng.gaussian());
        const Vec y = basis * c;
        best = std::max(best, ratio(y));
        const Vec z = basis * (basis.adjoint() * (m * y));  // project the image back to Y
        best = std::max(best, ratio(z));
    }
    return best;
}

Mat ContractionModel::semigroup(double t) const {
    if (t < 0.0) throw domain_error("semigroup time must be >= 0");
    return gen_.apply_function([t](cplx z) { return std::exp(-t * z); });
}

CdGrowthReport cd_growth_check(const ContractionModel& model, double p, std::span<const double> s_grid,
                               std::uint64_t seed) {
    CdGrowthReport rep;
    if (model.range_part().empty()) {
        rep.degenerate = true;
        return rep;
    }
    const double wp = omega_p(p);
    for (double s : s_grid) {
        const Mat m = model.range_part().apply_function(
            [s](cplx z) { return std::exp(cplx(0.0, -s) * std::log(z)); });
        const double measured = model.operator_p_norm_on_range(m, p, seed, 32);
        const double bound = std::sqrt(1.0 + std::abs(s)) * std::exp(wp * std::abs(s));
        rep.s.push_back(s);
        rep.measured.push_back(measured);
        rep.bound.push_back(bound);
        rep.fitted_c = std::max(rep.fitted_c, measured / bound);
    }
    // dyadic growth trend of the ratio
    double smax = 0.0;
    for (double s : s_grid) smax = std::max(smax, std::abs(s));
    auto window_max = [&](double lo, double hi) {
        double w = 0.0;
        for (std::size_t i = 0; i < rep.s.size(); ++i) {
            const double as = std::abs(rep.s[i]);
            if (as >= lo && as <= hi) w = std::max(w, rep.measured[i] / rep.bound[i]);
        }
        return w;
    };
    const double outer = window_max(smax / 2.0, smax);
    const double inner = window_max(smax / 4.0, smax / 2.0);
    rep.passes = std::isfinite(rep.fitted_c) && rep.fitted_c > 0.0 &&
                 (inner <= 0.0 || outer <= 1.05 * inner);
    return rep;
}

OUModel::OUModel(int truncation) : n_(truncation) {
    if (truncation < 1 || truncation > 64) throw config_error("OU truncation must lie in [1, 64]");
    const int m = 4 * truncation;
    // Golub-Welsch on the Hermite Jacobi matrix (weight e^{-x^2})
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(m, m);
    for (int k = 1; k < m; ++k) {
        const double b = std::sqrt(static_cast<double>(k) / 2.0);
        jac(k, k - 1) = b;
        jac(k - 1, k) = b;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jac);
    nodes_ = es.eigenvalues();
    weights_.resize(m);
    for (int q = 0; q < m; ++q) {
        const double v0 = es.eigenvectors()(0, q);
        weights_[q] = v0 * v0;  // normalized measure pi^{-1/2} e^{-x^2}: weights sum to 1
    }
    // orthonormal Hermite values by the stable normalized recurrence
    h_.resize(m, truncation + 1);
    for (int q = 0; q < m; ++q) {
        const double x = nodes_[q];
        h_(q, 0) = 1.0;
        if (truncation >= 1) h_(q, 1) = x * std::sqrt(2.0);
        for (int k = 1; k < truncation; ++k) {
            h_(q, k + 1) = x * std::sqrt(2.0 / (k + 1.0)) * h_(q, k) -
                           std::sqrt(static_cast<double>(k) / (k + 1.0)) * h_(q, k - 1);
        }
    }
}

double OUModel::gram_defect() const {
    const int k = n_ + 1;
    Eigen::MatrixXd gram = h_.transpose() * weights_.asDiagonal() * h_;
    return (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
}

double OUModel::lp_norm(const Vec& coeff, double p) const {
    if (coeff.size() != n_ + 1) throw input_error("coefficient length mismatch");
    const Vec values = h_.cast<cplx>() * coeff;
    if (std::isinf(p)) {
        double m = 0.0;
        for (Eigen::Index q = 0; q < values.size(); ++q) m = std::max(m, std::abs(values[q]));
        return m;
    }
    double acc = 0.0;
    for (Eigen::Index q = 0; q < values.size(); ++q) {
        acc += weights_[q] * std::pow(std::abs(values[q]), p);
    }
    return std::pow(acc, 1.0 / p);
}

double OUModel::imaginary_power_norm(double s, double p, std::uint64_t seed, int starts) const {
    Rng rng(seed);
    double best = 0.0;
    auto ratio = [&](const Vec& c) {
        const double nc = lp_norm(c, p);
        if (nc <= 0.0) return 0.0;
        Vec tc = c;
        for (int k = 1; k <= n_; ++k) {
            tc[k] *= std::exp(cplx(0.0, -s * std::log(static_cast<double>(k))));
        }
        return lp_norm(tc, p) / nc;
    };
    for (int k = 1; k <= n_; ++k) {
        Vec c = Vec::Zero(n_ + 1);
        c[k] = 1.0;
        best = std::max(best, ratio(c));
    }
    for (int r = 0; r < starts; ++r) {
        Vec c = Vec::Zero(n_ + 1);
        for (int k = 1; k <= n_; ++k) c[k] = cplx(rng.gaussian(), rng.gaussian());
        best = std::max(best, ratio(c));
    }
    return best;
}

MultiplierReport multiplier_experiment(const ContractionModel& model,
                                       const std::function<cplx(cplx)>& m, double p, const Weight& v,
                                       const Grid& line_grid) {
    const auto& rep = v.report();
    if (!rep.strongly_admissible || rep.growth_exponent < 1.0 + 0.05) {
        throw input_error("multiplier weight must be strongly admissible with (1+|s|)^{1/2}/v in L^2");
    }
    const InjectivePart& part = model.range_part();
    if (part.empty()) throw degenerate_error("ran(A) is trivial");

    // reduced sectorial model in the coordinates of Y, then embed
    const DiagonalizableOperator reduced = DiagonalizableOperator::diagonal(
        part.eig(), p, OperatorKind::sectorial, 0.0);
    const CalculusResult calc = sector_calculus(reduced, m);
    const Mat ambient = part.apply_function(m);

    MultiplierReport out;
    out.calculus_deviation = calc.deviation_from_oracle;
    out.operator_norm = model.operator_p_norm_on_range(ambient, p);
    const Localizer gauss = Localizer::gaussian(line_grid.dual());
    out.hoermander_norm =
        sector_hoermander_norm(m, gauss, v, omega_p(p), line_grid, {.refine_check = false}).value;
    out.ratio = out.hoermander_norm > 0.0 ? out.operator_norm / out.hoermander_norm : 0.0;
    return out;
}

}  // namespace hlab
