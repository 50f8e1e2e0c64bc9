#include "hlab/operators.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "json.hpp"

namespace hlab {

namespace {

bool is_inf(double p) { return std::isinf(p); }

Vec dual_sign_power(const Vec& y, double q) {
    // phase(y_i) |y_i|^{q-1}, the p-norm duality map direction
    Vec out(y.size());
    for (Eigen::Index i = 0; i < y.size(); ++i) {
        const double a = std::abs(y[i]);
        out[i] = a > 0.0 ? (y[i] / a) * std::pow(a, q - 1.0) : cplx(0.0);
    }
    return out;
}

}  // namespace

double vector_p_norm(const Vec& x, double p) {
    if (is_inf(p)) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) m = std::max(m, std::abs(x[i]));
        return m;
    }
    if (p == 2.0) return x.norm();
    if (p == 1.0) return x.cwiseAbs().sum();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) acc += std::pow(std::abs(x[i]), p);
    return std::pow(acc, 1.0 / p);
}

double matrix_p_norm(const Mat& m, double p, std::uint64_t seed, int starts) {
    if (!m.allFinite()) throw input_error("matrix has non-finite entries");
    if (p == 1.0) return m.cwiseAbs().colwise().sum().maxCoeff();
    if (is_inf(p)) return m.cwiseAbs().rowwise().sum().maxCoeff();
    if (p == 2.0) return m.jacobiSvd().singularValues()(0);
    if (p < 1.0) throw input_error("p must be >= 1");

    const Eigen::Index n = m.cols();
    const double q = p / (p - 1.0);
    Rng rng(seed);
    double best = 0.0;

    auto ratio = [&](const Vec& x) {
        const double nx = vector_p_norm(x, p);
        if (nx <= 0.0) return 0.0;
        return vector_p_norm(m * x, p) / nx;
    };

    std::vector<Vec> seeds;
    for (Eigen::Index j = 0; j < n; ++j) seeds.push_back(Vec::Unit(n, j));
    for (int r = 0; r < starts; ++r) {
        Vec x(n);
        for (Eigen::Index i = 0; i < n; ++i) x[i] = cplx(rng.gaussian(), rng.gaussian());
        seeds.push_back(std::move(x));
    }

    for (Vec x : seeds) {
        best = std::max(best, ratio(x));
        // Boyd/Higham power-type ascent; every iterate contributes a valid
        // lower bound through ratio()
        for (int it = 0; it < 16; ++it) {
            Vec y = m * x;
            const double ny = vector_p_norm(y, p);
            if (ny <= 0.0) break;
            Vec z = m.adjoint() * dual_sign_power(y, p);
            Vec xn = dual_sign_power(z, q);
            const double nxn = vector_p_norm(xn, p);
            if (nxn <= 0.0) break;
            xn /= nxn;
            const double r2 = ratio(xn);
            if (r2 <= best * (1.0 + 1e-12)) {
                best = std::max(best, r2);
                break;
            }
            best = r2;
            x = std::move(xn);
        }
    }
    return best;
}

double p_norm_interpolation_upper(const Mat& m, double p) {
    if (p < 1.0) throw input_error("p must be >= 1");
    const double n1 = m.cwiseAbs().colwise().sum().maxCoeff();
    const double ninf = m.cwiseAbs().rowwise().sum().maxCoeff();
    if (p == 1.0) return n1;
    if (is_inf(p)) return ninf;
    return std::pow(n1, 1.0 / p) * std::pow(ninf, 1.0 - 1.0 / p);
}

OperatorMatrix::OperatorMatrix(Mat entries) : entries_(std::move(entries)) {
    if (!entries_.allFinite()) throw input_error("operator matrix has non-finite entries");
}

double OperatorMatrix::norm(double p) const {
    auto it = norm_cache_.find(p);
    if (it != norm_cache_.end()) return it->second;
    const double v = matrix_p_norm(entries_, p);
    norm_cache_.emplace(p, v);
    return v;
}

DiagonalizableOperator::DiagonalizableOperator(Vec eig, Mat basis, Mat basis_inv, double p_index,
                                               OperatorKind kind, double omega)
    : eig_(std::move(eig)), basis_(std::move(basis)), basis_inv_(std::move(basis_inv)),
      p_index_(p_index), kind_(kind), omega_(omega) {
    const auto n = eig_.size();
    if (basis_.rows() != n || basis_.cols() != n || basis_inv_.rows() != n || basis_inv_.cols() != n) {
        throw input_error("basis shape mismatch");
    }
    if (omega_ < 0.0) throw input_error("omega must be >= 0");
    const double defect = (basis_ * basis_inv_ - Mat::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > 1e-10) {
        throw input_error("basis inverse defect " + std::to_string(defect) + " exceeds 1e-10");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        if (kind_ == OperatorKind::strip_type) {
            if (std::abs(eig_[j].imag()) > omega_ + 1e-12) {
                throw input_error("eigenvalue outside the strip");
            }
        } else {
            const cplx e = eig_[j];
            if (std::abs(e) > 0.0 && std::abs(std::arg(e)) > omega_ + 1e-12) {
                throw input_error("eigenvalue outside the sector");
            }
        }
    }
}

DiagonalizableOperator DiagonalizableOperator::make(Vec eig, Mat basis, double p_index,
                                                    OperatorKind kind, double omega) {
    Mat inv = basis.fullPivLu().inverse();
    return DiagonalizableOperator(std::move(eig), std::move(basis), std::move(inv), p_index, kind,
                                  omega);
}

DiagonalizableOperator DiagonalizableOperator::diagonal(Vec eig, double p_index, OperatorKind kind,
                                                        double omega) {
    const auto n = eig.size();
    return DiagonalizableOperator(std::move(eig), Mat::Identity(n, n), Mat::Identity(n, n), p_index,
                                  kind, omega);
}

DiagonalizableOperator DiagonalizableOperator::random_strip(std::size_t dim, double omega,
                                                            double p_index, std::uint64_t seed,
                                                            double skew, double re_span) {
    Rng rng(seed);
    const auto n = static_cast<Eigen::Index>(dim);
    Vec eig(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        eig[j] = cplx(rng.uniform(-re_span, re_span), omega * rng.uniform(-1.0, 1.0));
    }
    Mat basis = Mat::Identity(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            basis(i, j) += skew * cplx(rng.gaussian(), rng.gaussian()) / std::sqrt(2.0 * n);
        }
    }
    return make(std::move(eig), std::move(basis), p_index, OperatorKind::strip_type, omega);
}

Mat DiagonalizableOperator::matrix() const { return apply_function([](cplx z) { return z; }); }

Mat DiagonalizableOperator::apply_function(const std::function<cplx(cplx)>& f) const {
    Vec fe(eig_.size());
    for (Eigen::Index j = 0; j < eig_.size(); ++j) {
        const cplx v = f(eig_[j]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw domain_error("function not finite at eigenvalue " + std::to_string(j));
        }
        fe[j] = v;
    }
    return basis_ * fe.asDiagonal() * basis_inv_;
}

bool DiagonalizableOperator::self_adjoint(double tol) const {
    if ((basis_ * basis_.adjoint() - Mat::Identity(eig_.size(), eig_.size())).cwiseAbs().maxCoeff() >
        tol) {
        return false;
    }
    for (Eigen::Index j = 0; j < eig_.size(); ++j) {
        if (std::abs(eig_[j].imag()) > tol) return false;
    }
    return true;
}

double DiagonalizableOperator::basis_condition() const {
    return matrix_p_norm(basis_, 2.0) * matrix_p_norm(basis_inv_, 2.0);
}

std::string to_json(const DiagonalizableOperator& op) {
    nlohmann::json j;
    j["dim"] = op.dim();
    auto pair_list = [](auto&& range) {
        std::vector<std::array<double, 2>> out;
        for (const cplx& v : range) out.push_back({v.real(), v.imag()});
        return out;
    };
    std::vector<cplx> eigv(op.eig().data(), op.eig().data() + op.dim());
    j["eig"] = pair_list(eigv);
    std::vector<cplx> rows;
    for (Eigen::Index i = 0; i < op.dim(); ++i) {
        for (Eigen::Index k = 0; k < op.dim(); ++k) rows.push_back(op.basis()(i, k));
    }
    j["basis"] = pair_list(rows);
    j["p"] = std::isinf(op.p_index()) ? -1.0 : op.p_index();
    j["kind"] = op.kind() == OperatorKind::strip_type ? "strip" : "sector";
    j["omega"] = op.omega();
    return j.dump();
}

DiagonalizableOperator operator_from_json(const std::string& json_text) {
    const auto j = nlohmann::json::parse(json_text);
    const auto n = j.at("dim").get<Eigen::Index>();
    Vec eig(n);
    const auto& je = j.at("eig");
    if (static_cast<Eigen::Index>(je.size()) != n) throw config_error("eig length mismatch");
    for (Eigen::Index k = 0; k < n; ++k) eig[k] = cplx(je[k][0].get<double>(), je[k][1].get<double>());
    Mat basis(n, n);
    const auto& jb = j.at("basis");
    if (static_cast<Eigen::Index>(jb.size()) != n * n) throw config_error("basis length mismatch");
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            const auto& cell = jb[i * n + k];
            basis(i, k) = cplx(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    double p = j.at("p").get<double>();
    if (p < 0.0) p = std::numeric_limits<double>::infinity();
    const auto kind = j.at("kind").get<std::string>() == "sector" ? OperatorKind::sectorial
                                                                  : OperatorKind::strip_type;
    return DiagonalizableOperator::make(std::move(eig), std::move(basis), p, kind,
                                        j.at("omega").get<double>());
}

OperatorMatrix resolvent(const DiagonalizableOperator& a, cplx lambda) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        if (std::abs(lambda - a.eig()[j]) < kSpectralCollisionTol) {
            throw input_error("lambda collides with the spectrum");
        }
    }
    return OperatorMatrix(a.apply_function([lambda](cplx z) { return 1.0 / (lambda - z); }));
}

double strip_type_constant(const DiagonalizableOperator& a, double omega_prime) {
    double max_im = 0.0;
    for (Eigen::Index j = 0; j < a.dim(); ++j) max_im = std::max(max_im, std::abs(a.eig()[j].imag()));
    if (!(omega_prime > max_im)) throw input_error("omega' must exceed the spectral strip height");

    double best = 0.0;
    std::vector<double> res{0.0};
    for (int k = 0; k <= 60; ++k) res.push_back(std::pow(10.0, -1.0 + 4.0 * k / 60.0));
    for (double re : res) {
        for (double sgn_re : {-1.0, 1.0}) {
            for (double sgn_im : {-1.0, 1.0}) {
                const cplx lambda(sgn_re * re, sgn_im * omega_prime);
                best = std::max(best, resolvent(a, lambda).norm(a.p_index()));
            }
        }
    }
    if (a.self_adjoint() && a.p_index() == 2.0) {
        best = std::max(best, 1.0 / omega_prime);
    }
    return best;
}

OperatorMatrix group_orbit(const DiagonalizableOperator& a, double s) {
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        if (std::abs(a.eig()[j].imag() * s) > 700.0) {
            throw input_error("group orbit overflow: |Im eig| * |s| > 700");
        }
    }
    return OperatorMatrix(
        a.apply_function([s](cplx z) { return std::exp(cplx(0.0, -s) * z); }));
}

OperatorMatrix imaginary_power(const DiagonalizableOperator& a, double s) {
    if (a.kind() != OperatorKind::sectorial) throw domain_error("imaginary powers need a sectorial model");
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        if (std::abs(a.eig()[j]) == 0.0) {
            throw domain_error("zero eigenvalue present: take the injective part first");
        }
    }
    return OperatorMatrix(
        a.apply_function([s](cplx z) { return std::exp(cplx(0.0, -s) * std::log(z)); }));
}

InjectivePart::InjectivePart(Vec eig, Mat embed, Mat coembed, Mat on_basis, double p_index,
                             OperatorKind kind, double omega)
    : eig_(std::move(eig)), embed_(std::move(embed)), coembed_(std::move(coembed)),
      on_basis_(std::move(on_basis)), p_index_(p_index), kind_(kind), omega_(omega) {}

Mat InjectivePart::apply_function(const std::function<cplx(cplx)>& f) const {
    const Eigen::Index n = embed_.rows();
    if (empty()) return Mat::Zero(n, n);
    Vec fe(eig_.size());
    for (Eigen::Index j = 0; j < eig_.size(); ++j) {
        const cplx v = f(eig_[j]);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
            throw domain_error("function not finite at eigenvalue of the injective part");
        }
        fe[j] = v;
    }
    return embed_ * fe.asDiagonal() * coembed_;
}

double InjectivePart::subspace_p_norm(const Mat& m, double p, std::uint64_t seed, int starts) const {
    if (empty()) throw degenerate_error("empty injective part has no operator norm");
    const Eigen::Index k = on_basis_.cols();
    Rng rng(seed);
    double best = 0.0;
    auto ratio = [&](const Vec& y) {
        const double ny = vector_p_norm(y, p);
        if (ny <= 0.0) return 0.0;
        return vector_p_norm(m * y, p) / ny;
    };
    // subspace samples: orthonormal basis columns, random combinations, and a
    // few ascent steps projected back onto Y
    for (Eigen::Index j = 0; j < k; ++j) best = std::max(best, ratio(on_basis_.col(j)));
    const double q = p > 1.0 && !is_inf(p) ? p / (p - 1.0) : 2.0;
    for (int r = 0; r < starts; ++r) {
        Vec c(k);
        for (Eigen::Index i = 0; i < k; ++i) c[i] = cplx(rng.gaussian(), rng.gaussian());
        Vec y = on_basis_ * c;
        best = std::max(best, ratio(y));
        for (int it = 0; it < 12; ++it) {
            Vec z = m.adjoint() * dual_sign_power(m * y, is_inf(p) ? 2.0 : p);
            Vec yn = on_basis_ * (on_basis_.adjoint() * dual_sign_power(z, q));
            const double n2 = vector_p_norm(yn, p);
            if (n2 <= 0.0) break;
            yn /= n2;
            const double rr = ratio(yn);
            if (rr <= best * (1.0 + 1e-12)) {
                best = std::max(best, rr);
                break;
            }
            best = rr;
            y = std::move(yn);
        }
    }
    return best;
}

InjectivePart injective_part(const DiagonalizableOperator& a) {
    std::vector<Eigen::Index> kept;
    for (Eigen::Index j = 0; j < a.dim(); ++j) {
        if (std::abs(a.eig()[j]) > kSpectralCollisionTol) kept.push_back(j);
    }
    const Eigen::Index n = a.dim();
    const auto k = static_cast<Eigen::Index>(kept.size());
    Vec eig(k);
    Mat embed(n, k), coembed(k, n);
    for (Eigen::Index i = 0; i < k; ++i) {
        eig[i] = a.eig()[kept[i]];
        embed.col(i) = a.basis().col(kept[i]);
        coembed.row(i) = a.basis_inv().row(kept[i]);
    }
    Mat on_basis(n, k);
    if (k > 0) {
        Eigen::HouseholderQR<Mat> qr(embed);
        on_basis = Mat(qr.householderQ()).leftCols(k);
    }
    return InjectivePart(std::move(eig), std::move(embed), std::move(coembed), std::move(on_basis),
                         a.p_index(), a.kind(), a.omega());
}

}  // namespace hlab
