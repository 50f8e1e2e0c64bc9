#include "hlab/weights.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <mutex>
#include <numbers>
#include <sstream>

namespace hlab {

struct Weight::Impl {
    WeightFamily family;
    std::string name;
    std::function<double(double)> eval;
    mutable std::once_flag report_once;
    mutable AdmissibilityReport cached_report;
};

namespace {

double checked_eval(const Weight::Impl& impl, double s) {
    const double v = impl.eval(s);
    if (!std::isfinite(v)) throw input_error("weight '" + impl.name + "' not finite at s=" + std::to_string(s));
    if (v < 1.0) throw input_error("weight '" + impl.name + "' below 1 at s=" + std::to_string(s));
    return v;
}

std::shared_ptr<Weight::Impl> make_impl(WeightFamily family, std::string name,
                                        std::function<double(double)> eval) {
    auto impl = std::make_shared<Weight::Impl>();
    impl->family = family;
    impl->name = std::move(name);
    impl->eval = std::move(eval);
    return impl;
}

// log-spaced magnitudes in (0, R], both signs, plus 0
std::vector<double> log_lattice(double R, std::size_t count) {
    std::vector<double> pts;
    pts.reserve(2 * count + 1);
    const double lo = std::log(R * 1e-7);
    const double hi = std::log(R);
    for (std::size_t k = 0; k < count; ++k) {
        const double m = std::exp(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(count - 1));
        pts.push_back(m);
        pts.push_back(-m);
    }
    pts.push_back(0.0);
    std::sort(pts.begin(), pts.end());
    return pts;
}

}  // namespace

Weight Weight::constant() {
    return Weight(make_impl(WeightFamily::constant, "const", [](double) { return 1.0; }));
}

Weight Weight::poly(double alpha) {
    if (alpha < 0.0) throw config_error("poly weight exponent must be >= 0");
    std::ostringstream nm;
    nm << "poly:" << alpha;
    return Weight(make_impl(WeightFamily::poly, nm.str(),
                            [alpha](double s) { return std::pow(1.0 + std::abs(s), alpha); }));
}

Weight Weight::polylog(double alpha, double beta) {
    if (alpha < 0.0 || beta < 0.0) throw config_error("polylog weight exponents must be >= 0");
    std::ostringstream nm;
    nm << "polylog:" << alpha << ":" << beta;
    return Weight(make_impl(WeightFamily::polylog, nm.str(), [alpha, beta](double s) {
        const double a = std::abs(s);
        return std::pow(1.0 + a, alpha) * std::pow(std::log(std::numbers::e_v<double> + a), beta);
    }));
}

Weight Weight::table(std::vector<std::pair<double, double>> points, std::string name) {
    if (points.size() < 2) throw config_error("table weight needs at least two points");
    std::sort(points.begin(), points.end());
    return Weight(make_impl(WeightFamily::table, std::move(name),
                            [pts = std::move(points)](double s) {
                                if (s <= pts.front().first) return pts.front().second;
                                if (s >= pts.back().first) return pts.back().second;
                                auto it = std::lower_bound(pts.begin(), pts.end(), s,
                                                           [](const auto& p, double x) { return p.first < x; });
                                const auto& [x1, y1] = *it;
                                const auto& [x0, y0] = *(it - 1);
                                const double t = (s - x0) / (x1 - x0);
                                return y0 + t * (y1 - y0);
                            }));
}

Weight Weight::custom(std::string name, std::function<double(double)> eval) {
    return Weight(make_impl(WeightFamily::custom, std::move(name), std::move(eval)));
}

Weight Weight::parse(const std::string& spec) {
    if (spec == "const") return constant();
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::stringstream ss(s);
        std::string part;
        while (std::getline(ss, part, ':')) out.push_back(part);
        return out;
    };
    const auto parts = split(spec);
    try {
        if (parts.size() == 2 && parts[0] == "poly") return poly(std::stod(parts[1]));
        if (parts.size() == 3 && parts[0] == "polylog") return polylog(std::stod(parts[1]), std::stod(parts[2]));
        if (parts.size() == 2 && parts[0] == "table") {
            std::ifstream is(parts[1]);
            if (!is) throw config_error("cannot open weight table: " + parts[1]);
            std::vector<std::pair<double, double>> pts;
            std::string line;
            while (std::getline(is, line)) {
                double s, v;
                if (std::sscanf(line.c_str(), "%lf,%lf", &s, &v) == 2) pts.emplace_back(s, v);
            }
            return table(std::move(pts), spec);
        }
    } catch (const std::invalid_argument&) {
        throw config_error("malformed weight spec: " + spec);
    }
    throw config_error("unknown weight spec: " + spec);
}

double Weight::operator()(double s) const { return checked_eval(*impl_, s); }
WeightFamily Weight::family() const { return impl_->family; }
const std::string& Weight::name() const { return impl_->name; }

const AdmissibilityReport& Weight::report() const {
    std::call_once(impl_->report_once, [this] {
        impl_->cached_report = admissibility_report(*this, kDefaultScanRange, kDefaultScanSamples);
    });
    return impl_->cached_report;
}

AdmissibilityReport admissibility_report(const Weight& v, double scan_range, std::size_t samples) {
    if (!(scan_range > 0.0)) throw config_error("scan range must be positive");
    if (samples < 1000) throw config_error("admissibility report needs >= 1000 samples");
    AdmissibilityReport rep;
    rep.scan_range = scan_range;

    // subadditivity constant on a log lattice; pairs reach |s+t| <= 2R
    const auto lattice = log_lattice(scan_range, samples / 2);
    std::vector<double> vals(lattice.size());
    for (std::size_t i = 0; i < lattice.size(); ++i) vals[i] = v(lattice[i]);
    double m = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        for (std::size_t j = i; j < lattice.size(); ++j) {
            const double num = v(lattice[i] + lattice[j]);
            m = std::max(m, num / (vals[i] + vals[j]));
        }
    }
    rep.m_v_estimate = m;

    // doubling diagnostics
    double dsup = 0.0;
    for (std::size_t i = 0; i < lattice.size(); ++i) {
        dsup = std::max(dsup, v(2.0 * lattice[i]) / vals[i]);
    }
    rep.doubling_sup = dsup;

    auto window_max = [&](double lo, double hi) {
        double w = 0.0;
        const std::size_t n = 256;
        for (std::size_t k = 0; k < n; ++k) {
            const double t = lo * std::pow(hi / lo, static_cast<double>(k) / static_cast<double>(n - 1));
            w = std::max({w, v(2.0 * t) / v(t), v(-2.0 * t) / v(-t)});
        }
        return w;
    };
    const double outer = window_max(scan_range / 2.0, scan_range);
    const double inner = window_max(scan_range / 4.0, scan_range / 2.0);
    rep.doubling_trend = (outer > 1.05 * inner) ? DoublingTrend::diverging : DoublingTrend::bounded;

    // growth exponent: LS slope of log v against log(1+s) on [R/2, R]
    {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const std::size_t n = 256;
        for (std::size_t k = 0; k < n; ++k) {
            const double s = scan_range / 2.0 *
                             std::pow(2.0, static_cast<double>(k) / static_cast<double>(n - 1));
            const double x = std::log(1.0 + s);
            const double y = std::log(std::max(v(s), v(-s)));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double nn = static_cast<double>(n);
        const double denom = nn * sxx - sx * sx;
        rep.growth_exponent = denom != 0.0 ? (nn * sxy - sx * sy) / denom : 0.0;
    }

    // strong admissibility: core quadrature of 1/v^2 plus analytic tail bound.
    // The substitution s = e^u - 1 concentrates nodes where 1/v^2 lives.
    if (rep.doubling_trend == DoublingTrend::bounded) {
        const double ahat = rep.growth_exponent;
        if (ahat > 0.5 + 0.05) {
            const std::size_t n = 40000;
            const double umax = std::log1p(scan_range);
            const double hu = umax / static_cast<double>(n);
            double core = 0.0;
            for (std::size_t k = 0; k <= n; ++k) {
                const double u = hu * static_cast<double>(k);
                const double s = std::expm1(u);
                const double w = (k == 0 || k == n) ? 0.5 : 1.0;
                const double vp = v(s), vn = v(-s);
                core += w * std::exp(u) * (1.0 / (vp * vp) + 1.0 / (vn * vn));
            }
            core *= hu;
            const double tail_pos = (1.0 + scan_range) / ((2.0 * ahat - 1.0) * v(scan_range) * v(scan_range));
            const double tail_neg = (1.0 + scan_range) / ((2.0 * ahat - 1.0) * v(-scan_range) * v(-scan_range));
            rep.strongly_admissible = true;
            rep.inv_v_sq_integral = core + tail_pos + tail_neg;
        }
    }
    return rep;
}

Weight smooth_equivalent(const Weight& v, double mollifier_width, double* ratio_out) {
    if (!(mollifier_width > 0.0)) throw input_error("mollifier width must be positive");
    // even decreasing bump of unit mass on (-w, w)
    const int half = 64;  // 129 Simpson nodes, symmetric
    const int n = 2 * half;
    const double w = mollifier_width;
    std::vector<double> nodes(n + 1), bump(n + 1), simpson(n + 1);
    for (int k = 0; k <= n; ++k) {
        nodes[k] = -w + 2.0 * w * static_cast<double>(k) / n;
        const double x = nodes[k] / w;
        bump[k] = std::abs(x) < 1.0 ? std::exp(-1.0 / (1.0 - x * x)) : 0.0;
        simpson[k] = (k == 0 || k == n) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
    }
    double mass = 0.0;
    const double hq = 2.0 * w / n;
    for (int k = 0; k <= n; ++k) mass += simpson[k] * bump[k];
    mass *= hq / 3.0;
    for (double& b : bump) b /= mass;

    auto vt = [v, nodes, bump, simpson, hq, half, n](double s) {
        // symmetric pairing keeps even inputs exactly even
        double acc = simpson[half] * bump[half] * v(s - nodes[half]);
        for (int k = 0; k < half; ++k) {
            acc += simpson[k] * bump[k] * (v(s - nodes[k]) + v(s - nodes[n - k]));
        }
        return acc * hq / 3.0;
    };

    if (ratio_out != nullptr) {
        double up = 0.0, down = 0.0;
        for (int k = 0; k <= 512; ++k) {
            const double s = -64.0 + 128.0 * static_cast<double>(k) / 512.0;
            const double r = vt(s) / v(s);
            up = std::max(up, r);
            down = std::max(down, 1.0 / r);
        }
        *ratio_out = up * down;
    }
    return Weight::custom(v.name() + "~", std::move(vt));
}

std::vector<double> weight_samples(const Weight& v, double omega, const Grid& grid) {
    std::vector<double> out(grid.points());
    for (std::size_t k = 0; k < grid.points(); ++k) {
        const double s = grid.point(k);
        out[k] = v(s) * std::exp(omega * std::abs(s));
    }
    return out;
}

double weighted_norm_pre(const SampledFunction& f, std::span<const double> vw, double p) {
    if (vw.size() != f.size()) throw input_error("weight sample count mismatch");
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::size_t k = 0; k < f.size(); ++k) m = std::max(m, vw[k] * std::abs(f.value(k)));
        return m;
    }
    if (p < 1.0) throw input_error("p must be >= 1");
    double acc = 0.0;
    if (p == 2.0) {
        for (std::size_t k = 0; k < f.size(); ++k) acc += vw[k] * vw[k] * std::norm(f.value(k));
        return std::sqrt(acc * f.grid().spacing());
    }
    if (p == 1.0) {
        for (std::size_t k = 0; k < f.size(); ++k) acc += vw[k] * std::abs(f.value(k));
        return acc * f.grid().spacing();
    }
    for (std::size_t k = 0; k < f.size(); ++k) acc += std::pow(vw[k] * std::abs(f.value(k)), p);
    return std::pow(acc * f.grid().spacing(), 1.0 / p);
}

double weighted_norm(const SampledFunction& f, const Weight& v, double omega, double p) {
    if (omega < 0.0) throw input_error("omega must be >= 0");
    return weighted_norm_pre(f, weight_samples(v, omega, f.grid()), p);
}

}  // namespace hlab
