#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>

#include "hlab/grid.hpp"

namespace hlab {

enum class WeightFamily { constant, poly, polylog, table, custom };
enum class DoublingTrend { bounded, diverging };

/// Sampled diagnostics for an admissible weight. All constants are lower
/// estimates from finite lattices; downstream inequalities add 1e-6 slack.
struct AdmissibilityReport {
    double m_v_estimate = 0.0;       // sampled sup of v(s+t)/(v(s)+v(t))
    double doubling_sup = 0.0;       // sampled sup of v(2t)/v(t)
    DoublingTrend doubling_trend = DoublingTrend::bounded;
    double growth_exponent = 0.0;    // least-squares slope of log v vs log(1+|s|)
    bool strongly_admissible = false;
    double inv_v_sq_integral = 0.0;  // certified (core + analytic tail) \int 1/v^2 when finite
    double scan_range = 0.0;
    bool admissible() const { return doubling_trend == DoublingTrend::bounded; }
};

/// A weight function v >= 1. Immutable; the default diagnostics report is
/// computed once and cached, so copies are cheap shared handles.
class Weight {
public:
    static Weight constant();
    static Weight poly(double alpha);
    static Weight polylog(double alpha, double beta);
    /// Piecewise-linear through (s, v) points, clamped to the end values.
    static Weight table(std::vector<std::pair<double, double>> points, std::string name = "table");
    static Weight custom(std::string name, std::function<double(double)> eval);
    /// Mini-grammar: "const" | "poly:A" | "polylog:A:B" | "table:<path.csv>".
    static Weight parse(const std::string& spec);

    double operator()(double s) const;
    WeightFamily family() const;
    const std::string& name() const;

    /// Cached report with default scanning parameters.
    const AdmissibilityReport& report() const;

    struct Impl;

private:
    explicit Weight(std::shared_ptr<Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<Impl> impl_;
};

constexpr double kDefaultScanRange = 1e6;
constexpr std::size_t kDefaultScanSamples = 1200;

/// Sampled admissibility diagnostics over [-R, R] lattices (log-spaced so the
/// asymptotic regime is seen). samples >= 1000 per the contract.
AdmissibilityReport admissibility_report(const Weight& v, double scan_range, std::size_t samples);

/// Mollified smooth equivalent v * eta with an even decreasing bump of unit
/// mass and the given width. The measured equivalence ratio
/// sup(vt/v) * sup(v/vt) over the scan window is written to ratio_out.
Weight smooth_equivalent(const Weight& v, double mollifier_width, double* ratio_out = nullptr);

/// || v e^{omega|s|} f ||_{L^p} by trapezoidal quadrature (sup for p = inf).
double weighted_norm(const SampledFunction& f, const Weight& v, double omega, double p);

/// Weight samples on a grid (cached by callers that loop over translates).
std::vector<double> weight_samples(const Weight& v, double omega, const Grid& grid);
double weighted_norm_pre(const SampledFunction& f, std::span<const double> vw, double p);

}  // namespace hlab
