#include <chrono>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hlab/apps.hpp"
#include "hlab/calculus.hpp"
#include "hlab/manifest.hpp"
#include "hlab/serialize.hpp"

using namespace hlab;

namespace {

int finish(const RunReport& report) {
    for (const TaskOutcome& t : report.tasks) {
        std::cout << (t.config_ok ? (t.assertions_ok ? "[pass] " : "[FAIL] ") : "[conf] ") << t.name
                  << "  " << t.summary << '\n';
    }
    if (!report.first_error.empty()) std::cerr << report.first_error << '\n';
    return report.exit_code;
}

nlohmann::json single_task_manifest(nlohmann::json task) {
    return nlohmann::json{{"version", 1}, {"tasks", nlohmann::json::array({std::move(task)})}};
}

int run_bench(const RunOptions& opt) {
    using clock = std::chrono::steady_clock;
    const Grid grid(opt.grid_half_width, opt.grid_points);
    auto ms = [](clock::time_point a, clock::time_point b) {
        return std::chrono::duration<double, std::milli>(b - a).count();
    };

    auto t0 = clock::now();
    SampledFunction f = SampledFunction::sample(grid, [](double s) { return cplx(std::exp(-s * s), 0.0); });
    for (int i = 0; i < 50; ++i) f = fourier_inverse(fourier_forward(f));
    auto t1 = clock::now();
    std::cout << "fft round trips (50x): " << ms(t0, t1) << " ms\n";

    t0 = clock::now();
    const Localizer loc = Localizer::gaussian(grid.dual());
    const auto est = hoermander_norm([](cplx z) { return std::exp(-z * z); }, loc, Weight::poly(1.0),
                                     0.0, grid, {});
    t1 = clock::now();
    std::cout << "hoermander_norm: " << ms(t0, t1) << " ms (value " << est.value << ")\n";

    t0 = clock::now();
    const auto a = DiagonalizableOperator::random_strip(6, 0.5, 2.0, opt.seed);
    const auto r = elementary_contour(a, [](cplx z) { return std::exp(-z * z); },
                                      default_contour_height(a, 1.5), 40.0);
    t1 = clock::now();
    std::cout << "elementary_contour: " << ms(t0, t1) << " ms (deviation " << r.deviation_from_oracle
              << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weighted function-space norms, Hoermander estimates and f(A) cross-checks"};
    app.require_subcommand(1);

    RunOptions opt;
    app.add_option("--grid-L", opt.grid_half_width, "grid half-width");
    app.add_option("--grid-N", opt.grid_points, "grid points (power of two)");
    app.add_option("--seed", opt.seed, "base seed");
    app.add_option("--out", opt.output_dir, "output directory");
    app.add_option("--parallel", opt.parallel, "independent-task parallelism");

    // check-weight
    auto* cw = app.add_subcommand("check-weight", "admissibility diagnostics for a weight");
    std::string weight_spec = "poly:1";
    double scan_range = kDefaultScanRange;
    cw->add_option("weight", weight_spec, "weight spec (const|poly:A|polylog:A:B|table:PATH)");
    cw->add_option("--scan-range", scan_range, "lattice range R");

    // norm
    auto* nm = app.add_subcommand("norm", "compute a function-space norm");
    std::string norm_kind = "sobolev", norm_fn = "gaussian", norm_weight = "const";
    double norm_omega = 0.0, norm_omega_prime = 1.0;
    nm->add_option("kind", norm_kind, "sobolev|algebra|hardy|hoermander");
    nm->add_option("function", norm_fn, "named function");
    nm->add_option("--weight", norm_weight, "weight spec");
    nm->add_option("--omega", norm_omega, "strip height");
    nm->add_option("--omega-prime", norm_omega_prime, "hardy ordinate bound");

    // calc
    auto* cc = app.add_subcommand("calc", "cross-check f(A) methods on random models");
    std::string calc_fn = "gaussian";
    int calc_seeds = 10;
    double calc_gate = 1e-4;
    cc->add_option("function", calc_fn, "named function");
    cc->add_option("--seeds", calc_seeds, "number of random models");
    cc->add_option("--assert-max-deviation", calc_gate, "assertion gate");

    // verify
    auto* vf = app.add_subcommand("verify", "run an embedded verification suite");
    std::string suite = "plancherel";
    vf->add_option("suite", suite, "plancherel|partition|composition|omega-p");

    // run
    auto* rn = app.add_subcommand("run", "execute a JSON manifest");
    std::string manifest_path;
    rn->add_option("manifest", manifest_path, "manifest path")->required();

    auto* bn = app.add_subcommand("bench", "time core kernels");

    CLI11_PARSE(app, argc, argv);

    try {
        if (cw->parsed()) {
            return finish(run_manifest_text(
                single_task_manifest({{"kind", "weight-check"}, {"weight", weight_spec}, {"scan_range", scan_range}})
                    .dump(),
                opt));
        }
        if (nm->parsed()) {
            return finish(run_manifest_text(single_task_manifest({{"kind", "norm"},
                                                                  {"norm", norm_kind},
                                                                  {"function", norm_fn},
                                                                  {"weight", norm_weight},
                                                                  {"omega", norm_omega},
                                                                  {"omega_prime", norm_omega_prime}})
                                                .dump(),
                                            opt));
        }
        if (cc->parsed()) {
            return finish(run_manifest_text(single_task_manifest({{"kind", "calculus"},
                                                                  {"function", calc_fn},
                                                                  {"seeds", calc_seeds},
                                                                  {"assert_max_deviation", calc_gate}})
                                                .dump(),
                                            opt));
        }
        if (vf->parsed()) {
            return finish(
                run_manifest_text(single_task_manifest({{"kind", "verify"}, {"suite", suite}}).dump(), opt));
        }
        if (rn->parsed()) return finish(run_manifest_file(manifest_path, opt));
        if (bn->parsed()) return run_bench(opt);
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
