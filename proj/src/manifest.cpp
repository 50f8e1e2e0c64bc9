#include "hlab/manifest.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "hlab/apps.hpp"
#include "hlab/calculus.hpp"
#include "hlab/serialize.hpp"

namespace hlab {

using nlohmann::json;

std::function<cplx(cplx)> named_function(const std::string& spec) {
    if (spec == "one") return [](cplx) { return cplx(1.0); };
    if (spec == "gaussian") return [](cplx z) { return std::exp(-z * z); };
    if (spec == "tanh") return [](cplx z) { return std::tanh(z); };
    if (spec == "gauss-tanh") return [](cplx z) { return std::exp(-z * z) * std::tanh(z); };
    std::stringstream ss(spec);
    std::string head;
    std::getline(ss, head, ':');
    if (head == "resolvent") {
        double re, im;
        char c;
        if (ss >> re >> c >> im) {
            const cplx lambda(re, im);
            return [lambda](cplx z) { return 1.0 / (lambda - z); };
        }
    }
    if (head == "exp-mod") {
        double s0;
        if (ss >> s0) {
            return [s0](cplx z) { return std::exp(cplx(0.0, -s0) * z); };
        }
    }
    throw config_error("unknown function spec: " + spec);
}

namespace {

struct TaskSpec {
    std::string kind;
    json body;
    std::string name;
};

std::string require_string(const json& j, const std::string& key, const std::string& path) {
    if (!j.contains(key) || !j[key].is_string()) {
        throw config_error("manifest field missing or not a string: " + path + "." + key);
    }
    return j[key].get<std::string>();
}

double number_or(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number()) throw config_error("manifest field must be a number: " + key);
    return j[key].get<double>();
}

std::string trend_name(DoublingTrend t) {
    return t == DoublingTrend::bounded ? "bounded" : "diverging";
}

// ---- task bodies ----------------------------------------------------------

TaskOutcome run_weight_check(const TaskSpec& task, const RunOptions&) {
    TaskOutcome out;
    const Weight w = Weight::parse(task.body.at("weight").get<std::string>());
    const double scan = number_or(task.body, "scan_range", kDefaultScanRange);
    const auto samples = static_cast<std::size_t>(number_or(task.body, "samples", kDefaultScanSamples));
    const AdmissibilityReport rep = admissibility_report(w, scan, samples);

    std::ostringstream csv;
    csv << "weight,m_v_estimate,doubling_sup,doubling_trend,growth_exponent,strongly_admissible,inv_v_sq\n";
    csv << w.name() << ',' << format_double(rep.m_v_estimate) << ',' << format_double(rep.doubling_sup)
        << ',' << trend_name(rep.doubling_trend) << ',' << format_double(rep.growth_exponent) << ','
        << (rep.strongly_admissible ? 1 : 0) << ',' << format_double(rep.inv_v_sq_integral) << '\n';
    out.csv_body = csv.str();

    json summary{{"weight", w.name()},
                 {"m_v_estimate", rep.m_v_estimate},
                 {"doubling_sup", rep.doubling_sup},
                 {"trend", trend_name(rep.doubling_trend)},
                 {"growth_exponent", rep.growth_exponent},
                 {"strongly_admissible", rep.strongly_admissible}};
    if (task.body.contains("expect")) {
        const json& e = task.body["expect"];
        if (e.contains("trend") && e["trend"].get<std::string>() != trend_name(rep.doubling_trend)) {
            out.assertions_ok = false;
        }
        if (e.contains("m_v") &&
            std::abs(rep.m_v_estimate - e["m_v"].get<double>()) > number_or(e, "tol", 1e-6)) {
            out.assertions_ok = false;
        }
        if (e.contains("doubling_max") && rep.doubling_sup > e["doubling_max"].get<double>()) {
            out.assertions_ok = false;
        }
    }
    out.summary = "M=" + format_double(rep.m_v_estimate) + " trend=" + trend_name(rep.doubling_trend);
    out.json_summary = summary.dump();
    return out;
}

TaskOutcome run_norm(const TaskSpec& task, const RunOptions& opt) {
    TaskOutcome out;
    const Grid grid(opt.grid_half_width, opt.grid_points);
    const std::string which = require_string(task.body, "norm", task.name);
    const Weight v = Weight::parse(task.body.contains("weight") ? task.body["weight"].get<std::string>()
                                                                : "const");
    const double omega = number_or(task.body, "omega", 0.0);
    const auto fn = named_function(require_string(task.body, "function", task.name));

    double value = 0.0;
    if (which == "sobolev" || which == "algebra") {
        const StripFunctionRep rep =
            StripFunctionRep::from_function(fn, grid, omega, v, task.name);
        value = which == "sobolev" ? sobolev_norm(rep) : fourier_algebra_norm(rep);
    } else if (which == "hardy") {
        const StripFunctionRep rep = StripFunctionRep::from_function(fn, grid, omega, v, task.name);
        value = hardy2_norm(rep, number_or(task.body, "omega_prime", 1.0)).value;
    } else if (which == "hoermander") {
        const Localizer loc = Localizer::gaussian(grid.dual());
        value = hoermander_norm(fn, loc, v, omega, grid, {}).value;
    } else {
        throw config_error("unknown norm kind: " + which);
    }

    std::ostringstream csv;
    csv << "norm,function,weight,omega,value\n";
    csv << which << ',' << task.body["function"].get<std::string>() << ',' << v.name() << ','
        << format_double(omega) << ',' << format_double(value) << '\n';
    out.csv_body = csv.str();
    if (task.body.contains("expect_value")) {
        const double want = task.body["expect_value"].get<double>();
        const double tol = number_or(task.body, "tol", 1e-6);
        if (std::abs(value - want) > tol * std::max(1.0, std::abs(want))) out.assertions_ok = false;
    }
    out.summary = which + "=" + format_double(value);
    out.json_summary = json{{"norm", which}, {"value", value}}.dump();
    return out;
}

TaskOutcome run_calculus(const TaskSpec& task, const RunOptions& opt) {
    TaskOutcome out;
    const auto dim = static_cast<std::size_t>(number_or(task.body, "dim", 6));
    const int seeds = static_cast<int>(number_or(task.body, "seeds", 10));
    const double omega = number_or(task.body, "omega", 0.5);
    const double theta = number_or(task.body, "theta", 1.5);
    const double truncation = number_or(task.body, "truncation", 40.0);
    const std::string fn_spec = require_string(task.body, "function", task.name);
    const auto fn = named_function(fn_spec);

    std::ostringstream csv;
    csv << "seed,method,deviation\n";
    double max_dev = 0.0;
    for (int s = 0; s < seeds; ++s) {
        const std::uint64_t seed = opt.seed + static_cast<std::uint64_t>(s);
        DiagonalizableOperator a =
            DiagonalizableOperator::random_strip(dim, omega, 2.0, seed);
        const double omega_prime = default_contour_height(a, theta);
        const CalculusResult contour = elementary_contour(a, fn, omega_prime, truncation);
        csv << seed << ",contour," << format_double(contour.deviation_from_oracle) << '\n';
        max_dev = std::max(max_dev, contour.deviation_from_oracle);
    }
    out.csv_body = csv.str();
    const double gate = number_or(task.body, "assert_max_deviation", 1e-4);
    out.assertions_ok = max_dev <= gate;
    out.summary = "max_deviation=" + format_double(max_dev);
    out.json_summary = json{{"function", fn_spec}, {"max_deviation", max_dev}}.dump();
    return out;
}

TaskOutcome run_verify(const TaskSpec& task, const RunOptions& opt) {
    TaskOutcome out;
    const std::string suite = require_string(task.body, "suite", task.name);
    const Grid grid(opt.grid_half_width, opt.grid_points);
    std::ostringstream csv;

    if (suite == "plancherel") {
        SampledFunction f = SampledFunction::sample(
            grid, [](double s) { return cplx(std::exp(-s * s / 3.0), 0.0); });
        const SampledFunction fh = fourier_forward(f);
        const double lhs = norm_l2(fh) * norm_l2(fh);
        const double rhs = 2.0 * std::numbers::pi * norm_l2(f) * norm_l2(f);
        const double rel = std::abs(lhs - rhs) / rhs;
        csv << "check,value\nplancherel_rel_defect," << format_double(rel) << '\n';
        out.assertions_ok = rel <= 1e-8;
        out.summary = "plancherel defect " + format_double(rel);
    } else if (suite == "partition") {
        const PartitionOfUnity pou = build_partition(1.0, 1.0);
        double worst = 0.0;
        for (int k = 0; k <= 100; ++k) {
            const double t = -5.0 + 0.1 * k;
            cplx acc(0.0);
            for (int n = -40; n <= 40; ++n) acc += pou.phi(cplx(t - n, 0.0));
            worst = std::max(worst, std::abs(acc - 1.0));
        }
        csv << "check,value\npartition_sum_defect," << format_double(worst) << '\n';
        out.assertions_ok = worst <= 1e-8;
        out.summary = "partition defect " + format_double(worst);
    } else if (suite == "composition") {
        Vec eig(3);
        eig << cplx(1.0, 0.0), cplx(2.0, 0.0), cplx(4.0, 0.0);
        const auto a = DiagonalizableOperator::diagonal(eig, 2.0, OperatorKind::sectorial, 0.0);
        double worst = 0.0;
        for (double s0 : {1.0, 2.0, 5.0}) {
            const CalculusResult r = sector_calculus(
                a, [s0](cplx w) { return std::exp(cplx(0.0, -s0) * std::log(w)); });
            const Mat direct = imaginary_power(a, s0).entries();
            worst = std::max(worst, (r.matrix.entries() - direct).cwiseAbs().maxCoeff());
        }
        csv << "check,value\ncomposition_defect," << format_double(worst) << '\n';
        out.assertions_ok = worst <= 1e-10;
        out.summary = "composition defect " + format_double(worst);
    } else if (suite == "omega-p") {
        const double w2 = omega_p(2.0);
        const double w4 = omega_p(4.0) - std::numbers::pi / 6.0;
        csv << "check,value\nomega_2," << format_double(w2) << "\nomega_4_defect,"
            << format_double(w4) << '\n';
        out.assertions_ok = std::abs(w2) <= 1e-12 && std::abs(w4) <= 1e-12;
        out.summary = "omega_p defects " + format_double(std::abs(w2)) + ", " + format_double(std::abs(w4));
    } else {
        throw config_error("unknown verify suite: " + suite);
    }
    out.csv_body = csv.str();
    out.json_summary = json{{"suite", suite}, {"pass", out.assertions_ok}}.dump();
    return out;
}

TaskOutcome run_app(const TaskSpec& task, const RunOptions& opt) {
    TaskOutcome out;
    const std::string exp = require_string(task.body, "experiment", task.name);
    std::ostringstream csv;
    json summary;

    if (exp == "omega-p") {
        csv << "p,omega_p\n";
        for (double p : {4.0 / 3.0, 1.5, 2.0, 3.0, 4.0, 8.0}) {
            csv << format_double(p) << ',' << format_double(omega_p(p)) << '\n';
        }
        out.summary = "omega_p table";
        summary = {{"experiment", exp}};
    } else if (exp == "cd-growth") {
        const auto n = static_cast<std::size_t>(number_or(task.body, "dim", 6));
        const double p = number_or(task.body, "p", 4.0);
        const int models = static_cast<int>(number_or(task.body, "models", 5));
        const double smax = number_or(task.body, "s_max", 20.0);
        const int scount = static_cast<int>(number_or(task.body, "s_count", 41));
        std::vector<double> sgrid;
        for (int k = 0; k < scount; ++k) {
            sgrid.push_back(-smax + 2.0 * smax * static_cast<double>(k) / (scount - 1));
        }
        csv << "model_seed,fitted_c,passes\n";
        bool all = true;
        for (int msd = 0; msd < models; ++msd) {
            const auto model = ContractionModel::random(n, opt.seed + static_cast<std::uint64_t>(msd));
            const CdGrowthReport rep = cd_growth_check(model, p, sgrid, opt.seed);
            if (rep.degenerate) continue;
            csv << opt.seed + static_cast<std::uint64_t>(msd) << ',' << format_double(rep.fitted_c) << ','
                << (rep.passes ? 1 : 0) << '\n';
            all = all && rep.passes;
        }
        out.assertions_ok = all;
        out.summary = std::string("cd-growth ") + (all ? "passes" : "fails");
        summary = {{"experiment", exp}, {"p", p}, {"passes", all}};
    } else if (exp == "ou-unitarity") {
        const int N = static_cast<int>(number_or(task.body, "truncation", 32));
        const OUModel ou(N);
        csv << "s,norm_l2\n";
        double worst = 0.0;
        for (double s : {0.5, 1.0, 2.0, 5.0, 10.0}) {
            const double nrm = ou.imaginary_power_norm(s, 2.0, opt.seed);
            csv << format_double(s) << ',' << format_double(nrm) << '\n';
            worst = std::max(worst, std::abs(nrm - 1.0));
        }
        out.assertions_ok = worst <= 1e-8;
        out.summary = "OU unitarity defect " + format_double(worst);
        summary = {{"experiment", exp}, {"defect", worst}};
    } else {
        throw config_error("unknown app experiment: " + exp);
    }
    out.csv_body = csv.str();
    out.json_summary = summary.dump();
    return out;
}

TaskOutcome dispatch(const TaskSpec& task, const RunOptions& opt) {
    const auto t0 = std::chrono::steady_clock::now();
    TaskOutcome out;
    try {
        if (task.kind == "weight-check") out = run_weight_check(task, opt);
        else if (task.kind == "norm") out = run_norm(task, opt);
        else if (task.kind == "calculus") out = run_calculus(task, opt);
        else if (task.kind == "verify") out = run_verify(task, opt);
        else if (task.kind == "app") out = run_app(task, opt);
        else throw config_error("unknown task kind: " + task.kind);
    } catch (const config_error& e) {
        out.config_ok = false;
        out.assertions_ok = false;
        out.summary = e.what();
    } catch (const std::exception& e) {
        out.assertions_ok = false;
        out.summary = std::string("error: ") + e.what();
    }
    out.name = task.name;
    out.kind = task.kind;
    out.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

std::vector<TaskSpec> validate_manifest(const json& j, const RunOptions& cli, RunOptions& effective) {
    effective = cli;
    if (!j.is_object()) throw config_error("manifest root must be an object");
    if (!j.contains("version") || !j["version"].is_number_integer()) {
        throw config_error("manifest.version missing or not an integer");
    }
    if (j["version"].get<int>() != 1) throw config_error("manifest.version must be 1");
    if (!j.contains("tasks") || !j["tasks"].is_array()) {
        throw config_error("manifest.tasks missing or not an array");
    }
    if (j["tasks"].empty()) throw config_error("manifest.tasks: no tasks");
    if (j.contains("seed")) effective.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) effective.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("grid")) {
        const json& g = j["grid"];
        effective.grid_half_width = number_or(g, "L", effective.grid_half_width);
        effective.grid_points = static_cast<std::size_t>(number_or(g, "N", static_cast<double>(effective.grid_points)));
    }

    static const std::vector<std::string> kinds{"weight-check", "norm", "calculus", "verify", "app"};
    std::vector<TaskSpec> specs;
    for (std::size_t i = 0; i < j["tasks"].size(); ++i) {
        const json& t = j["tasks"][i];
        const std::string path = "tasks[" + std::to_string(i) + "]";
        if (!t.is_object()) throw config_error(path + " must be an object");
        const std::string kind = require_string(t, "kind", path);
        if (std::find(kinds.begin(), kinds.end(), kind) == kinds.end()) {
            throw config_error(path + ".kind unknown: " + kind);
        }
        specs.push_back(TaskSpec{kind, t, "task_" + std::to_string(i) + "_" + kind});
    }
    return specs;
}

}  // namespace

RunReport run_manifest_text(const std::string& json_text, const RunOptions& cli) {
    RunReport report;
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        report.exit_code = 1;
        report.first_error = std::string("manifest parse error: ") + e.what();
        return report;
    }
    RunOptions opt;
    std::vector<TaskSpec> specs;
    try {
        specs = validate_manifest(j, cli, opt);
    } catch (const config_error& e) {
        report.exit_code = 1;
        report.first_error = e.what();
        return report;
    }

    report.tasks.resize(specs.size());
    const int workers = std::max(1, opt.parallel > 1 ? opt.parallel : cli.parallel);
    if (workers <= 1) {
        for (std::size_t i = 0; i < specs.size(); ++i) report.tasks[i] = dispatch(specs[i], opt);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    const std::size_t i = next.fetch_add(1);
                    if (i >= specs.size()) return;
                    report.tasks[i] = dispatch(specs[i], opt);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(opt.output_dir, ec);
    if (ec) {
        report.exit_code = 1;
        report.first_error = "cannot create output dir: " + opt.output_dir;
        return report;
    }
    std::ofstream log(fs::path(opt.output_dir) / "run_log.jsonl");
    for (const TaskOutcome& t : report.tasks) {
        if (!t.csv_body.empty()) {
            std::ofstream csv(fs::path(opt.output_dir) / (t.name + ".csv"));
            csv << t.csv_body;
        }
        if (!t.json_summary.empty()) {
            std::ofstream js(fs::path(opt.output_dir) / (t.name + ".json"));
            js << t.json_summary << '\n';
        }
        json line{{"task", t.name},
                  {"kind", t.kind},
                  {"status", !t.config_ok ? "config_error" : (t.assertions_ok ? "pass" : "fail")},
                  {"elapsed_ms", t.elapsed_ms},
                  {"summary", t.summary}};
        log << line.dump() << '\n';
        if (!t.config_ok) {
            report.exit_code = std::max(report.exit_code, 1);
            if (report.first_error.empty()) report.first_error = t.summary;
        } else if (!t.assertions_ok) {
            report.exit_code = std::max(report.exit_code, 2);
        }
    }
    // config errors dominate assertion failures only when nothing else ran
    const bool any_config = std::any_of(report.tasks.begin(), report.tasks.end(),
                                        [](const TaskOutcome& t) { return !t.config_ok; });
    const bool any_assert = std::any_of(report.tasks.begin(), report.tasks.end(),
                                        [](const TaskOutcome& t) { return t.config_ok && !t.assertions_ok; });
    report.exit_code = any_config ? 1 : (any_assert ? 2 : 0);
    return report;
}

RunReport run_manifest_file(const std::string& path, const RunOptions& cli) {
    std::ifstream is(path);
    if (!is) {
        RunReport r;
        r.exit_code = 1;
        r.first_error = "cannot read manifest: " + path;
        return r;
    }
    std::stringstream ss;
    ss << is.rdbuf();
    return run_manifest_text(ss.str(), cli);
}

}  // namespace hlab
