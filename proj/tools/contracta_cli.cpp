// contracta: certification toolkit for uniform d-contraction of smooth
// autonomous ODE systems. Subcommands cover trajectory simulation, finite-time
// exponent sweeps, metric-based certification, metric synthesis, orbital
// stability of periodic solutions, and the classical compound-matrix test.

#include <CLI11.hpp>

#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "contracta/contracta.hpp"

namespace fs = std::filesystem;
using namespace contracta;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitVerdict = 4;

struct BuiltSystem {
    std::string name;
    std::optional<RigidBodyBundle> rigid;
    std::optional<RosslerBundle> rossler;
    std::optional<LangfordBundle> langford;

    const DynamicalSystem& sys() const {
        if (rigid) return rigid->sys;
        if (rossler) return rossler->sys;
        return langford->sys;
    }
};

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw InputError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

double require_number(const json& j, const std::string& key) {
    if (!j.contains(key) || !j[key].is_number())
        throw InputError("config: missing numeric field '" + key + "'");
    return j[key].get<double>();
}

VectorXd vector_from(const json& a, const std::string& what) {
    if (!a.is_array() || a.empty()) throw InputError("config: '" + what + "' must be an array");
    VectorXd v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v[i] = a[i].get<double>();
    return v;
}

BuiltSystem build_system(const json& cfg) {
    if (!cfg.contains("system") || !cfg["system"].contains("name"))
        throw InputError("config: system.name is required");
    BuiltSystem out;
    out.name = cfg["system"]["name"].get<std::string>();
    const json params = cfg["system"].value("params", json::object());
    if (out.name == "rigid-body") {
        RigidBodyParams p{require_number(params, "J1"), require_number(params, "J2"),
                          require_number(params, "J3"), require_number(params, "delta"),
                          params.value("tau", 0.0)};
        out.rigid = rigid_body_system(p);
    } else if (out.name == "rossler") {
        out.rossler = rossler_system({require_number(params, "a"), require_number(params, "b")});
    } else if (out.name == "langford") {
        out.langford = langford_system({require_number(params, "a")});
    } else {
        throw InputError("config: unknown system '" + out.name +
                         "' (builtins: rigid-body, rossler, langford)");
    }
    return out;
}

Region build_region(const json& cfg, const BuiltSystem& system) {
    if (!cfg.contains("region")) throw InputError("config: region is required for this task");
    const json& r = cfg["region"];
    if (r.value("trapping", false)) {
        if (!system.rigid) throw InputError("config: trapping region is rigid-body only");
        const double factor = r.value("betaFactor", 1.05);
        const int per_axis = r.value("perAxis", 9);
        if (system.rigid->betaStar <= 0.0)
            throw InputError("config: trapping region undefined at zero torque");
        return system.rigid->trapping_region(factor * system.rigid->betaStar, per_axis);
    }
    VectorXd lo = vector_from(r.at("lo"), "region.lo");
    VectorXd hi = vector_from(r.at("hi"), "region.hi");
    std::vector<int> counts = r.at("counts").get<std::vector<int>>();
    return Region::box(lo, hi, counts);
}

MetricField build_metric(const json& cfg, const BuiltSystem& system) {
    const json m = cfg.value("metric", json{{"type", "identity"}});
    const std::string type = m.value("type", "identity");
    const int n = system.sys().dim();
    if (type == "identity") return constant_metric(MatrixXd::Identity(n, n));
    if (type == "reference") {
        if (!system.rossler) throw InputError("config: reference metric is rossler only");
        auto ref = rossler_reference_metric();
        return system.rossler->metric(ref.Pstar, ref.tauStar);
    }
    if (type == "family") {
        const VectorXd flat = vector_from(m.at("P0"), "metric.P0");
        if (flat.size() != n * n) throw InputError("config: metric.P0 must have n*n entries");
        MatrixXd P0(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) P0(i, j) = flat[i * n + j];
        const double gamma = m.value("gamma", 0.0);
        if (system.rigid) {
            auto self = *system.rigid;
            return exponential_metric(
                P0, gamma, [self](const VectorXd& w) { return self.W(w); },
                [self](const VectorXd& w) { return self.Wdot(w); });
        }
        if (system.rossler) return system.rossler->metric(P0, gamma);
        return constant_metric(P0);
    }
    throw InputError("config: unknown metric type '" + type + "'");
}

std::vector<double> build_horizons(const json& cfg, double t_max) {
    if (cfg.contains("horizons") && t_max <= 0.0)
        return cfg["horizons"].get<std::vector<double>>();
    std::vector<double> hs;
    const double cap = t_max > 0.0 ? t_max : 16.0;
    for (double t = 1.0; t <= cap * (1.0 + 1e-12); t *= 2.0) hs.push_back(t);
    if (hs.empty() || hs.back() < cap * (1.0 - 1e-12)) hs.push_back(cap);
    return hs;
}

IntegratorOptions build_integrator(const json& cfg) {
    IntegratorOptions opts;
    if (cfg.contains("integrator")) {
        const json& i = cfg["integrator"];
        opts.absTol = i.value("absTol", opts.absTol);
        opts.relTol = i.value("relTol", opts.relTol);
        opts.maxStep = i.value("maxStep", opts.maxStep);
        opts.minStep = i.value("minStep", opts.minStep);
        if (i.value("method", "rk45-adaptive") == std::string("rk4-fixed"))
            opts.method = StepMethod::Rk4Fixed;
        opts.fixedStep = i.value("fixedStep", opts.fixedStep);
    }
    opts.validate();
    return opts;
}

std::string output_stem(const std::string& out) {
    const auto dot = out.find_last_of('.');
    return dot == std::string::npos ? out : out.substr(0, dot);
}

struct TaskOutput {
    json results;
    std::string csv;  // primary CSV payload
    std::vector<std::pair<std::string, std::string>> companions;  // suffix -> content
    std::optional<Verdict> verdict;
};

TaskOutput run_simulate(const json& cfg, const BuiltSystem& system,
                        const IntegratorOptions& opts) {
    const json s = cfg.value("simulate", json::object());
    if (!s.contains("x0")) throw InputError("config: simulate.x0 is required");
    const VectorXd x0 = vector_from(s["x0"], "simulate.x0");
    const double t = s.value("t", 10.0);
    const int samples = s.value("samples", 200);
    const bool variational = s.value("variational", false);

    TaskOutput out;
    std::ostringstream csv;
    if (variational) {
        auto states = variational_trajectory(system.sys(), x0, t, opts, samples);
        write_variational_csv(csv, states);
        out.results["finalState"] = to_json(states.back().x);
        out.results["finalLogScale"] = states.back().logScale;
        out.results["finalLogSingularValues"] = to_json(states.back().log_singular_values());
    } else {
        auto traj = integrate(system.sys(), x0, t, opts, samples);
        write_trajectory_csv(csv, traj);
        out.results["finalState"] = to_json(traj.final_state);
        out.results["steps"] = traj.steps;
        out.results["errorEstimate"] = traj.error_estimate;
    }
    out.results["t"] = t;
    out.results["samples"] = samples;
    out.csv = csv.str();
    return out;
}

TaskOutput run_exponents(const json& cfg, const BuiltSystem& system,
                         const IntegratorOptions& opts, double d_override, double t_max) {
    const int n = system.sys().dim();
    const double d = d_override > 0.0 ? d_override : require_number(cfg, "dim");
    auto dim = FractionalDimension::of(d, n);
    Region region = build_region(cfg, system);
    auto horizons = build_horizons(cfg, t_max);
    auto report = estimate_bold_sigma_d(system.sys(), region, dim, horizons, opts);
    auto cert = first_method_verdict(report, cfg.value("margin", 1e-6));

    TaskOutput out;
    out.results = exponent_report_json(report);
    out.results["certificate"] = certificate_json(cert);
    out.verdict = cert.verdict;
    std::ostringstream csv, curve;
    write_exponents_csv(csv, report);
    out.csv = csv.str();
    write_sigma_curve_csv(curve, report);
    out.companions.emplace_back(".curve.csv", curve.str());
    return out;
}

TaskOutput run_certify(const json& cfg, const BuiltSystem& system, const IntegratorOptions& opts,
                       double d_override) {
    const int n = system.sys().dim();
    const double d = d_override > 0.0 ? d_override : require_number(cfg, "dim");
    auto dim = FractionalDimension::of(d, n);
    Region region = build_region(cfg, system);
    MetricField field = build_metric(cfg, system);
    const double margin = cfg.value("margin", 1e-6);
    auto table = criterion_table(system.sys(), field, region, dim, opts);
    auto cert = certify_second_method(system.sys(), field, region, dim, margin, opts);

    TaskOutput out;
    out.results = certificate_json(cert);
    out.verdict = cert.verdict;
    std::ostringstream csv;
    write_criterion_csv(csv, table);
    out.csv = csv.str();
    return out;
}

TaskOutput run_synthesize(const json& cfg, const BuiltSystem& system, unsigned long seed) {
    const json s = cfg.value("synthesis", json::object());
    const int d0 = s.value("d0", 2);
    SynthesisOptions opts;
    opts.restarts = s.value("restarts", 10);
    opts.seedBase = s.contains("seedBase") ? s["seedBase"].get<unsigned long>() : seed;
    opts.maxEval = s.value("maxEval", 600);
    opts.bisectTol = s.value("bisectTol", 1e-4);
    opts.innerCoarsening = s.value("innerCoarsening", 5);
    Region region = build_region(cfg, system);

    std::function<double(const VectorXd&)> v, vdot;
    if (system.rigid) {
        auto self = *system.rigid;
        v = [self](const VectorXd& w) { return self.W(w); };
        vdot = [self](const VectorXd& w) { return self.Wdot(w); };
    } else if (system.rossler) {
        auto self = *system.rossler;
        v = [self](const VectorXd& u) { return self.v(u); };
        vdot = [self](const VectorXd& u) { return self.vdot(u); };
    } else {
        v = [](const VectorXd&) { return 0.0; };
        vdot = [](const VectorXd&) { return 0.0; };
    }

    SynthesisResult res;
    if (s.contains("sFixed") && !s["sFixed"].is_null())
        res = synthesize_at_s(system.sys(), d0, s["sFixed"].get<double>(), region, v, vdot, opts);
    else
        res = minimize_fractional_s(system.sys(), d0, region, v, vdot, opts);

    TaskOutput out;
    out.results = synthesis_json(d0, res);
    out.verdict = res.feasible ? Verdict::Contractive : Verdict::NotContractive;
    return out;
}

TaskOutput run_floquet(const json& cfg, const BuiltSystem& system, const IntegratorOptions& opts) {
    VectorXd guess;
    double T_guess = 0.0;
    if (cfg.contains("floquet") && cfg["floquet"].contains("guess")) {
        guess = vector_from(cfg["floquet"]["guess"], "floquet.guess");
        T_guess = require_number(cfg["floquet"], "T");
    } else if (system.langford) {
        guess = system.langford->orbit_point(0.0);
        T_guess = system.langford->T;
    } else {
        throw InputError("config: floquet.guess and floquet.T are required for this system");
    }
    auto rep = orbital_stability_report(system.sys(), guess, T_guess, opts);

    TaskOutput out;
    out.results = floquet_json(rep);
    const double tube_radius =
        cfg.value("floquet", json::object()).value("tubeRadius", 0.0);
    if (tube_radius > 0.0 && rep.metric) {
        auto tube_cert = verify_tube_contraction(system.sys(), *rep.metric, tube_radius);
        out.results["tubeCertificate"] = certificate_json(tube_cert);
        out.results["tubeRadius"] = tube_radius;
    }
    out.verdict = rep.verdict == OrbitalVerdict::OrbitallyStable ? Verdict::Contractive
                                                                 : Verdict::NotContractive;
    if (rep.metric) {
        std::ostringstream roots;
        const int n = system.sys().dim();
        roots << "t";
        for (int i = 1; i <= n; ++i) roots << ",lambda" << i;
        roots << "\n";
        const int samples = 64;
        for (int k = 0; k <= samples; ++k) {
            const double t = rep.orbit.T * k / samples;
            auto sm = rep.metric->sample_frame(t);
            auto rt = criterion_roots(sm.A, sm.P, sm.Pdot);
            roots << format_g17(t);
            for (int i = 0; i < rt.lambdas.size(); ++i) roots << "," << format_g17(rt.lambdas[i]);
            roots << "\n";
        }
        out.companions.emplace_back(".roots.csv", roots.str());
    }
    return out;
}

TaskOutput run_kcompound(const json& cfg, const BuiltSystem& system) {
    const int k = cfg.value("kcompound", json::object()).value("k", 2);
    Region region = build_region(cfg, system);
    auto rep = kcompound_check(system.sys(), k, region);
    TaskOutput out;
    out.results = kcompound_json(rep);
    out.verdict = rep.sufficient ? Verdict::Contractive : Verdict::Inconclusive;
    return out;
}

int run_task(json cfg, const std::string& task, double d_override, double t_max,
             const std::string& out_path, unsigned long seed, const std::string& format,
             bool expect_contractive) {
    cfg["task"] = task;
    BuiltSystem system = build_system(cfg);
    IntegratorOptions opts = build_integrator(cfg);

    TaskOutput result;
    if (task == "simulate")
        result = run_simulate(cfg, system, opts);
    else if (task == "exponents")
        result = run_exponents(cfg, system, opts, d_override, t_max);
    else if (task == "certify")
        result = run_certify(cfg, system, opts, d_override);
    else if (task == "synthesize")
        result = run_synthesize(cfg, system, seed);
    else if (task == "floquet")
        result = run_floquet(cfg, system, opts);
    else if (task == "kcompound")
        result = run_kcompound(cfg, system);
    else
        throw InputError("unknown task '" + task + "'");

    Report report;
    report.config = cfg;
    report.task = task;
    report.results = result.results;
    report.seed = seed;
    if (result.results.contains("flags"))
        for (const auto& f : result.results["flags"])
            report.warnings.push_back(f.get<std::string>());

    std::time_t now = std::time(nullptr);
    char stamp[32];
    std::strftime(stamp, sizeof(stamp), "%FT%TZ", std::gmtime(&now));
    const std::string payload = (format == "csv" && !result.csv.empty())
                                    ? result.csv
                                    : report_json(report, stamp).dump(2) + "\n";

    if (out_path.empty()) {
        std::cout << payload;
    } else {
        write_text_file(out_path, payload);
        for (const auto& [suffix, content] : result.companions)
            write_text_file(output_stem(out_path) + suffix, content);
        std::cout << "wrote " << out_path << "\n";
    }

    if (expect_contractive && result.verdict && *result.verdict != Verdict::Contractive)
        return kExitVerdict;
    return kExitOk;
}

json demo_config(const std::string& fixtures_dir, const std::string& name) {
    static const std::map<std::string, std::string> files = {{"rigid-body", "rigid_body.json"},
                                                             {"rossler", "rossler.json"},
                                                             {"langford", "langford.json"}};
    auto it = files.find(name);
    if (it == files.end())
        throw InputError("unknown demo system '" + name +
                         "' (expected rigid-body, rossler, or langford)");
    const fs::path path = fs::path(fixtures_dir) / it->second;
    if (!fs::exists(path)) throw InputError("fixture not found: " + path.string());
    return load_json_file(path.string());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"contracta: uniform d-contraction certification for smooth ODE systems"};
    app.require_subcommand(1);

    std::string config_path, out_path, format = "json", fixtures_dir = "fixtures";
    std::string demo_name, demo_task;
    double d_override = 0.0, t_max = 0.0, a_override = 0.0;
    int grid_override = 0;
    unsigned long seed = 0;
    bool expect_contractive = false;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "run configuration JSON");
        cmd->add_option("--d", d_override, "fractional dimension override");
        cmd->add_option("--t-max", t_max, "largest horizon / simulation span");
        cmd->add_option("--grid", grid_override, "per-axis sample count override");
        cmd->add_option("--out", out_path, "output path (stdout when omitted)");
        cmd->add_option("--seed", seed, "base RNG seed");
        cmd->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--a", a_override, "system parameter a override");
        cmd->add_flag("--expect-contractive", expect_contractive,
                      "exit 4 unless the verdict is CONTRACTIVE");
    };

    const std::vector<std::string> tasks = {"simulate",   "exponents", "certify",
                                            "synthesize", "floquet",   "kcompound"};
    for (const auto& t : tasks) add_common(app.add_subcommand(t, t + " task"));
    auto* demo = app.add_subcommand("demo", "run a packaged benchmark configuration");
    demo->add_option("system", demo_name, "rigid-body | rossler | langford")->required();
    demo->add_option("--task", demo_task, "override the fixture task");
    demo->add_option("--fixtures", fixtures_dir, "fixtures directory");
    add_common(demo);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help();
        return kExitInput;
    }

    try {
        json cfg;
        std::string task;
        if (demo->parsed()) {
            cfg = demo_config(fixtures_dir, demo_name);
            task = demo_task.empty() ? cfg.value("task", "simulate") : demo_task;
        } else {
            if (config_path.empty()) throw InputError("--config is required (or use demo)");
            cfg = load_json_file(config_path);
            task = app.get_subcommands().front()->get_name();
        }
        if (a_override > 0.0 && cfg.contains("system")) cfg["system"]["params"]["a"] = a_override;
        if (grid_override > 0 && cfg.contains("region") && cfg["region"].contains("counts"))
            for (auto& c : cfg["region"]["counts"])
                if (c.get<int>() > 1) c = grid_override;
        if (d_override > 0.0) cfg["dim"] = d_override;
        if (t_max > 0.0) {
            if (cfg.contains("simulate")) cfg["simulate"]["t"] = t_max;
            cfg["horizons"] = build_horizons(json::object(), t_max);
        }
        if (!out_path.empty()) cfg["out"] = out_path;
        cfg["seed"] = seed;
        cfg["format"] = format;

        return run_task(cfg, task, d_override, t_max, out_path, seed, format,
                        expect_contractive);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
