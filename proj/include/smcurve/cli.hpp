#ifndef SMCURVE_CLI_HPP
#define SMCURVE_CLI_HPP

#include <CLI11.hpp>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "smcurve/io.hpp"

namespace smcurve::cli {

// Subcommand configs. Every numeric field is validated against the owning
// module's preconditions before any computation starts; validate() returns
// the full list of violations.

struct CurveConfig {
    std::string model = "ising-exact";
    std::string table;  // CSV path for the tabulated model
    std::string method = "crossing";
    std::string alpha = "0.5:6:0.05";
    double tol = 1e-10;
    double jump_threshold = 0.05;
    std::string out = "curve.csv";

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        for (const char* m : {"continuous-exact", "continuous-bound-one", "ising-exact",
                              "ising-small-eps", "tabulated"})
            if (model == m) goto model_ok;
        v.push_back("model: unknown entropy model '" + model + "'");
    model_ok:
        if (model == "tabulated" && table.empty())
            v.push_back("table: tabulated model needs --table");
        if (method != "crossing" && method != "annealed-max")
            v.push_back("method: must be crossing or annealed-max");
        if (!(tol > 0.0)) v.push_back("tol: must be positive");
        if (!(jump_threshold > 0.0)) v.push_back("jump-threshold: must be positive");
        try {
            auto g = parse_grid(alpha);
            if (g.empty()) v.push_back("alpha: grid is empty");
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (!(g[i] > 0.0)) {
                    v.push_back("alpha: grid values must be positive");
                    break;
                }
                if (i > 0 && !(g[i] > g[i - 1])) {
                    v.push_back("alpha: grid must increase");
                    break;
                }
            }
        } catch (const std::exception& e) {
            v.push_back(std::string("alpha: ") + e.what());
        }
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }

    EntropyModel make_model() const {
        if (model == "continuous-exact") return EntropyModel::continuous_exact();
        if (model == "continuous-bound-one") return EntropyModel::continuous_bound_one();
        if (model == "ising-exact") return EntropyModel::ising_exact();
        if (model == "ising-small-eps") return EntropyModel::ising_small_eps();
        return EntropyModel::from_csv(table);
    }
};

struct PhaseConfig {
    int n = 12;
    std::string alpha = "0.5:6:0.25";
    std::string tau = "0:2:0.1";
    long trials = 50;
    long sweeps = 400;
    long burn_in = 200;
    std::uint64_t seed = 1;
    double threshold = 0.25;
    int threads = 0;
    std::string space = "ising";
    std::string out = "phase.csv";
    std::string json;  // optional JSON envelope path

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        if (n < 1) v.push_back("n: must be positive");
        if (trials < 1) v.push_back("trials: must be positive");
        if (sweeps < 1) v.push_back("sweeps: must be positive");
        if (burn_in < 0 || burn_in >= sweeps) v.push_back("burn-in: need sweeps > burn_in >= 0");
        if (!(threshold > 0.0 && threshold < 1.0)) v.push_back("threshold: must lie in (0,1)");
        if (space != "ising" && space != "sphere") v.push_back("space: must be ising or sphere");
        for (const char* name : {"alpha", "tau"}) {
            const std::string& text = name == std::string("alpha") ? alpha : tau;
            try {
                auto g = parse_grid(text);
                if (g.empty()) v.push_back(std::string(name) + ": grid is empty");
                for (std::size_t i = 0; i < g.size(); ++i) {
                    if (g[i] < 0.0) {
                        v.push_back(std::string(name) + ": values must be nonnegative");
                        break;
                    }
                    if (i > 0 && !(g[i] > g[i - 1])) {
                        v.push_back(std::string(name) + ": grid must increase");
                        break;
                    }
                }
            } catch (const std::exception& e) {
                v.push_back(std::string(name) + ": " + e.what());
            }
        }
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }
};

struct SimulateConfig {
    int n = 12;
    std::string alpha = "0.5:6:0.5";
    std::string space = "ising";
    std::string sampler = "exact";
    long trials = 100;
    double tau = 0.05;
    long sweeps = 400;
    long burn_in = 200;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out = "curve_empirical.csv";

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        if (n < 1) v.push_back("n: must be positive");
        if (trials < 1) v.push_back("trials: must be positive");
        if (space != "ising" && space != "sphere") v.push_back("space: must be ising or sphere");
        if (sampler != "exact" && sampler != "metropolis")
            v.push_back("sampler: must be exact or metropolis");
        if (sampler == "exact" && (space != "ising" || n > kEnumerationCap))
            v.push_back("sampler: exact needs ising weights with n <= 24");
        if (tau < 0.0) v.push_back("tau: must be nonnegative");
        if (sweeps < 1) v.push_back("sweeps: must be positive");
        if (burn_in < 0 || burn_in >= sweeps) v.push_back("burn-in: need sweeps > burn_in >= 0");
        try {
            auto g = parse_grid(alpha);
            if (g.empty()) v.push_back("alpha: grid is empty");
            for (std::size_t i = 0; i < g.size(); ++i) {
                if (g[i] < 0.0) {
                    v.push_back("alpha: values must be nonnegative");
                    break;
                }
                if (i > 0 && !(g[i] > g[i - 1])) {
                    v.push_back("alpha: grid must increase");
                    break;
                }
            }
        } catch (const std::exception& e) {
            v.push_back(std::string("alpha: ") + e.what());
        }
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }
};

struct BoundsConfig {
    int n = 0;             // enumerate the Ising spectrum at this n, or
    std::string spectrum;  // load a spectrum CSV
    long m = 50;
    double delta = 0.05;
    double delta_gap = 0.0;  // adds Hoeffding/uniform reports when positive
    std::string out = "bounds.json";
    std::string spectrum_out;
    int vc_dim = 0;
    std::string m_grid = "10:200:10";
    std::string vc_out;

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        if (n <= 0 && spectrum.empty())
            v.push_back("n/spectrum: need --n (enumerate) or --spectrum (CSV)");
        if (n > 0 && !spectrum.empty())
            v.push_back("n/spectrum: give only one of --n and --spectrum");
        if (n > kEnumerationCap) v.push_back("n: enumeration capped at n <= 24");
        if (m < 1) v.push_back("m: must be positive");
        if (!(delta > 0.0 && delta < 1.0)) v.push_back("delta: must lie in (0,1)");
        if (delta_gap < 0.0) v.push_back("delta-gap: must be nonnegative");
        if (vc_dim < 0) v.push_back("vc-dim: must be nonnegative");
        if (vc_dim > 0 && vc_out.empty()) v.push_back("vc-out: needed with --vc-dim");
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }
};

struct RegpathConfig {
    std::string matrix;
    std::string rhs;
    std::string test_matrix;
    std::string test_rhs;
    std::string knob = "lambda";
    std::string values = "0.01:1:0.05";
    std::string out = "regpath.csv";

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        if (matrix.empty()) v.push_back("matrix: input matrix CSV required");
        if (rhs.empty()) v.push_back("rhs: right-hand-side CSV required");
        if (test_matrix.empty() != test_rhs.empty())
            v.push_back("test-matrix/test-rhs: give both or neither");
        if (knob != "lambda" && knob != "rank") v.push_back("knob: must be lambda or rank");
        try {
            auto g = parse_grid(values);
            if (g.empty()) v.push_back("values: empty");
        } catch (const std::exception& e) {
            v.push_back(std::string("values: ") + e.what());
        }
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }
};

struct TrajectoryConfig {
    int n = 12;
    long m = 60;
    double noise = 0.4;
    long t_pre = 400;
    long t_post = 40;
    long trials = 200;
    std::uint64_t seed = 1;
    double temp_scale = 1.0;
    double train_tau = 0.0;
    int threads = 0;
    std::string out = "trajectory.json";

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        if (n < 1) v.push_back("n: must be positive");
        if (m < 1) v.push_back("m: must be positive");
        if (!(noise > 0.0 && noise < 1.0)) v.push_back("noise: must lie in (0,1)");
        if (t_pre < 1) v.push_back("t-pre: must be positive");
        if (t_post < 1) v.push_back("t-post: must be positive");
        if (trials < 1) v.push_back("trials: must be positive");
        if (!(temp_scale > 0.0)) v.push_back("temp-scale: must be positive");
        if (train_tau < 0.0) v.push_back("train-tau: must be nonnegative");
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }
};

struct MultilayerConfig {
    std::string arch = "parity";
    int n = 12;
    int k = 2;
    double gamma = 1.0;
    std::string alpha = "0.5:6:0.5";
    long trials = 50;
    long test_samples = 10000;
    double tau = 0.0;
    long sweeps = 200;
    long burn_in = 0;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out = "multilayer.csv";

    std::vector<std::string> validate() const {
        std::vector<std::string> v;
        if (arch != "committee" && arch != "parity" && arch != "wedge")
            v.push_back("arch: must be committee, parity or wedge");
        if (n < 1) v.push_back("n: must be positive");
        if (k < 1) v.push_back("k: must be positive");
        if (arch == "parity" && n % k != 0) v.push_back("k: parity tree needs K dividing N");
        if (gamma < 0.0) v.push_back("gamma: must be nonnegative");
        if (trials < 1) v.push_back("trials: must be positive");
        if (test_samples < 10000)
            v.push_back("test-samples: at least 10000 for a usable estimate");
        if (tau < 0.0) v.push_back("tau: must be nonnegative");
        if (sweeps < 1) v.push_back("sweeps: must be positive");
        if (burn_in < 0 || burn_in >= sweeps) v.push_back("burn-in: need sweeps > burn_in >= 0");
        try {
            auto g = parse_grid(alpha);
            if (g.empty()) v.push_back("alpha: grid is empty");
        } catch (const std::exception& e) {
            v.push_back(std::string("alpha: ") + e.what());
        }
        if (out.empty()) v.push_back("out: output path required");
        return v;
    }

    Architecture architecture() const {
        if (arch == "committee") return Architecture::Committee;
        if (arch == "parity") return Architecture::Parity;
        return Architecture::ReversedWedge;
    }
};

// ---------------------------------------------------------------------------
// Runners
// ---------------------------------------------------------------------------

namespace detail {

inline int report_violations(const std::vector<std::string>& violations) {
    for (const auto& v : violations) std::cerr << "config error: " << v << "\n";
    return 2;
}

inline WeightSpace parse_space(const std::string& s) {
    return s == "sphere" ? WeightSpace::Sphere : WeightSpace::IsingHypercube;
}

}  // namespace detail

inline int run_curve(const CurveConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    auto model = cfg.make_model();
    auto alphas = parse_grid(cfg.alpha);
    auto method =
        cfg.method == "crossing" ? CurveMethod::RightmostCrossing : CurveMethod::AnnealedMax;
    auto curve = learning_curve(model, method, alphas, cfg.tol, cfg.jump_threshold);
    Provenance prov{{"subcommand", "curve"},       {"model", cfg.model},
                    {"method", cfg.method},        {"alpha", cfg.alpha},
                    {"tol", fmt(cfg.tol)},         {"jump_threshold", fmt(cfg.jump_threshold)}};
    atomic_write(cfg.out, learning_curve_csv(curve, prov));
    std::cout << "curve: " << curve.points.size() << " points, " << curve.jumps.size()
              << " jump(s), " << curve.gaps.size() << " gap(s) -> " << cfg.out << "\n";
    return 0;
}

inline int run_phase(const PhaseConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    GibbsConfig gc;
    gc.sweeps = cfg.sweeps;
    gc.burn_in = cfg.burn_in;
    gc.seed = cfg.seed;
    auto map = phase_map(cfg.n, parse_grid(cfg.alpha), parse_grid(cfg.tau),
                         detail::parse_space(cfg.space), gc, cfg.trials, cfg.threshold,
                         cfg.threads);
    Provenance prov{{"subcommand", "phase"},    {"n", std::to_string(cfg.n)},
                    {"alpha", cfg.alpha},       {"tau", cfg.tau},
                    {"trials", std::to_string(cfg.trials)},
                    {"sweeps", std::to_string(cfg.sweeps)},
                    {"burn_in", std::to_string(cfg.burn_in)},
                    {"seed", std::to_string(cfg.seed)},
                    {"threshold", fmt(cfg.threshold)},
                    {"space", cfg.space}};
    atomic_write(cfg.out, phase_map_csv(map, prov));
    if (!cfg.json.empty()) atomic_write(cfg.json, phase_map_json(map, prov));
    std::cout << "phase: " << map.alphas.size() << "x" << map.taus.size() << " cells -> "
              << cfg.out << (cfg.json.empty() ? "" : " + " + cfg.json) << "\n";
    return 0;
}

inline int run_simulate(const SimulateConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    GibbsConfig gc;
    gc.tau = cfg.tau;
    gc.sweeps = cfg.sweeps;
    gc.burn_in = cfg.burn_in;
    gc.seed = cfg.seed;
    auto sampler = cfg.sampler == "exact" ? SamplerKind::ExactEnumeration : SamplerKind::Metropolis;
    auto curve = empirical_learning_curve(cfg.n, parse_grid(cfg.alpha),
                                          detail::parse_space(cfg.space), sampler, gc, cfg.trials,
                                          cfg.threads);
    Provenance prov{{"subcommand", "simulate"}, {"n", std::to_string(cfg.n)},
                    {"alpha", cfg.alpha},       {"space", cfg.space},
                    {"sampler", cfg.sampler},   {"trials", std::to_string(cfg.trials)},
                    {"tau", fmt(cfg.tau)},      {"sweeps", std::to_string(cfg.sweeps)},
                    {"burn_in", std::to_string(cfg.burn_in)}, {"seed", std::to_string(cfg.seed)}};
    atomic_write(cfg.out, empirical_curve_csv(curve, prov));
    std::cout << "simulate: " << curve.size() << " alphas x " << cfg.trials << " trials -> "
              << cfg.out << "\n";
    return 0;
}

inline int run_bounds(const BoundsConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    ErrorSpectrum spec =
        cfg.n > 0 ? exact_ising_spectrum(cfg.n) : spectrum_from_csv(cfg.spectrum);
    PacParams params{cfg.delta, cfg.m};
    auto refined = refined_spectrum_bound(spec, params);
    double pac = pac_consistent_error_bound(spec.total(), params);

    nlohmann::json j;
    j["smcurve_version"] = kVersion;
    j["config"] = {{"n", cfg.n},        {"spectrum", cfg.spectrum}, {"m", cfg.m},
                   {"delta", cfg.delta}, {"delta_gap", cfg.delta_gap},
                   {"class_size", spec.total()}};
    j["reports"] = nlohmann::json::array();
    j["reports"].push_back(bound_report_json(refined));
    j["reports"].push_back(
        bound_report_json({pac, pac >= 1.0, "pac-consistent"}));
    if (cfg.delta_gap > 0.0) {
        double h = hoeffding_bound(cfg.m, cfg.delta_gap);
        double u = uniform_bound(spec.total(), cfg.m, cfg.delta_gap);
        j["reports"].push_back(bound_report_json({h, h >= 1.0, "hoeffding"}));
        j["reports"].push_back(bound_report_json({u, u >= 1.0, "uniform"}));
    }
    atomic_write(cfg.out, j.dump(2) + "\n");

    Provenance prov{{"subcommand", "bounds"}, {"m", std::to_string(cfg.m)},
                    {"delta", fmt(cfg.delta)}};
    if (!cfg.spectrum_out.empty()) atomic_write(cfg.spectrum_out, spectrum_csv(spec, prov));
    if (cfg.vc_dim > 0) {
        auto ms = parse_grid(cfg.m_grid);
        std::ostringstream both;
        both << rate_curve_csv(vc_rate_curve(cfg.vc_dim, ms, true), prov);
        auto un = vc_rate_curve(cfg.vc_dim, ms, false);
        for (const auto& [m, r] : un.points)
            both << fmt(m) << ',' << fmt(r) << ',' << un.label << "\n";
        atomic_write(cfg.vc_out, both.str());
    }
    std::cout << "bounds: refined=" << fmt(refined.bound) << (refined.vacuous ? " (vacuous)" : "")
              << " pac=" << fmt(pac) << " -> " << cfg.out << "\n";
    return 0;
}

inline int run_regpath(const RegpathConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    LeastSquaresProblem prob;
    prob.a = load_matrix_csv(cfg.matrix);
    prob.b = load_vector_csv(cfg.rhs);
    if (!cfg.test_matrix.empty())
        prob.split = {load_matrix_csv(cfg.test_matrix), load_vector_csv(cfg.test_rhs)};
    auto knob = cfg.knob == "lambda" ? RegKnob::Lambda : RegKnob::RankK;
    auto path = regularization_path(prob, knob, parse_grid(cfg.values));
    Provenance prov{{"subcommand", "regpath"}, {"matrix", cfg.matrix},  {"rhs", cfg.rhs},
                    {"knob", cfg.knob},        {"values", cfg.values}};
    atomic_write(cfg.out, regularization_path_csv(path, prov));
    std::cout << "regpath: " << path.knob_values.size() << " " << cfg.knob << " values -> "
              << cfg.out << "\n";
    return 0;
}

inline int run_trajectory(const TrajectoryConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    auto rep = trajectory_experiment(cfg.n, cfg.m, cfg.noise, cfg.t_pre, cfg.t_post, cfg.trials,
                                     cfg.seed, cfg.temp_scale, cfg.train_tau, cfg.threads);
    Provenance prov{{"subcommand", "trajectory"},
                    {"t_pre", std::to_string(cfg.t_pre)},
                    {"t_post", std::to_string(cfg.t_post)},
                    {"temp_scale", fmt(cfg.temp_scale)},
                    {"threads", std::to_string(cfg.threads)}};
    atomic_write(cfg.out, trajectory_json(rep, prov));
    std::cout << "trajectory: gen A=" << fmt(rep.a.mean_gen_error)
              << " B=" << fmt(rep.b.mean_gen_error) << " C=" << fmt(rep.c.mean_gen_error)
              << " -> " << cfg.out << "\n";
    return 0;
}

inline int run_multilayer(const MultilayerConfig& cfg) {
    if (auto v = cfg.validate(); !v.empty()) return detail::report_violations(v);
    GibbsConfig gc;
    gc.tau = cfg.tau;
    gc.sweeps = cfg.sweeps;
    gc.burn_in = cfg.burn_in;
    gc.seed = cfg.seed;
    auto curve =
        empirical_multilayer_curve(cfg.architecture(), cfg.n, cfg.k, cfg.gamma,
                                   parse_grid(cfg.alpha), gc, cfg.trials, cfg.test_samples,
                                   cfg.threads);
    Provenance prov{{"subcommand", "multilayer"}, {"arch", cfg.arch},
                    {"n", std::to_string(cfg.n)},  {"k", std::to_string(cfg.k)},
                    {"gamma", fmt(cfg.gamma)},     {"alpha", cfg.alpha},
                    {"trials", std::to_string(cfg.trials)},
                    {"test_samples", std::to_string(cfg.test_samples)},
                    {"tau", fmt(cfg.tau)},         {"sweeps", std::to_string(cfg.sweeps)},
                    {"burn_in", std::to_string(cfg.burn_in)}, {"seed", std::to_string(cfg.seed)}};
    atomic_write(cfg.out, multilayer_curve_csv(curve, prov));
    std::cout << "multilayer(" << cfg.arch << "): " << curve.size() << " alphas x " << cfg.trials
              << " trials -> " << cfg.out << "\n";
    return 0;
}

// ---------------------------------------------------------------------------
// Entry point: parse, validate, dispatch. Exit 0 on success, 2 on validation
// errors (including unknown flags/subcommands), 1 on runtime errors.
// ---------------------------------------------------------------------------

inline int run(int argc, const char* const* argv) {
    CLI::App app{"smcurve: statistical-mechanics learning curves, phase maps and bounds for "
                 "teacher-student perceptrons"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from an INI-style config file (flat key = value entries under "
                   "one [section] per subcommand); command-line flags override the file");
    app.footer("Grids use lo:hi:step (inclusive of lo; values v = lo + k*step are kept while "
               "v < hi + step/2, so hi itself is included when it lies on the grid) or an "
               "explicit comma-separated list v1,v2,...");

    CurveConfig curve;
    auto* c = app.add_subcommand("curve", "Analytic learning curve from the entropy-energy "
                                          "competition");
    c->fallthrough();
    c->add_option("--model", curve.model,
                  "Entropy model: continuous-exact|continuous-bound-one|ising-exact|"
                  "ising-small-eps|tabulated");
    c->add_option("--table", curve.table, "Two-column CSV (eps,s) for --model tabulated");
    c->add_option("--method", curve.method, "crossing | annealed-max");
    c->add_option("--alpha", curve.alpha, "Load grid lo:hi:step");
    c->add_option("--tol", curve.tol, "Solver tolerance");
    c->add_option("--jump-threshold", curve.jump_threshold, "Discontinuity annotation threshold");
    c->add_option("--out", curve.out, "Output CSV (alpha,eps,method,jump_flag)");

    PhaseConfig phase;
    auto* p = app.add_subcommand("phase", "Empirical (alpha, tau) phase map from Gibbs "
                                          "simulation");
    p->fallthrough();
    p->add_option("--n", phase.n, "Input dimension / weight count");
    p->add_option("--alpha", phase.alpha, "Load grid lo:hi:step");
    p->add_option("--tau", phase.tau, "Temperature grid lo:hi:step");
    p->add_option("--trials", phase.trials, "Fresh instances per cell");
    p->add_option("--sweeps", phase.sweeps, "Metropolis sweeps per chain");
    p->add_option("--burn-in", phase.burn_in, "Annealed burn-in sweeps (excluded from averages)");
    p->add_option("--seed", phase.seed, "Master seed");
    p->add_option("--threshold", phase.threshold, "good/poor label threshold on mean eps");
    p->add_option("--threads", phase.threads, "Thread budget (0 = all cores)")
        ->envname("SMCURVE_THREADS");
    p->add_option("--space", phase.space, "ising | sphere");
    p->add_option("--out", phase.out, "Output CSV");
    p->add_option("--json", phase.json, "Optional JSON envelope with provenance");

    SimulateConfig sim;
    auto* s = app.add_subcommand("simulate", "Empirical teacher-student learning curve");
    s->fallthrough();
    s->add_option("--n", sim.n, "Input dimension / weight count");
    s->add_option("--alpha", sim.alpha, "Load grid lo:hi:step");
    s->add_option("--space", sim.space, "ising | sphere");
    s->add_option("--sampler", sim.sampler,
                  "exact (version-space enumeration, ising n <= 24) | metropolis");
    s->add_option("--trials", sim.trials, "Fresh instances per alpha");
    s->add_option("--tau", sim.tau, "Metropolis temperature");
    s->add_option("--sweeps", sim.sweeps, "Metropolis sweeps per chain");
    s->add_option("--burn-in", sim.burn_in, "Annealed burn-in sweeps");
    s->add_option("--seed", sim.seed, "Master seed");
    s->add_option("--threads", sim.threads, "Thread budget (0 = all cores)")
        ->envname("SMCURVE_THREADS");
    s->add_option("--out", sim.out, "Output CSV");

    BoundsConfig bounds;
    auto* b = app.add_subcommand("bounds", "PAC / finite-class generalization bounds");
    b->fallthrough();
    b->add_option("--n", bounds.n, "Enumerate the Ising spectrum at this n (<= 24)");
    b->add_option("--spectrum", bounds.spectrum, "Load a spectrum CSV (eps,count) instead");
    b->add_option("--m", bounds.m, "Sample size");
    b->add_option("--delta", bounds.delta, "Failure probability");
    b->add_option("--delta-gap", bounds.delta_gap,
                  "Accuracy gap; adds Hoeffding and uniform reports when positive");
    b->add_option("--out", bounds.out, "Output JSON report");
    b->add_option("--spectrum-out", bounds.spectrum_out, "Optional spectrum CSV dump");
    b->add_option("--vc-dim", bounds.vc_dim, "Also emit VC rate-shape curves for this dimension");
    b->add_option("--m-grid", bounds.m_grid, "m grid for the VC curves");
    b->add_option("--vc-out", bounds.vc_out, "Output CSV for the VC curves");

    RegpathConfig reg;
    auto* r = app.add_subcommand("regpath", "Ridge / TSVD regularization path");
    r->fallthrough();
    r->add_option("--matrix", reg.matrix, "Design matrix CSV");
    r->add_option("--rhs", reg.rhs, "Right-hand side CSV");
    r->add_option("--test-matrix", reg.test_matrix, "Held-out design matrix CSV");
    r->add_option("--test-rhs", reg.test_rhs, "Held-out right-hand side CSV");
    r->add_option("--knob", reg.knob, "lambda | rank");
    r->add_option("--values", reg.values, "Knob grid lo:hi:step or comma list");
    r->add_option("--out", reg.out, "Output CSV (knob,norm,train_resid,test_resid)");

    TrajectoryConfig traj;
    auto* t = app.add_subcommand("trajectory", "Noise / early-stopping A->B->C trajectory experiment");
    t->fallthrough();
    t->add_option("--n", traj.n, "Student weight count");
    t->add_option("--m", traj.m, "Training set size");
    t->add_option("--noise", traj.noise, "Label randomization fraction in (0,1)");
    t->add_option("--t-pre", traj.t_pre, "Sweeps for points A and B");
    t->add_option("--t-post", traj.t_post, "Sweeps for point C (early-stopped or extended)");
    t->add_option("--trials", traj.trials, "Independent repetitions");
    t->add_option("--seed", traj.seed, "Master seed");
    t->add_option("--temp-scale", traj.temp_scale, "c in tau = c / t_star");
    t->add_option("--train-tau", traj.train_tau, "Metropolis temperature of the training chains");
    t->add_option("--threads", traj.threads, "Thread budget (0 = all cores)")
        ->envname("SMCURVE_THREADS");
    t->add_option("--out", traj.out, "Output JSON report");

    MultilayerConfig ml;
    auto* ms = app.add_subcommand("multilayer", "Empirical curves for committee / parity / "
                                                "reversed-wedge machines");
    ms->fallthrough();
    ms->add_option("--arch", ml.arch, "committee | parity | wedge");
    ms->add_option("--n", ml.n, "Input dimension");
    ms->add_option("--k", ml.k, "Hidden units (committee/parity)");
    ms->add_option("--gamma", ml.gamma, "Wedge width (wedge)");
    ms->add_option("--alpha", ml.alpha, "Load grid lo:hi:step");
    ms->add_option("--trials", ml.trials, "Fresh instances per alpha");
    ms->add_option("--test-samples", ml.test_samples, "Monte Carlo test inputs (>= 10000)");
    ms->add_option("--tau", ml.tau, "Metropolis temperature");
    ms->add_option("--sweeps", ml.sweeps, "Metropolis sweeps per chain");
    ms->add_option("--burn-in", ml.burn_in, "Annealed burn-in sweeps");
    ms->add_option("--seed", ml.seed, "Master seed");
    ms->add_option("--threads", ml.threads, "Thread budget (0 = all cores)")
        ->envname("SMCURVE_THREADS");
    ms->add_option("--out", ml.out, "Output CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and usage pointer
        return 2;
    }

    try {
        if (app.got_subcommand(c)) return run_curve(curve);
        if (app.got_subcommand(p)) return run_phase(phase);
        if (app.got_subcommand(s)) return run_simulate(sim);
        if (app.got_subcommand(b)) return run_bounds(bounds);
        if (app.got_subcommand(r)) return run_regpath(reg);
        if (app.got_subcommand(t)) return run_trajectory(traj);
        if (app.got_subcommand(ms)) return run_multilayer(ml);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cerr << "error: no subcommand given\n";
    return 2;
}

}  // namespace smcurve::cli

#endif
