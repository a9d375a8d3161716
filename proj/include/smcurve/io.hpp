#ifndef SMCURVE_IO_HPP
#define SMCURVE_IO_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "smcurve/bounds.hpp"
#include "smcurve/gibbs.hpp"
#include "smcurve/linreg.hpp"
#include "smcurve/multilayer.hpp"
#include "smcurve/solvers.hpp"
#include "smcurve/controls.hpp"

namespace smcurve {

inline constexpr const char* kVersion = "0.1.0";

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

using Provenance = std::map<std::string, std::string>;

inline std::string provenance_header(const Provenance& prov) {
    std::ostringstream out;
    out << "# smcurve " << kVersion << "\n";
    for (const auto& [k, v] : prov) out << "# " << k << ": " << v << "\n";
    return out.str();
}

// Write-to-temp-then-rename so an interrupted run never leaves a partial file
// at the declared path.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty() && !fs::exists(dir))
        throw std::runtime_error("output directory does not exist: " + dir.string());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open output file: " + tmp.string());
        out << content;
        if (!out) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

// ---------------------------------------------------------------------------
// CSV serializers (UTF-8, comma-delimited, '#' header comments)
// ---------------------------------------------------------------------------

inline std::string learning_curve_csv(const LearningCurve& curve, const Provenance& prov) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "alpha,eps,method,jump_flag\n";
    for (const auto& p : curve.points)
        out << fmt(p.alpha) << ',' << fmt(p.eps) << ',' << curve_method_name(curve.method) << ','
            << (p.after_jump ? 1 : 0) << "\n";
    return out.str();
}

inline std::string empirical_curve_csv(const std::vector<EmpiricalCurvePoint>& points,
                                       const Provenance& prov,
                                       const std::string& architecture = "") {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "alpha,m,mean_eps,stderr,trials,low_trials";
    if (!architecture.empty()) out << ",architecture";
    out << "\n";
    for (const auto& p : points) {
        out << fmt(p.alpha) << ',' << p.m << ',' << fmt(p.mean_eps) << ',' << fmt(p.stderr_eps)
            << ',' << p.trials << ',' << (p.low_trials ? 1 : 0);
        if (!architecture.empty()) out << ',' << architecture;
        out << "\n";
    }
    return out.str();
}

inline std::string multilayer_curve_csv(const std::vector<MultilayerCurvePoint>& points,
                                        const Provenance& prov) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "alpha,m,mean_eps,stderr,trials,architecture\n";
    for (const auto& p : points)
        out << fmt(p.alpha) << ',' << p.m << ',' << fmt(p.mean_eps) << ',' << fmt(p.stderr_eps)
            << ',' << p.trials << ',' << architecture_name(p.arch) << "\n";
    return out.str();
}

inline std::string phase_map_csv(const PhaseMap& map, const Provenance& prov) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "alpha,tau,mean_eps,mean_train_err,phase_label\n";
    for (const auto& c : map.cells)
        out << fmt(c.alpha) << ',' << fmt(c.tau) << ',' << fmt(c.mean_eps) << ','
            << fmt(c.mean_train_err) << ',' << (c.good ? "good" : "poor") << "\n";
    return out.str();
}

inline std::string phase_map_json(const PhaseMap& map, const Provenance& prov) {
    nlohmann::json j;
    j["smcurve_version"] = kVersion;
    for (const auto& [k, v] : prov) j["config"][k] = v;
    j["config"]["n"] = map.n;
    j["config"]["trials"] = map.trials;
    j["config"]["seed"] = map.seed;
    j["config"]["sweeps"] = map.sweeps;
    j["config"]["burn_in"] = map.burn_in;
    j["config"]["threshold"] = map.threshold;
    j["cells"] = nlohmann::json::array();
    for (const auto& c : map.cells)
        j["cells"].push_back({{"alpha", c.alpha},
                              {"tau", c.tau},
                              {"m", c.m},
                              {"mean_eps", c.mean_eps},
                              {"stderr", c.stderr_eps},
                              {"mean_train_err", c.mean_train_err},
                              {"phase_label", c.good ? "good" : "poor"}});
    return j.dump(2) + "\n";
}

inline std::string spectrum_csv(const ErrorSpectrum& spectrum, const Provenance& prov) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "eps,count\n";
    for (const auto& l : spectrum.levels) out << fmt(l.eps) << ',' << l.count << "\n";
    return out.str();
}

inline ErrorSpectrum spectrum_from_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open spectrum: " + path);
    ErrorSpectrum spectrum;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        double eps;
        std::uint64_t count;
        if (ss >> eps >> count) spectrum.levels.push_back({eps, count});
    }
    spectrum.validate();
    return spectrum;
}

inline nlohmann::json bound_report_json(const BoundReport& rep) {
    return {{"bound", rep.bound}, {"vacuous_flag", rep.vacuous}, {"method", rep.method}};
}

inline std::string rate_curve_csv(const RateCurve& curve, const Provenance& prov) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "m,rate,label\n";
    for (const auto& [m, r] : curve.points)
        out << fmt(m) << ',' << fmt(r) << ',' << curve.label << "\n";
    return out.str();
}

inline std::string regularization_path_csv(const RegularizationPath& path,
                                           const Provenance& prov) {
    std::ostringstream out;
    out << provenance_header(prov);
    out << "knob,norm,train_resid,test_resid\n";
    for (std::size_t i = 0; i < path.knob_values.size(); ++i) {
        out << fmt(path.knob_values[i]) << ',' << fmt(path.solution_norms[i]) << ','
            << fmt(path.train_residuals[i]) << ',';
        if (!path.test_residuals.empty()) out << fmt(path.test_residuals[i]);
        out << "\n";
    }
    return out.str();
}

inline std::string trajectory_json(const TrajectoryReport& rep, const Provenance& prov) {
    nlohmann::json j;
    j["smcurve_version"] = kVersion;
    for (const auto& [k, v] : prov) j["config"][k] = v;
    j["config"]["n"] = rep.n;
    j["config"]["m"] = rep.m;
    j["config"]["noise_fraction"] = rep.noise_fraction;
    j["config"]["trials"] = rep.trials;
    j["config"]["seed"] = rep.seed;
    j["config"]["train_tau"] = rep.train_tau;
    for (const auto* p : {&rep.a, &rep.b, &rep.c}) {
        j["points"][p->label] = {{"alpha", p->alpha},
                                 {"tau", p->tau},
                                 {"t_star", p->t_star},
                                 {"gen_err", p->mean_gen_error},
                                 {"gen_err_stderr", p->se_gen_error},
                                 {"train_err", p->mean_train_error},
                                 {"train_err_stderr", p->se_train_error}};
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV loaders for least-squares problems
// ---------------------------------------------------------------------------

inline Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix: " + path);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::vector<double> row;
        double v;
        while (ss >> v) row.push_back(v);
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("ragged rows in " + path);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::runtime_error("no data in " + path);
    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

inline Eigen::VectorXd load_vector_csv(const std::string& path) {
    Eigen::MatrixXd m = load_matrix_csv(path);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw std::runtime_error("expected a vector in " + path);
}

}  // namespace smcurve

#endif
