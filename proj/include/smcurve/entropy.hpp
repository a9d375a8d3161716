#ifndef SMCURVE_ENTROPY_HPP
#define SMCURVE_ENTROPY_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "smcurve/common.hpp"
#include "smcurve/geometry.hpp"

namespace smcurve {

// Entropy densities s(eps): log-volume (continuous weights) or log-count
// (Ising weights) per weight of students at generalization error eps, and the
// energy density e(eps) = -alpha ln(1-eps) they compete against. Natural logs
// everywhere.

// Continuous perceptron: s(eps) = 1/2 [1 + ln(2 pi) + ln sin^2(pi eps)].
// Diverges to -inf at both endpoints (returned as the -inf sentinel).
inline double entropy_continuous(double eps) {
    eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
    if (eps <= 0.0 || eps >= 1.0) return neg_inf();
    return 0.5 * (1.0 + std::log(2.0 * kPi)) + std::log(std::sin(kPi * eps));
}

// Ising perceptron: s(eps) = H(sin^2(pi eps / 2)) with H the natural-log
// binary entropy. Equals the hypercube level-count entropy
//   -(1-R)/2 ln((1-R)/2) - (1+R)/2 ln((1+R)/2)   at R = cos(pi eps),
// since (1-R)/2 = sin^2(pi eps/2). Endpoints are 0 by continuity.
inline double entropy_ising(double eps) {
    eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
    double s = std::sin(kPi * eps / 2.0);
    return binary_entropy(s * s);
}

// Small-eps asymptotic of the Ising entropy: s(eps) ~ -(pi^2/2) eps^2 ln eps.
inline double entropy_ising_small_eps(double eps) {
    eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
    if (eps <= 0.0) return 0.0;
    return -0.5 * kPi * kPi * eps * eps * std::log(eps);
}

// e(eps) = -alpha ln(1-eps) >= 0; +inf at eps = 1. To first order alpha*eps.
inline double energy_density(double eps, double alpha) {
    if (alpha < 0.0) throw std::domain_error("energy_density: alpha must be nonnegative");
    eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
    if (eps >= 1.0) return alpha > 0.0 ? pos_inf() : 0.0;
    return -alpha * std::log1p(-eps);
}

// ---------------------------------------------------------------------------
// EntropyModel: a named s(eps) on [0,1]. Immutable after construction.
// ---------------------------------------------------------------------------

enum class EntropyKind {
    ContinuousExact,
    ContinuousBoundOne,  // the rigorous-route upper bound s(eps) = 1
    IsingExact,
    IsingSmallEps,
    Tabulated,
};

class EntropyModel {
  public:
    static EntropyModel continuous_exact() { return EntropyModel(EntropyKind::ContinuousExact); }
    static EntropyModel continuous_bound_one() {
        return EntropyModel(EntropyKind::ContinuousBoundOne);
    }
    static EntropyModel ising_exact() { return EntropyModel(EntropyKind::IsingExact); }
    static EntropyModel ising_small_eps() { return EntropyModel(EntropyKind::IsingSmallEps); }

    // Monotone piecewise-linear table (eps strictly increasing). Evaluation
    // outside [front.eps, back.eps] is an error; no extrapolation.
    static EntropyModel tabulated(std::vector<std::pair<double, double>> table) {
        if (table.size() < 2)
            throw std::invalid_argument("tabulated entropy needs at least two points");
        for (std::size_t i = 1; i < table.size(); ++i)
            if (!(table[i].first > table[i - 1].first))
                throw std::invalid_argument("tabulated entropy: eps column must strictly increase");
        EntropyModel m(EntropyKind::Tabulated);
        m.table_ = std::move(table);
        return m;
    }

    // Two-column CSV (eps, s); '#' comments and an optional header line are skipped.
    static EntropyModel from_csv(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open entropy table: " + path);
        std::vector<std::pair<double, double>> table;
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::replace(line.begin(), line.end(), ',', ' ');
            std::istringstream ss(line);
            double e, s;
            if (ss >> e >> s) table.emplace_back(e, s);
            // non-numeric lines (headers) are skipped
        }
        return tabulated(std::move(table));
    }

    EntropyKind kind() const { return kind_; }

    double s(double eps) const {
        switch (kind_) {
            case EntropyKind::ContinuousExact: return entropy_continuous(eps);
            case EntropyKind::ContinuousBoundOne:
                clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
                return 1.0;
            case EntropyKind::IsingExact: return entropy_ising(eps);
            case EntropyKind::IsingSmallEps: return entropy_ising_small_eps(eps);
            case EntropyKind::Tabulated: return interpolate(eps);
        }
        throw std::logic_error("unreachable entropy kind");
    }

    // Value of s at the eps = 0 boundary; -inf flags "interior always wins"
    // for the solvers' boundary comparison.
    double boundary_value() const { return s_at_zero(); }

    const char* name() const {
        switch (kind_) {
            case EntropyKind::ContinuousExact: return "continuous-exact";
            case EntropyKind::ContinuousBoundOne: return "continuous-bound-one";
            case EntropyKind::IsingExact: return "ising-exact";
            case EntropyKind::IsingSmallEps: return "ising-small-eps";
            case EntropyKind::Tabulated: return "tabulated";
        }
        return "?";
    }

  private:
    explicit EntropyModel(EntropyKind k) : kind_(k) {}

    double s_at_zero() const {
        switch (kind_) {
            case EntropyKind::ContinuousExact: return neg_inf();
            case EntropyKind::ContinuousBoundOne: return 1.0;
            case EntropyKind::IsingExact: return 0.0;
            case EntropyKind::IsingSmallEps: return 0.0;
            case EntropyKind::Tabulated:
                return table_.front().first <= kOverlapClampSlack ? table_.front().second
                                                                  : neg_inf();
        }
        return neg_inf();
    }

    double interpolate(double eps) const {
        eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
        if (eps < table_.front().first - kOverlapClampSlack ||
            eps > table_.back().first + kOverlapClampSlack)
            throw std::domain_error("tabulated entropy: eps outside table range");
        eps = std::clamp(eps, table_.front().first, table_.back().first);
        auto it = std::lower_bound(table_.begin(), table_.end(), eps,
                                   [](const auto& p, double v) { return p.first < v; });
        if (it == table_.begin()) return it->second;
        auto prev = it - 1;
        if (it == table_.end()) return prev->second;
        double t = (eps - prev->first) / (it->first - prev->first);
        return prev->second + t * (it->second - prev->second);
    }

    EntropyKind kind_;
    std::vector<std::pair<double, double>> table_;
};

// Annealed log-volume density Phi(eps; alpha) = s(eps) + alpha ln(1-eps).
// The thermodynamic-limit learning curve is governed by its maximizer.
inline double annealed_log_volume_density(const EntropyModel& model, double eps, double alpha) {
    double s = model.s(eps);
    double e = energy_density(eps, alpha);
    if (std::isinf(s) && s < 0.0) return neg_inf();
    if (std::isinf(e)) return neg_inf();
    return s - e;
}

}  // namespace smcurve

#endif
