#ifndef SMCURVE_BOUNDS_HPP
#define SMCURVE_BOUNDS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "smcurve/common.hpp"
#include "smcurve/geometry.hpp"

namespace smcurve {

// PAC/VC-side formulas and the finite-class bound chain, exactly computable
// for enumerable hypothesis classes.

struct ErrorSpectrum {
    struct Level {
        double eps;           // generalization error of every function at this level
        std::uint64_t count;  // number of functions with exactly this error
    };
    std::vector<Level> levels;  // eps strictly increasing

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (const auto& l : levels) t += l.count;
        return t;
    }

    void validate() const {
        if (levels.empty()) throw std::invalid_argument("spectrum must not be empty");
        for (std::size_t i = 0; i < levels.size(); ++i) {
            if (levels[i].count == 0)
                throw std::invalid_argument("spectrum counts must be positive");
            if (i > 0 && !(levels[i].eps > levels[i - 1].eps))
                throw std::invalid_argument("spectrum eps must strictly increase");
        }
    }
};

struct PacParams {
    double delta = 0.05;  // failure probability
    long m = 1;           // sample size

    void validate() const {
        if (!(delta > 0.0 && delta < 1.0))
            throw std::invalid_argument("delta must lie in (0,1)");
        if (m < 1) throw std::invalid_argument("m must be positive");
    }
};

// P{ |eps_t - eps| > delta_gap } <= 2 exp(-2 m delta_gap^2) for a fixed hypothesis.
inline double hoeffding_bound(long m, double delta_gap) {
    if (m < 1) throw std::invalid_argument("hoeffding_bound: m must be positive");
    if (!(delta_gap > 0.0)) throw std::invalid_argument("hoeffding_bound: gap must be positive");
    return 2.0 * std::exp(-2.0 * static_cast<double>(m) * delta_gap * delta_gap);
}

// Worst-case union bound over a finite class: 2 |F| exp(-2 m delta_gap^2).
// Can exceed 1 (vacuous); that is the point of reporting it.
inline double uniform_bound(std::uint64_t class_size, long m, double delta_gap) {
    if (class_size < 1) throw std::invalid_argument("uniform_bound: class_size must be >= 1");
    return static_cast<double>(class_size) * hoeffding_bound(m, delta_gap);
}

// Straw-man bound for consistent hypotheses: eps <= ln(|F|/delta)/m,
// clamped at 1 for reporting.
inline double pac_consistent_error_bound(std::uint64_t class_size, const PacParams& params) {
    if (class_size < 1)
        throw std::invalid_argument("pac_consistent_error_bound: class_size must be >= 1");
    params.validate();
    double v = (std::log(static_cast<double>(class_size)) - std::log(params.delta)) /
               static_cast<double>(params.m);
    return std::min(v, 1.0);
}

struct BoundReport {
    double bound = 1.0;
    bool vacuous = false;
    std::string method;
};

// Refined spectrum bound: smallest level eps_i whose strict tail
//   sum_{j > i} q_j (1 - eps_j)^m
// is at most delta. The tail counts the survival mass of hypotheses with
// error exceeding eps_i (the complement of the eps-ball around the target), so with
// probability >= 1 - delta every version-space member has error <= eps_i.
// Tail sums run in log space to survive 2^64-scale counts. The largest level
// always qualifies through its empty tail; when that trivial statement is all
// that survives on a multi-level spectrum, the report is flagged vacuous.
inline BoundReport refined_spectrum_bound(const ErrorSpectrum& spectrum, const PacParams& params) {
    spectrum.validate();
    params.validate();
    const auto& lv = spectrum.levels;
    const double log_delta = std::log(params.delta);
    const std::size_t r = lv.size();

    // log of each level's survival mass, then suffix log-sum-exp
    std::vector<double> term(r);
    for (std::size_t j = 0; j < r; ++j) {
        double surv = lv[j].eps >= 1.0 ? neg_inf()
                                       : static_cast<double>(params.m) * std::log1p(-lv[j].eps);
        term[j] = std::log(static_cast<double>(lv[j].count)) + surv;
    }
    std::vector<double> log_tail(r + 1);
    log_tail[r] = neg_inf();
    for (std::size_t j = r; j-- > 0;) {
        double a = term[j], b = log_tail[j + 1];
        if (a < b) std::swap(a, b);
        log_tail[j] = std::isinf(b) && b < 0.0 ? a : a + std::log1p(std::exp(b - a));
    }

    for (std::size_t i = 0; i < r; ++i) {
        if (log_tail[i + 1] <= log_delta) {  // strict tail: levels j > i
            bool vacuous = (i == r - 1 && r > 1);
            return BoundReport{lv[i].eps, vacuous, "refined-spectrum"};
        }
    }
    return BoundReport{lv.back().eps, true, "refined-spectrum"};  // unreachable
}

// Rate shapes d ln(m)/m (realizable) and sqrt(d ln(m)/m) (unrealizable),
// with all constants set to 1: comparative shapes for plotting, not bounds.
struct RateCurve {
    std::vector<std::pair<double, double>> points;  // (m, rate)
    std::string label;
};

inline RateCurve vc_rate_curve(int d_vc, const std::vector<double>& m_grid, bool realizable) {
    if (d_vc < 1) throw std::invalid_argument("vc_rate_curve: d_vc must be >= 1");
    RateCurve out;
    out.label = realizable ? "vc-rate realizable (rate shape, constants unspecified)"
                           : "vc-rate unrealizable (rate shape, constants unspecified)";
    for (double m : m_grid) {
        if (!(m >= 1.0)) throw std::invalid_argument("vc_rate_curve: m must be >= 1");
        double v = static_cast<double>(d_vc) * std::log(m) / m;
        out.points.emplace_back(m, realizable ? v : std::sqrt(v));
    }
    return out;
}

// Exact error spectrum of the n-dimensional Ising perceptron class relative
// to an Ising teacher: a student at Hamming distance d has overlap
// R = 1 - 2d/n, hence error arccos(R)/pi, and each distance level holds
// C(n,d) students. Enumeration stays exact up to n = 24.
inline ErrorSpectrum exact_ising_spectrum(int n) {
    if (n < 1 || n > 24)
        throw std::invalid_argument("exact_ising_spectrum: n must lie in [1, 24]");
    ErrorSpectrum spectrum;
    std::uint64_t binom = 1;
    for (int d = 0; d <= n; ++d) {
        double r = 1.0 - 2.0 * static_cast<double>(d) / n;
        spectrum.levels.push_back({overlap_to_error(r), binom});
        binom = binom * static_cast<std::uint64_t>(n - d) / static_cast<std::uint64_t>(d + 1);
    }
    return spectrum;
}

}  // namespace smcurve

#endif
