#ifndef SMCURVE_GIBBS_HPP
#define SMCURVE_GIBBS_HPP

#include <bit>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "smcurve/common.hpp"
#include "smcurve/geometry.hpp"

namespace smcurve {

// Teacher-student simulator. Zero-temperature Gibbs learning (a uniform draw
// from the version space) is realized exactly by exhaustive enumeration over
// Ising weights at small n; finite-temperature learning approximately by
// Metropolis dynamics with energy = number of training errors.

enum class WeightSpace { IsingHypercube, Sphere };
enum class PatternDist { Gaussian, Rademacher };

inline constexpr int kEnumerationCap = 24;  // bitmask enumeration budget

struct TeacherStudentInstance {
    int n = 0;
    WeightSpace space = WeightSpace::IsingHypercube;
    std::vector<double> teacher;   // |teacher|^2 = n in both spaces
    std::vector<double> patterns;  // m x n, row-major
    std::vector<int> labels;       // +-1, = sign(teacher . pattern), ties -> +1

    int m() const { return n == 0 ? 0 : static_cast<int>(patterns.size()) / n; }

    double pattern(int p, int i) const { return patterns[static_cast<std::size_t>(p) * n + i]; }

    std::uint32_t teacher_mask() const {
        std::uint32_t mask = 0;
        for (int i = 0; i < n; ++i)
            if (teacher[static_cast<std::size_t>(i)] > 0.0) mask |= (1u << i);
        return mask;
    }
};

// Exact per-student generalization error from the overlap with the teacher.
inline double student_gen_error(const TeacherStudentInstance& inst,
                                const std::vector<double>& weights) {
    double dot = 0.0;
    for (int i = 0; i < inst.n; ++i) dot += weights[static_cast<std::size_t>(i)] * inst.teacher[static_cast<std::size_t>(i)];
    double r = dot / inst.n;
    return overlap_to_error(std::clamp(r, -1.0, 1.0));
}

inline int training_errors(const TeacherStudentInstance& inst, const std::vector<double>& weights) {
    int errs = 0;
    for (int p = 0; p < inst.m(); ++p) {
        double dot = 0.0;
        for (int i = 0; i < inst.n; ++i) dot += weights[static_cast<std::size_t>(i)] * inst.pattern(p, i);
        if (sign_pm(dot) != inst.labels[static_cast<std::size_t>(p)]) ++errs;
    }
    return errs;
}

// Teacher uniform in the weight space, patterns with independent components
// (standard normal by default; Rademacher +-1 has a documented finite-n
// deviation from the arccos law), labels from the teacher with sign(0) -> +1.
inline TeacherStudentInstance generate_instance(int n, int m, WeightSpace space,
                                                std::uint64_t seed,
                                                PatternDist dist = PatternDist::Gaussian) {
    if (n < 1) throw std::invalid_argument("generate_instance: n must be >= 1");
    if (m < 0) throw std::invalid_argument("generate_instance: m must be >= 0");
    TeacherStudentInstance inst;
    inst.n = n;
    inst.space = space;
    auto eng = make_engine(seed);

    inst.teacher.resize(static_cast<std::size_t>(n));
    if (space == WeightSpace::IsingHypercube) {
        for (auto& w : inst.teacher) w = (eng() & 1u) ? 1.0 : -1.0;
    } else {
        std::normal_distribution<double> g(0.0, 1.0);
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& w : inst.teacher) {
                w = g(eng);
                norm2 += w * w;
            }
        } while (norm2 == 0.0);
        double scale = std::sqrt(static_cast<double>(n) / norm2);
        for (auto& w : inst.teacher) w *= scale;
    }

    inst.patterns.resize(static_cast<std::size_t>(m) * n);
    std::normal_distribution<double> g(0.0, 1.0);
    for (auto& x : inst.patterns)
        x = dist == PatternDist::Gaussian ? g(eng) : ((eng() & 1u) ? 1.0 : -1.0);

    inst.labels.resize(static_cast<std::size_t>(m));
    for (int p = 0; p < m; ++p) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += inst.teacher[static_cast<std::size_t>(i)] * inst.pattern(p, i);
        inst.labels[static_cast<std::size_t>(p)] = sign_pm(dot);
    }
    return inst;
}

// ---------------------------------------------------------------------------
// Exhaustive enumeration (Ising, n <= 24). Students are bitmasks; bit i set
// means J_i = +1. Gray-code order keeps the pattern dots incremental: one
// spin flip updates every dot in O(m).
// ---------------------------------------------------------------------------

inline double mask_gen_error(std::uint32_t mask, std::uint32_t teacher_mask, int n) {
    int d = std::popcount((mask ^ teacher_mask) & ((n == 32 ? 0u : (1u << n)) - 1u));
    return overlap_to_error(1.0 - 2.0 * static_cast<double>(d) / n);
}

inline std::vector<std::uint32_t> enumerate_version_space(const TeacherStudentInstance& inst) {
    if (inst.space != WeightSpace::IsingHypercube)
        throw std::invalid_argument("enumeration requires Ising weights");
    if (inst.n > kEnumerationCap)
        throw std::invalid_argument("enumeration exceeds the n <= 24 budget");
    const int n = inst.n;
    const int m = inst.m();

    // column-major copy for contiguous per-spin updates
    std::vector<double> col(static_cast<std::size_t>(m) * n);
    for (int p = 0; p < m; ++p)
        for (int i = 0; i < n; ++i) col[static_cast<std::size_t>(i) * m + p] = inst.pattern(p, i);

    std::vector<double> dots(static_cast<std::size_t>(m), 0.0);
    for (int p = 0; p < m; ++p) {
        double d = 0.0;
        for (int i = 0; i < n; ++i) d -= inst.pattern(p, i);  // mask 0: all J_i = -1
        dots[static_cast<std::size_t>(p)] = d;
    }
    std::vector<int8_t> sign(static_cast<std::size_t>(n), -1);

    std::vector<std::uint32_t> version_space;
    const std::uint64_t count = 1ull << n;
    std::uint32_t gray = 0;
    for (std::uint64_t idx = 0;; ++idx) {
        bool ok = true;
        for (int p = 0; p < m; ++p) {
            if (sign_pm(dots[static_cast<std::size_t>(p)]) != inst.labels[static_cast<std::size_t>(p)]) {
                ok = false;
                break;
            }
        }
        if (ok) version_space.push_back(gray);
        if (idx + 1 == count) break;
        int j = std::countr_zero(idx + 1);
        double flip = -2.0 * sign[static_cast<std::size_t>(j)];
        sign[static_cast<std::size_t>(j)] = static_cast<int8_t>(-sign[static_cast<std::size_t>(j)]);
        gray ^= (1u << j);
        const double* cj = col.data() + static_cast<std::size_t>(j) * m;
        for (int p = 0; p < m; ++p) dots[static_cast<std::size_t>(p)] += flip * cj[p];
    }
    return version_space;
}

struct EmpiricalCurvePoint {
    double alpha = 0.0;
    int m = 0;
    double mean_eps = 0.0;
    double stderr_eps = 0.0;
    long trials = 0;
    bool low_trials = false;  // degenerate statistics warning (trials < 2)
};

// Zero-temperature Gibbs on one instance: enumerate the version space, draw
// `trials` uniform members, report the mean exact error and its standard
// error. With m = 0 the version space is the full hypercube and the exact
// level average is returned without sampling.
inline EmpiricalCurvePoint exact_gibbs_gen_error(const TeacherStudentInstance& inst, long trials,
                                                 std::uint64_t seed) {
    if (inst.space != WeightSpace::IsingHypercube || inst.n > kEnumerationCap)
        throw std::invalid_argument("exact_gibbs_gen_error: requires Ising weights, n <= 24");
    if (trials < 1) throw std::invalid_argument("exact_gibbs_gen_error: trials must be >= 1");
    EmpiricalCurvePoint pt;
    pt.m = inst.m();
    pt.alpha = static_cast<double>(pt.m) / inst.n;

    if (pt.m == 0) {
        // full version space: exact average over Hamming levels
        double sum = 0.0, binom = 1.0;
        for (int d = 0; d <= inst.n; ++d) {
            sum += binom * overlap_to_error(1.0 - 2.0 * static_cast<double>(d) / inst.n);
            binom = binom * (inst.n - d) / (d + 1.0);
        }
        pt.mean_eps = sum / std::pow(2.0, inst.n);
        pt.stderr_eps = 0.0;
        pt.trials = 0;
        return pt;
    }

    auto vs = enumerate_version_space(inst);
    if (vs.empty())
        throw std::runtime_error(
            "exact_gibbs_gen_error: empty version space in a realizable instance "
            "(labels corrupted upstream?)");
    auto eng = make_engine(seed);
    std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
    std::uint32_t tmask = inst.teacher_mask();
    RunningStats stats;
    for (long t = 0; t < trials; ++t)
        stats.add(mask_gen_error(vs[pick(eng)], tmask, inst.n));
    pt.mean_eps = stats.mean();
    pt.stderr_eps = stats.stderr_mean();
    pt.trials = trials;
    pt.low_trials = trials < 2;
    return pt;
}

// ---------------------------------------------------------------------------
// Metropolis dynamics
// ---------------------------------------------------------------------------

struct GibbsConfig {
    double tau = 0.0;   // temperature; 0 = greedy (zero-temperature) dynamics
    long sweeps = 100;  // one sweep = n proposals
    long burn_in = 0;   // sweeps excluded from time averages; for tau > 0 the
                        // temperature anneals geometrically to tau across them
    std::uint64_t seed = 0;

    void validate() const {
        if (tau < 0.0) throw std::invalid_argument("tau must be nonnegative");
        if (sweeps < 1) throw std::invalid_argument("sweeps must be positive");
        if (burn_in < 0 || burn_in >= sweeps)
            throw std::invalid_argument("need sweeps > burn_in >= 0");
    }
};

struct MetropolisResult {
    std::vector<double> student;       // final weights
    std::vector<double> energy_trace;  // training errors after each sweep
    std::vector<double> eps_trace;     // exact gen error after each sweep
    int m = 0;

    // Post-burn-in time averages.
    double mean_eps(long burn_in) const {
        RunningStats s;
        for (std::size_t i = static_cast<std::size_t>(burn_in); i < eps_trace.size(); ++i)
            s.add(eps_trace[i]);
        return s.mean();
    }
    double mean_train_error(long burn_in) const {
        if (m == 0) return 0.0;
        RunningStats s;
        for (std::size_t i = static_cast<std::size_t>(burn_in); i < energy_trace.size(); ++i)
            s.add(energy_trace[i] / m);
        return s.mean();
    }
    double final_train_error() const { return m == 0 ? 0.0 : energy_trace.back() / m; }
};

// Metropolis chain with energy E(J) = number of training errors, acceptance
// min(1, exp(-dE/tau)); at tau = 0 only non-increasing moves are accepted, so
// the energy trace is non-increasing. Proposals: single-spin flip (Ising) or
// a small random rotation re-normalized to |J|^2 = n (Sphere). A random-init
// fixed-tau chain freezes below the barrier scale, so for tau > 0 the burn-in
// phase anneals the temperature geometrically from max(1, 4 tau) down to tau;
// measurements are taken after burn-in at fixed tau.
inline MetropolisResult metropolis_gibbs(const TeacherStudentInstance& inst,
                                         const GibbsConfig& config) {
    config.validate();
    const int n = inst.n;
    const int m = inst.m();
    auto eng = make_engine(config.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::uniform_int_distribution<int> site(0, n - 1);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::vector<double> J(static_cast<std::size_t>(n));
    if (inst.space == WeightSpace::IsingHypercube) {
        for (auto& w : J) w = (eng() & 1u) ? 1.0 : -1.0;
    } else {
        double norm2 = 0.0;
        do {
            norm2 = 0.0;
            for (auto& w : J) {
                w = gauss(eng);
                norm2 += w * w;
            }
        } while (norm2 == 0.0);
        double sc = std::sqrt(static_cast<double>(n) / norm2);
        for (auto& w : J) w *= sc;
    }

    std::vector<double> dots(static_cast<std::size_t>(m), 0.0);
    auto recompute_dots = [&](const std::vector<double>& w, std::vector<double>& out) {
        for (int p = 0; p < m; ++p) {
            double d = 0.0;
            for (int i = 0; i < n; ++i) d += w[static_cast<std::size_t>(i)] * inst.pattern(p, i);
            out[static_cast<std::size_t>(p)] = d;
        }
    };
    recompute_dots(J, dots);
    auto energy_of = [&](const std::vector<double>& d) {
        int e = 0;
        for (int p = 0; p < m; ++p)
            if (sign_pm(d[static_cast<std::size_t>(p)]) != inst.labels[static_cast<std::size_t>(p)]) ++e;
        return e;
    };
    int energy = energy_of(dots);

    const double tau_start = config.tau > 0.0 ? std::max(1.0, 4.0 * config.tau) : 0.0;
    const double spherical_step = 0.3;
    std::vector<double> cand_dots(static_cast<std::size_t>(m));
    std::vector<double> cand(static_cast<std::size_t>(n));

    MetropolisResult res;
    res.m = m;
    res.energy_trace.reserve(static_cast<std::size_t>(config.sweeps));
    res.eps_trace.reserve(static_cast<std::size_t>(config.sweeps));

    for (long s = 1; s <= config.sweeps; ++s) {
        double tau_cur = config.tau;
        if (config.tau > 0.0 && config.burn_in > 0 && s <= config.burn_in) {
            double frac = static_cast<double>(s) / static_cast<double>(config.burn_in);
            tau_cur = tau_start * std::pow(config.tau / tau_start, frac);
        }
        for (int prop = 0; prop < n; ++prop) {
            if (inst.space == WeightSpace::IsingHypercube) {
                int i = site(eng);
                double flip = -2.0 * J[static_cast<std::size_t>(i)];
                for (int p = 0; p < m; ++p)
                    cand_dots[static_cast<std::size_t>(p)] =
                        dots[static_cast<std::size_t>(p)] + flip * inst.pattern(p, i);
                int e2 = energy_of(cand_dots);
                int dE = e2 - energy;
                bool accept = dE <= 0 ||
                              (tau_cur > 0.0 && unif(eng) < std::exp(-dE / tau_cur));
                if (accept) {
                    J[static_cast<std::size_t>(i)] = -J[static_cast<std::size_t>(i)];
                    std::swap(dots, cand_dots);
                    energy = e2;
                }
            } else {
                double norm2 = 0.0;
                for (int i = 0; i < n; ++i) {
                    cand[static_cast<std::size_t>(i)] = J[static_cast<std::size_t>(i)] + spherical_step * gauss(eng);
                    norm2 += cand[static_cast<std::size_t>(i)] * cand[static_cast<std::size_t>(i)];
                }
                double sc = std::sqrt(static_cast<double>(n) / norm2);
                for (auto& w : cand) w *= sc;
                recompute_dots(cand, cand_dots);
                int e2 = energy_of(cand_dots);
                int dE = e2 - energy;
                bool accept = dE <= 0 ||
                              (tau_cur > 0.0 && unif(eng) < std::exp(-dE / tau_cur));
                if (accept) {
                    std::swap(J, cand);
                    std::swap(dots, cand_dots);
                    energy = e2;
                }
            }
        }
        res.energy_trace.push_back(static_cast<double>(energy));
        res.eps_trace.push_back(student_gen_error(inst, J));
    }
    res.student = std::move(J);
    return res;
}

// ---------------------------------------------------------------------------
// Curves and phase maps
// ---------------------------------------------------------------------------

enum class SamplerKind { ExactEnumeration, Metropolis };

// One fresh instance per trial at each alpha (m = round-half-even of
// alpha * n); the exact sampler contributes one uniform version-space draw
// per instance, the Metropolis sampler its post-burn-in time average.
inline std::vector<EmpiricalCurvePoint> empirical_learning_curve(
    int n, const std::vector<double>& alphas, WeightSpace space, SamplerKind sampler,
    const GibbsConfig& config, long trials, int threads = 0) {
    if (trials < 1) throw std::invalid_argument("empirical_learning_curve: trials must be >= 1");
    if (sampler == SamplerKind::ExactEnumeration &&
        (space != WeightSpace::IsingHypercube || n > kEnumerationCap))
        throw std::invalid_argument("exact sampler requires Ising weights with n <= 24");
    config.validate();

    const std::size_t na = alphas.size();
    std::vector<std::vector<double>> samples(na,
                                             std::vector<double>(static_cast<std::size_t>(trials)));
    std::vector<int> ms(na);
    for (std::size_t ai = 0; ai < na; ++ai) {
        if (alphas[ai] < 0.0) throw std::invalid_argument("alpha must be nonnegative");
        ms[ai] = static_cast<int>(round_half_even(alphas[ai] * n));
    }

    parallel_for(na * static_cast<std::size_t>(trials), threads, [&](std::size_t idx) {
        std::size_t ai = idx / static_cast<std::size_t>(trials);
        std::size_t t = idx % static_cast<std::size_t>(trials);
        auto inst = generate_instance(n, ms[ai], space, derive_seed(config.seed, ai, t, 0));
        double eps;
        if (sampler == SamplerKind::ExactEnumeration) {
            if (ms[ai] == 0) {
                auto eng = make_engine(derive_seed(config.seed, ai, t, 1));
                std::uint32_t mask = static_cast<std::uint32_t>(eng()) &
                                     ((n == 32 ? 0u : (1u << n)) - 1u);
                eps = mask_gen_error(mask, inst.teacher_mask(), n);
            } else {
                auto vs = enumerate_version_space(inst);
                if (vs.empty())
                    throw std::runtime_error("empty version space in realizable instance");
                auto eng = make_engine(derive_seed(config.seed, ai, t, 1));
                std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
                eps = mask_gen_error(vs[pick(eng)], inst.teacher_mask(), n);
            }
        } else {
            GibbsConfig c = config;
            c.seed = derive_seed(config.seed, ai, t, 1);
            eps = metropolis_gibbs(inst, c).mean_eps(c.burn_in);
        }
        samples[ai][t] = eps;
    });

    std::vector<EmpiricalCurvePoint> out(na);
    for (std::size_t ai = 0; ai < na; ++ai) {
        RunningStats stats;
        for (double v : samples[ai]) stats.add(v);
        out[ai] = {alphas[ai], ms[ai],    stats.mean(), stats.stderr_mean(),
                   trials,     trials < 2};
    }
    return out;
}

struct PhaseMap {
    struct Cell {
        double alpha = 0.0;
        double tau = 0.0;
        int m = 0;
        double mean_eps = 0.0;
        double stderr_eps = 0.0;
        double mean_train_err = 0.0;
        bool good = false;  // mean_eps below the threshold
    };
    std::vector<double> alphas;
    std::vector<double> taus;
    std::vector<Cell> cells;  // row-major: alpha index * |taus| + tau index
    int n = 0;
    long trials = 0;
    std::uint64_t seed = 0;
    long sweeps = 0;
    long burn_in = 0;
    double threshold = 0.25;
};

// Mean generalization/training error per (alpha, tau) cell with a good/poor
// label from thresholding mean_eps (threshold 0.25 by default, configurable:
// the label is a reading aid, not a computed boundary). The tau = 0 column
// uses the exact sampler when the enumeration budget allows.
inline PhaseMap phase_map(int n, const std::vector<double>& alpha_grid,
                          const std::vector<double>& tau_grid, WeightSpace space,
                          const GibbsConfig& config, long trials, double threshold = 0.25,
                          int threads = 0) {
    if (alpha_grid.empty() || tau_grid.empty())
        throw std::invalid_argument("phase_map: grids must be nonempty");
    if (trials < 1) throw std::invalid_argument("phase_map: trials must be >= 1");
    config.validate();

    PhaseMap map;
    map.alphas = alpha_grid;
    map.taus = tau_grid;
    map.n = n;
    map.trials = trials;
    map.seed = config.seed;
    map.sweeps = config.sweeps;
    map.burn_in = config.burn_in;
    map.threshold = threshold;
    const std::size_t nc = alpha_grid.size() * tau_grid.size();
    map.cells.resize(nc);

    std::vector<std::vector<std::pair<double, double>>> samples(
        nc, std::vector<std::pair<double, double>>(static_cast<std::size_t>(trials)));

    parallel_for(nc * static_cast<std::size_t>(trials), threads, [&](std::size_t idx) {
        std::size_t cell = idx / static_cast<std::size_t>(trials);
        std::size_t t = idx % static_cast<std::size_t>(trials);
        std::size_t ai = cell / tau_grid.size();
        std::size_t ti = cell % tau_grid.size();
        double tau = tau_grid[ti];
        int m = static_cast<int>(round_half_even(alpha_grid[ai] * n));
        auto inst = generate_instance(n, m, space, derive_seed(config.seed, cell, t, 0));
        bool exact_ok = tau == 0.0 && space == WeightSpace::IsingHypercube && n <= kEnumerationCap;
        if (exact_ok) {
            double eps;
            if (m == 0) {
                auto eng = make_engine(derive_seed(config.seed, cell, t, 1));
                std::uint32_t mask = static_cast<std::uint32_t>(eng()) &
                                     ((n == 32 ? 0u : (1u << n)) - 1u);
                eps = mask_gen_error(mask, inst.teacher_mask(), n);
            } else {
                auto vs = enumerate_version_space(inst);
                if (vs.empty())
                    throw std::runtime_error("empty version space in realizable instance");
                auto eng = make_engine(derive_seed(config.seed, cell, t, 1));
                std::uniform_int_distribution<std::size_t> pick(0, vs.size() - 1);
                eps = mask_gen_error(vs[pick(eng)], inst.teacher_mask(), n);
            }
            samples[cell][t] = {eps, 0.0};  // version-space members have zero training error
        } else {
            GibbsConfig c = config;
            c.tau = tau;
            c.seed = derive_seed(config.seed, cell, t, 1);
            auto r = metropolis_gibbs(inst, c);
            samples[cell][t] = {r.mean_eps(c.burn_in), r.mean_train_error(c.burn_in)};
        }
    });

    for (std::size_t cell = 0; cell < nc; ++cell) {
        std::size_t ai = cell / tau_grid.size();
        std::size_t ti = cell % tau_grid.size();
        RunningStats eps_stats, train_stats;
        for (auto& [e, tr] : samples[cell]) {
            eps_stats.add(e);
            train_stats.add(tr);
        }
        auto& c = map.cells[cell];
        c.alpha = alpha_grid[ai];
        c.tau = tau_grid[ti];
        c.m = static_cast<int>(round_half_even(alpha_grid[ai] * n));
        c.mean_eps = eps_stats.mean();
        c.stderr_eps = eps_stats.stderr_mean();
        c.mean_train_err = train_stats.mean();
        c.good = c.mean_eps < threshold;
    }
    return map;
}

}  // namespace smcurve

#endif
