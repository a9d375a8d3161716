#ifndef SMCURVE_CONTROLS_HPP
#define SMCURVE_CONTROLS_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "smcurve/common.hpp"
#include "smcurve/gibbs.hpp"

namespace smcurve {

// The two practitioner knobs mapped onto the (load, temperature) control
// plane: label noise lowers the effective load alpha = (m - m_rand)/N,
// early stopping raises the effective temperature tau = c / t_star (the
// reciprocal is the simplest monotone map with the right limits; c is
// exposed). N is the weight count of the simulated student.

struct ControlKnobs {
    long m = 1;              // training set size
    long m_rand = 0;         // randomized labels
    double n_capacity = 1.0; // effective model capacity
    long t_star = 1;         // stopping iteration (Metropolis sweeps here)
    double temp_scale = 1.0; // c in tau = c / t_star

    void validate() const {
        if (m < 1) throw std::invalid_argument("m must be positive");
        if (m_rand < 0 || m_rand > m) throw std::invalid_argument("need 0 <= m_rand <= m");
        if (!(n_capacity > 0.0)) throw std::invalid_argument("capacity must be positive");
        if (t_star < 1) throw std::invalid_argument("t_star must be >= 1");
        if (!(temp_scale > 0.0)) throw std::invalid_argument("temp_scale must be positive");
    }
};

inline double effective_load(const ControlKnobs& c) {
    c.validate();
    return static_cast<double>(c.m - c.m_rand) / c.n_capacity;
}

inline double effective_temperature(const ControlKnobs& c) {
    c.validate();
    return c.temp_scale / static_cast<double>(c.t_star);
}

// Randomizes round(fraction*m) label positions, chosen without replacement,
// each replaced by an independent fair +-1 coin (so roughly half keep their
// value). Returns the count of positions touched. The instance generically
// becomes unrealizable: downstream samplers must use Metropolis, not exact
// version-space enumeration.
struct RandomizedInstance {
    TeacherStudentInstance instance;
    long m_rand = 0;
};

inline RandomizedInstance randomize_labels(const TeacherStudentInstance& inst, double fraction,
                                           std::uint64_t seed) {
    if (fraction < 0.0 || fraction > 1.0)
        throw std::invalid_argument("randomize_labels: fraction must lie in [0,1]");
    RandomizedInstance out{inst, 0};
    const long m = inst.m();
    const long count = round_half_even(fraction * static_cast<double>(m));
    if (count == 0) return out;

    auto eng = make_engine(seed);
    std::vector<long> idx(static_cast<std::size_t>(m));
    std::iota(idx.begin(), idx.end(), 0);
    for (long i = 0; i < count; ++i) {  // partial Fisher-Yates
        std::uniform_int_distribution<long> pick(i, m - 1);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(pick(eng))]);
    }
    for (long i = 0; i < count; ++i)
        out.instance.labels[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])] =
            (eng() & 1u) ? +1 : -1;
    out.m_rand = count;
    return out;
}

// ---------------------------------------------------------------------------
// The A -> B -> C trajectory experiment
// ---------------------------------------------------------------------------

struct TrajectoryPoint {
    std::string label;       // "A", "B", "C"
    double alpha = 0.0;      // effective load (m - m_rand)/n
    double tau = 0.0;        // temp_scale / t_star
    long t_star = 0;
    double mean_gen_error = 0.0;
    double se_gen_error = 0.0;
    double mean_train_error = 0.0;  // on that point's own (possibly corrupted) labels
    double se_train_error = 0.0;
};

struct TrajectoryReport {
    TrajectoryPoint a, b, c;
    int n = 0;
    long m = 0;
    long m_rand = 0;
    double noise_fraction = 0.0;
    long trials = 0;
    std::uint64_t seed = 0;
    double train_tau = 0.0;  // Metropolis temperature used for the training chains

    void check_structure() const {
        if (m_rand > 0 && !(b.alpha < a.alpha))
            throw std::logic_error("trajectory: expected B.alpha < A.alpha");
        if (b.alpha > a.alpha) throw std::logic_error("trajectory: B.alpha exceeds A.alpha");
        if (b.alpha != c.alpha) throw std::logic_error("trajectory: expected C.alpha = B.alpha");
        if (b.tau == c.tau && b.t_star != c.t_star)
            throw std::logic_error("trajectory: C.tau must follow t_star_post");
    }
};

// A: clean data trained t_star_pre sweeps. B: noisy data, t_star_pre sweeps.
// C: the same noisy data, t_star_post sweeps (early-stopped or extended).
// Generalization error is always measured against the clean teacher; training
// error against the labels the point was trained on. The training chain runs
// at fixed temperature train_tau (default 0 = greedy).
inline TrajectoryReport trajectory_experiment(int n, long m, double noise_fraction,
                                              long t_star_pre, long t_star_post, long trials,
                                              std::uint64_t seed, double temp_scale = 1.0,
                                              double train_tau = 0.0, int threads = 0) {
    if (n < 1 || m < 1 || trials < 1 || t_star_pre < 1 || t_star_post < 1)
        throw std::invalid_argument("trajectory_experiment: parameters must be positive");
    if (!(noise_fraction > 0.0 && noise_fraction < 1.0))
        throw std::invalid_argument("trajectory_experiment: noise fraction must lie in (0,1)");

    struct Sample {
        double gen[3];
        double train[3];
        long m_rand;
    };
    std::vector<Sample> samples(static_cast<std::size_t>(trials));

    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        auto clean = generate_instance(n, static_cast<int>(m), WeightSpace::IsingHypercube,
                                       derive_seed(seed, t, 0));
        auto noisy = randomize_labels(clean, noise_fraction, derive_seed(seed, t, 1));

        auto run = [&](const TeacherStudentInstance& inst, long sweeps, std::uint64_t cseed,
                       double& gen, double& train) {
            GibbsConfig cfg;
            cfg.tau = train_tau;
            cfg.sweeps = sweeps;
            cfg.burn_in = 0;
            cfg.seed = cseed;
            auto r = metropolis_gibbs(inst, cfg);
            // gen error vs the clean teacher (instances share the teacher)
            gen = student_gen_error(clean, r.student);
            train = r.final_train_error();
        };
        auto& s = samples[t];
        run(clean, t_star_pre, derive_seed(seed, t, 2), s.gen[0], s.train[0]);
        run(noisy.instance, t_star_pre, derive_seed(seed, t, 3), s.gen[1], s.train[1]);
        run(noisy.instance, t_star_post, derive_seed(seed, t, 4), s.gen[2], s.train[2]);
        s.m_rand = noisy.m_rand;
    });

    TrajectoryReport rep;
    rep.n = n;
    rep.m = m;
    rep.noise_fraction = noise_fraction;
    rep.trials = trials;
    rep.seed = seed;
    rep.train_tau = train_tau;

    long m_rand = samples.front().m_rand;
    rep.m_rand = m_rand;
    const char* labels[3] = {"A", "B", "C"};
    long stars[3] = {t_star_pre, t_star_pre, t_star_post};
    long rands[3] = {0, m_rand, m_rand};
    TrajectoryPoint* pts[3] = {&rep.a, &rep.b, &rep.c};
    for (int j = 0; j < 3; ++j) {
        RunningStats gen, train;
        for (auto& s : samples) {
            gen.add(s.gen[j]);
            train.add(s.train[j]);
        }
        auto& p = *pts[j];
        p.label = labels[j];
        p.t_star = stars[j];
        ControlKnobs c{m, rands[j], static_cast<double>(n), stars[j], temp_scale};
        p.alpha = effective_load(c);
        p.tau = effective_temperature(c);
        p.mean_gen_error = gen.mean();
        p.se_gen_error = gen.stderr_mean();
        p.mean_train_error = train.mean();
        p.se_train_error = train.stderr_mean();
    }
    rep.check_structure();
    return rep;
}

// Early-stop selection on a held-out noisy validation split (20% of the
// patterns): returns the candidate sweep count with the lowest mean
// validation error.
inline long select_t_star_by_validation(int n, long m, double noise_fraction,
                                        const std::vector<long>& candidates, long trials,
                                        std::uint64_t seed, double train_tau = 0.0,
                                        int threads = 0) {
    if (candidates.empty()) throw std::invalid_argument("no early-stop candidates");
    const long m_val = std::max<long>(1, round_half_even(0.2 * static_cast<double>(m)));
    const long m_train = m - m_val;
    if (m_train < 1) throw std::invalid_argument("training split is empty");

    std::vector<std::vector<double>> val_err(candidates.size(),
                                             std::vector<double>(static_cast<std::size_t>(trials)));
    long max_sweeps = *std::max_element(candidates.begin(), candidates.end());

    parallel_for(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        auto full = generate_instance(n, static_cast<int>(m), WeightSpace::IsingHypercube,
                                      derive_seed(seed, t, 10));
        auto noisy = randomize_labels(full, noise_fraction, derive_seed(seed, t, 11)).instance;

        TeacherStudentInstance train = noisy, val = noisy;
        train.patterns.assign(noisy.patterns.begin(),
                              noisy.patterns.begin() + static_cast<std::ptrdiff_t>(m_train) * n);
        train.labels.assign(noisy.labels.begin(),
                            noisy.labels.begin() + static_cast<std::ptrdiff_t>(m_train));
        val.patterns.assign(noisy.patterns.begin() + static_cast<std::ptrdiff_t>(m_train) * n,
                            noisy.patterns.end());
        val.labels.assign(noisy.labels.begin() + static_cast<std::ptrdiff_t>(m_train),
                          noisy.labels.end());

        GibbsConfig cfg;
        cfg.tau = train_tau;
        cfg.sweeps = max_sweeps;
        cfg.burn_in = 0;
        cfg.seed = derive_seed(seed, t, 12);
        // one long chain; snapshot validation error at each candidate by rerunning
        // to that sweep count with the same seed (identical prefix trajectory)
        for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
            GibbsConfig c2 = cfg;
            c2.sweeps = candidates[ci];
            auto r = metropolis_gibbs(train, c2);
            val_err[ci][t] = static_cast<double>(training_errors(val, r.student)) /
                             static_cast<double>(val.m());
        }
    });

    std::size_t best = 0;
    double best_err = pos_inf();
    for (std::size_t ci = 0; ci < candidates.size(); ++ci) {
        RunningStats s;
        for (double v : val_err[ci]) s.add(v);
        if (s.mean() < best_err) {
            best_err = s.mean();
            best = ci;
        }
    }
    return candidates[best];
}

}  // namespace smcurve

#endif
