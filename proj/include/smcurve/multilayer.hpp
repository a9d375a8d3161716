#ifndef SMCURVE_MULTILAYER_HPP
#define SMCURVE_MULTILAYER_HPP

#include <cmath>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "smcurve/common.hpp"
#include "smcurve/gibbs.hpp"

namespace smcurve {

// Forward rules for the three simple multilayer architectures, plus the
// teacher-student simulation hook that reproduces their discontinuous
// learning curves empirically. Ising (+-1) weights are used for training so
// the single-weight-flip Metropolis chain applies unchanged.

// Fully-connected committee: K hidden units, each seeing all n inputs;
// output = majority vote of the hidden signs (ties -> +1).
struct CommitteeMachine {
    int k = 1;
    int n = 0;
    std::vector<double> weights;  // k x n, row-major

    void validate() const {
        if (k < 1 || n < 1 || weights.size() != static_cast<std::size_t>(k) * n)
            throw std::invalid_argument("committee machine: bad dimensions");
    }
};

inline int committee_forward(const CommitteeMachine& mach, const std::vector<double>& s) {
    if (static_cast<int>(s.size()) != mach.n)
        throw std::invalid_argument("committee_forward: dimension mismatch");
    int vote = 0;
    for (int h = 0; h < mach.k; ++h) {
        double dot = 0.0;
        const double* w = mach.weights.data() + static_cast<std::size_t>(h) * mach.n;
        for (int i = 0; i < mach.n; ++i) dot += w[i] * s[static_cast<std::size_t>(i)];
        vote += sign_pm(dot);
    }
    return sign_pm(static_cast<double>(vote));
}

// Tree parity machine: K hidden units over disjoint receptive fields of size
// n/K (contiguous index blocks); output = product of the hidden signs.
struct ParityMachine {
    int k = 1;
    int n = 0;                    // total input dimension; k must divide n
    std::vector<double> weights;  // k blocks of n/k weights, concatenated

    int block() const { return n / k; }
    void validate() const {
        if (k < 1 || n < 1 || n % k != 0 || weights.size() != static_cast<std::size_t>(n))
            throw std::invalid_argument("parity machine: K must divide N");
    }
};

inline int parity_forward(const ParityMachine& mach, const std::vector<double>& s) {
    if (static_cast<int>(s.size()) != mach.n)
        throw std::invalid_argument("parity_forward: dimension mismatch");
    int prod = 1;
    int b = mach.block();
    for (int h = 0; h < mach.k; ++h) {
        double dot = 0.0;
        for (int i = 0; i < b; ++i)
            dot += mach.weights[static_cast<std::size_t>(h) * b + i] * s[static_cast<std::size_t>(h) * b + i];
        prod *= sign_pm(dot);
    }
    return prod;
}

// Reversed-wedge perceptron: lambda = J.S/sqrt(N), output +1 iff lambda lies
// in [-gamma, 0) u [gamma, inf), else -1 (so lambda = 0 with gamma > 0 maps
// to -1, and gamma = 0 collapses to the plain sign rule).
struct ReversedWedgePerceptron {
    int n = 0;
    std::vector<double> weights;
    double gamma = 0.0;

    void validate() const {
        if (n < 1 || weights.size() != static_cast<std::size_t>(n) || gamma < 0.0)
            throw std::invalid_argument("reversed-wedge perceptron: bad parameters");
    }
};

inline int wedge_output_from_field(double lambda, double gamma) {
    return (lambda >= gamma || (lambda >= -gamma && lambda < 0.0)) ? +1 : -1;
}

inline int reversed_wedge_forward(const ReversedWedgePerceptron& mach,
                                  const std::vector<double>& s) {
    if (static_cast<int>(s.size()) != mach.n)
        throw std::invalid_argument("reversed_wedge_forward: dimension mismatch");
    double dot = 0.0;
    for (int i = 0; i < mach.n; ++i) dot += mach.weights[static_cast<std::size_t>(i)] * s[static_cast<std::size_t>(i)];
    return wedge_output_from_field(dot / std::sqrt(static_cast<double>(mach.n)), mach.gamma);
}

// ---------------------------------------------------------------------------
// Teacher-student simulation
// ---------------------------------------------------------------------------

enum class Architecture { Committee, Parity, ReversedWedge };

inline const char* architecture_name(Architecture a) {
    switch (a) {
        case Architecture::Committee: return "committee";
        case Architecture::Parity: return "parity";
        case Architecture::ReversedWedge: return "wedge";
    }
    return "?";
}

namespace detail {

// Uniform interface over the three architectures for the Metropolis chain:
// per-pattern per-block dot cache, O(m) energy delta per weight flip.
struct MultilayerLayout {
    Architecture arch;
    int n = 0;          // input dimension
    int k = 1;          // hidden units (1 for the wedge)
    double gamma = 0.0; // wedge width
    int weight_count = 0;
    int block_size = 0; // inputs per hidden unit

    static MultilayerLayout make(Architecture arch, int n, int k, double gamma) {
        MultilayerLayout s;
        s.arch = arch;
        s.n = n;
        s.gamma = gamma;
        switch (arch) {
            case Architecture::Committee:
                s.k = k;
                s.weight_count = k * n;
                s.block_size = n;
                break;
            case Architecture::Parity:
                if (n % k != 0) throw std::invalid_argument("parity: K must divide N");
                s.k = k;
                s.weight_count = n;
                s.block_size = n / k;
                break;
            case Architecture::ReversedWedge:
                s.k = 1;
                s.weight_count = n;
                s.block_size = n;
                break;
        }
        if (s.n < 1 || s.k < 1) throw std::invalid_argument("multilayer: bad dimensions");
        return s;
    }

    // input index seen by weight (h, i)
    int input_index(int h, int i) const {
        return arch == Architecture::Parity ? h * block_size + i : i;
    }

    int output_from_dots(const double* block_dots) const {
        switch (arch) {
            case Architecture::Committee: {
                int vote = 0;
                for (int h = 0; h < k; ++h) vote += sign_pm(block_dots[h]);
                return sign_pm(static_cast<double>(vote));
            }
            case Architecture::Parity: {
                int prod = 1;
                for (int h = 0; h < k; ++h) prod *= sign_pm(block_dots[h]);
                return prod;
            }
            case Architecture::ReversedWedge:
                return wedge_output_from_field(block_dots[0] / std::sqrt(static_cast<double>(n)),
                                               gamma);
        }
        return +1;
    }

    int forward(const std::vector<double>& weights, const double* s) const {
        std::vector<double> dots(static_cast<std::size_t>(k), 0.0);
        for (int h = 0; h < k; ++h)
            for (int i = 0; i < block_size; ++i)
                dots[static_cast<std::size_t>(h)] +=
                    weights[static_cast<std::size_t>(h) * block_size + i] * s[input_index(h, i)];
        return output_from_dots(dots.data());
    }
};

}  // namespace detail

// Empirical learning curve for a multilayer architecture: teacher with random
// +-1 weights, student trained by single-weight-flip Metropolis with energy =
// training errors under the architecture's forward rule, generalization error
// estimated on fresh Gaussian test inputs (no closed-form overlap formula
// exists for these machines).
struct MultilayerCurvePoint {
    double alpha = 0.0;
    int m = 0;
    double mean_eps = 0.0;
    double stderr_eps = 0.0;
    long trials = 0;
    Architecture arch = Architecture::Parity;
};

inline std::vector<MultilayerCurvePoint> empirical_multilayer_curve(
    Architecture arch, int n, int k, double gamma, const std::vector<double>& alphas,
    const GibbsConfig& config, long trials, long test_samples, int threads = 0) {
    auto layout = detail::MultilayerLayout::make(arch, n, k, gamma);
    if (trials < 1) throw std::invalid_argument("multilayer curve: trials must be >= 1");
    if (test_samples < 10000)
        throw std::invalid_argument("multilayer curve: need >= 10^4 test samples");
    config.validate();

    const std::size_t na = alphas.size();
    std::vector<std::vector<double>> samples(na,
                                             std::vector<double>(static_cast<std::size_t>(trials)));
    const double tau_start = config.tau > 0.0 ? std::max(1.0, 4.0 * config.tau) : 0.0;

    parallel_for(na * static_cast<std::size_t>(trials), threads, [&](std::size_t idx) {
        std::size_t ai = idx / static_cast<std::size_t>(trials);
        std::size_t t = idx % static_cast<std::size_t>(trials);
        const int m = static_cast<int>(round_half_even(alphas[ai] * n));
        auto eng = make_engine(derive_seed(config.seed, ai, t, 0));
        std::normal_distribution<double> gauss(0.0, 1.0);
        std::uniform_real_distribution<double> unif(0.0, 1.0);

        std::vector<double> teacher(static_cast<std::size_t>(layout.weight_count));
        for (auto& w : teacher) w = (eng() & 1u) ? 1.0 : -1.0;
        std::vector<double> patterns(static_cast<std::size_t>(m) * n);
        for (auto& x : patterns) x = gauss(eng);
        std::vector<int> labels(static_cast<std::size_t>(m));
        for (int p = 0; p < m; ++p)
            labels[static_cast<std::size_t>(p)] = layout.forward(teacher, patterns.data() + static_cast<std::size_t>(p) * n);

        std::vector<double> student(static_cast<std::size_t>(layout.weight_count));
        for (auto& w : student) w = (eng() & 1u) ? 1.0 : -1.0;

        // per-pattern per-block dots
        std::vector<double> dots(static_cast<std::size_t>(m) * layout.k, 0.0);
        for (int p = 0; p < m; ++p)
            for (int h = 0; h < layout.k; ++h) {
                double d = 0.0;
                for (int i = 0; i < layout.block_size; ++i)
                    d += student[static_cast<std::size_t>(h) * layout.block_size + i] *
                         patterns[static_cast<std::size_t>(p) * n + layout.input_index(h, i)];
                dots[static_cast<std::size_t>(p) * layout.k + h] = d;
            }
        auto energy_all = [&]() {
            int e = 0;
            for (int p = 0; p < m; ++p)
                if (layout.output_from_dots(dots.data() + static_cast<std::size_t>(p) * layout.k) !=
                    labels[static_cast<std::size_t>(p)])
                    ++e;
            return e;
        };
        int energy = energy_all();
        std::uniform_int_distribution<int> pick_w(0, layout.weight_count - 1);
        std::vector<double> new_col(static_cast<std::size_t>(m));

        for (long s = 1; s <= config.sweeps; ++s) {
            double tau_cur = config.tau;
            if (config.tau > 0.0 && config.burn_in > 0 && s <= config.burn_in) {
                double frac = static_cast<double>(s) / static_cast<double>(config.burn_in);
                tau_cur = tau_start * std::pow(config.tau / tau_start, frac);
            }
            for (int prop = 0; prop < layout.weight_count; ++prop) {
                int w = pick_w(eng);
                int h = w / layout.block_size;
                int i = w % layout.block_size;
                int xi = layout.input_index(h, i);
                double flip = -2.0 * student[static_cast<std::size_t>(w)];
                int dE = 0;
                for (int p = 0; p < m; ++p) {
                    double old_dot = dots[static_cast<std::size_t>(p) * layout.k + h];
                    double nd = old_dot + flip * patterns[static_cast<std::size_t>(p) * n + xi];
                    new_col[static_cast<std::size_t>(p)] = nd;
                    // recompute this pattern's output with block h replaced
                    double saved = old_dot;
                    dots[static_cast<std::size_t>(p) * layout.k + h] = nd;
                    int out_new = layout.output_from_dots(dots.data() + static_cast<std::size_t>(p) * layout.k);
                    dots[static_cast<std::size_t>(p) * layout.k + h] = saved;
                    int out_old = layout.output_from_dots(dots.data() + static_cast<std::size_t>(p) * layout.k);
                    dE += (out_new != labels[static_cast<std::size_t>(p)]) - (out_old != labels[static_cast<std::size_t>(p)]);
                }
                bool accept = dE <= 0 || (tau_cur > 0.0 && unif(eng) < std::exp(-dE / tau_cur));
                if (accept) {
                    student[static_cast<std::size_t>(w)] = -student[static_cast<std::size_t>(w)];
                    for (int p = 0; p < m; ++p)
                        dots[static_cast<std::size_t>(p) * layout.k + h] = new_col[static_cast<std::size_t>(p)];
                    energy += dE;
                }
            }
        }
        (void)energy;

        // Monte Carlo generalization estimate on fresh inputs
        auto test_eng = make_engine(derive_seed(config.seed, ai, t, 2));
        std::normal_distribution<double> tg(0.0, 1.0);
        std::vector<double> x(static_cast<std::size_t>(n));
        long disagree = 0;
        for (long ts = 0; ts < test_samples; ++ts) {
            for (auto& v : x) v = tg(test_eng);
            if (layout.forward(teacher, x.data()) != layout.forward(student, x.data())) ++disagree;
        }
        samples[ai][t] = static_cast<double>(disagree) / static_cast<double>(test_samples);
    });

    std::vector<MultilayerCurvePoint> out(na);
    for (std::size_t ai = 0; ai < na; ++ai) {
        RunningStats stats;
        for (double v : samples[ai]) stats.add(v);
        out[ai] = {alphas[ai], static_cast<int>(round_half_even(alphas[ai] * n)),
                   stats.mean(), stats.stderr_mean(), trials, arch};
    }
    return out;
}

}  // namespace smcurve

#endif
