#ifndef SMCURVE_LINREG_HPP
#define SMCURVE_LINREG_HPP

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smcurve/common.hpp"

namespace smcurve {

// Tikhonov-Phillips and TSVD regularized least squares: the linear problems
// where a single global knob (lambda, or the kept rank k) always trades
// training fit for stability. The penalty is spelled lambda^2 |x|^2 so that
// the solution operator is (A^T A + lambda^2 I)^{-1} A^T; most texts write
// lambda |x|^2 instead. Solves go through the SVD for conditioning; the
// normal-equation closed form is a test oracle, not the algorithm.

struct LeastSquaresProblem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
    std::optional<std::pair<Eigen::MatrixXd, Eigen::VectorXd>> split;  // held-out (A_test, b_test)

    void validate() const {
        if (a.rows() < 1 || a.cols() < 1) throw std::invalid_argument("empty design matrix");
        if (b.size() != a.rows()) throw std::invalid_argument("rhs length mismatch");
        if (split) {
            if (split->first.cols() != a.cols() || split->second.size() != split->first.rows())
                throw std::invalid_argument("test split dimensions inconsistent");
        }
    }
};

namespace detail {

inline Eigen::JacobiSVD<Eigen::MatrixXd> svd_of(const Eigen::MatrixXd& a) {
    return Eigen::JacobiSVD<Eigen::MatrixXd>(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

inline double rank_threshold(const Eigen::MatrixXd& a, double sigma_max) {
    return std::numeric_limits<double>::epsilon() *
           static_cast<double>(std::max(a.rows(), a.cols())) * sigma_max;
}

}  // namespace detail

inline int numerical_rank(const Eigen::MatrixXd& a) {
    auto svd = detail::svd_of(a);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0) return 0;
    double thr = detail::rank_threshold(a, s(0));
    int r = 0;
    while (r < s.size() && s(r) > thr) ++r;
    return r;
}

// Minimizer of |Ax - b|^2 + lambda^2 |x|^2 via SVD filter factors
// sigma_i / (sigma_i^2 + lambda^2). lambda = 0 requires full column rank.
inline Eigen::VectorXd ridge_solve(const LeastSquaresProblem& problem, double lambda) {
    problem.validate();
    if (lambda < 0.0) throw std::invalid_argument("ridge_solve: lambda must be nonnegative");
    auto svd = detail::svd_of(problem.a);
    const auto& s = svd.singularValues();
    if (lambda == 0.0) {
        int r = 0;
        double thr = s.size() > 0 ? detail::rank_threshold(problem.a, s(0)) : 0.0;
        while (r < s.size() && s(r) > thr) ++r;
        if (r < problem.a.cols())
            throw std::runtime_error("ridge_solve: lambda = 0 needs full column rank, but rank " +
                                     std::to_string(r) + " < " +
                                     std::to_string(problem.a.cols()) + " columns");
    }
    Eigen::VectorXd ub = svd.matrixU().transpose() * problem.b;
    Eigen::VectorXd coef(s.size());
    for (int i = 0; i < s.size(); ++i)
        coef(i) = s(i) > 0.0 ? s(i) / (s(i) * s(i) + lambda * lambda) * ub(i) : 0.0;
    return svd.matrixV() * coef;
}

// Pseudoinverse solution of the best rank-k approximation: zero all but the
// top k singular values. k = rank(A) reproduces the minimum-norm LS solution.
inline Eigen::VectorXd tsvd_solve(const LeastSquaresProblem& problem, int k) {
    problem.validate();
    int kmax = static_cast<int>(std::min(problem.a.rows(), problem.a.cols()));
    if (k < 0 || k > kmax)
        throw std::invalid_argument("tsvd_solve: k must lie in [0, min(n,p)]");
    auto svd = detail::svd_of(problem.a);
    const auto& s = svd.singularValues();
    Eigen::VectorXd ub = svd.matrixU().transpose() * problem.b;
    Eigen::VectorXd coef = Eigen::VectorXd::Zero(s.size());
    double thr = s.size() > 0 && s(0) > 0.0 ? detail::rank_threshold(problem.a, s(0)) : 0.0;
    for (int i = 0; i < k; ++i)
        if (s(i) > thr) coef(i) = ub(i) / s(i);
    return svd.matrixV() * coef;
}

// True when the truncation boundary falls inside a near-degenerate pair of
// singular values (within 1e-12 sigma_max), making the kept subspace
// basis-dependent.
inline bool tsvd_truncation_tie(const LeastSquaresProblem& problem, int k) {
    problem.validate();
    auto svd = detail::svd_of(problem.a);
    const auto& s = svd.singularValues();
    if (k <= 0 || k >= s.size()) return false;
    return s(k - 1) - s(k) <= 1e-12 * s(0);
}

// ---------------------------------------------------------------------------
// Regularization paths
// ---------------------------------------------------------------------------

enum class RegKnob { Lambda, RankK };

struct RegularizationPath {
    RegKnob knob = RegKnob::Lambda;
    std::vector<double> knob_values;
    std::vector<double> solution_norms;
    std::vector<double> train_residuals;
    std::vector<double> test_residuals;  // empty when the problem has no split
};

inline RegularizationPath regularization_path(const LeastSquaresProblem& problem, RegKnob knob,
                                              const std::vector<double>& values) {
    problem.validate();
    if (values.empty()) throw std::invalid_argument("regularization_path: no knob values");
    bool incr = true, decr = true;
    for (std::size_t i = 1; i < values.size(); ++i) {
        incr = incr && values[i] >= values[i - 1];
        decr = decr && values[i] <= values[i - 1];
    }
    if (!incr && !decr)
        throw std::invalid_argument("regularization_path: knob values must be monotone");

    RegularizationPath path;
    path.knob = knob;
    path.knob_values = values;
    for (double v : values) {
        Eigen::VectorXd x;
        if (knob == RegKnob::Lambda) {
            x = ridge_solve(problem, v);
        } else {
            double rounded = std::round(v);
            if (std::abs(v - rounded) > 1e-9)
                throw std::invalid_argument("regularization_path: rank knob needs integer values");
            x = tsvd_solve(problem, static_cast<int>(rounded));
        }
        path.solution_norms.push_back(x.norm());
        path.train_residuals.push_back((problem.a * x - problem.b).norm());
        if (problem.split)
            path.test_residuals.push_back((problem.split->first * x - problem.split->second).norm());
    }
    return path;
}

}  // namespace smcurve

#endif
