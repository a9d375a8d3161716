#ifndef SMCURVE_SOLVERS_HPP
#define SMCURVE_SOLVERS_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smcurve/common.hpp"
#include "smcurve/entropy.hpp"

namespace smcurve {

// Learning curves from the entropy-energy competition: the rightmost crossing
// point eps*(alpha) of s(eps) with -alpha ln(1-eps), the maximizer of the
// annealed log-volume density, the asymptotic first-order conditions, and the
// critical loads where the curves jump.

inline constexpr int kScanGridPoints = 2048;  // dense enough that no crossing of the
                                              // in-scope smooth functions is skipped
inline constexpr double kJumpThreshold = 0.05;

struct CrossingResult {
    double eps_star = 0.0;
    bool at_boundary = false;  // crossing degenerated to eps = 0
    std::pair<double, double> bracket{0.0, 0.0};
};

namespace detail {

// Phi(eps) = s(eps) - e(eps); the crossing condition s >= -alpha ln(1-eps) is Phi >= 0.
inline double phi(const EntropyModel& model, double eps, double alpha) {
    return annealed_log_volume_density(model, eps, alpha);
}

}  // namespace detail

// Largest eps in [0,1] with s(eps) >= -alpha ln(1-eps). Scans from eps = 1
// downward (the first bracketed sign change is the rightmost one), then
// bisects to tol. Returns eps_star = 1 when s dominates everywhere, and
// at_boundary = true when the crossing set degenerates to {0} (or is empty,
// as for the continuous entropy at large alpha).
inline CrossingResult rightmost_crossing(const EntropyModel& model, double alpha, double tol,
                                         int grid_points = kScanGridPoints) {
    if (!(alpha > 0.0)) throw std::invalid_argument("rightmost_crossing: alpha must be positive");
    if (!(tol > 0.0)) throw std::invalid_argument("rightmost_crossing: tol must be positive");
    if (grid_points < 2) throw std::invalid_argument("rightmost_crossing: grid too coarse");

    const double h = 1.0 / grid_points;
    int found = -1;
    for (int k = grid_points; k >= 0; --k) {
        double x = static_cast<double>(k) * h;
        if (detail::phi(model, x, alpha) >= 0.0) {
            found = k;
            break;
        }
    }
    if (found < 0)
        return CrossingResult{0.0, true, {0.0, 0.0}};
    if (found == grid_points)
        return CrossingResult{1.0, false, {1.0, 1.0}};
    if (found == 0)
        return CrossingResult{0.0, true, {0.0, h}};

    double lo = static_cast<double>(found) * h;       // phi(lo) >= 0
    double hi = static_cast<double>(found + 1) * h;   // phi(hi) < 0
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (detail::phi(model, mid, alpha) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return CrossingResult{0.5 * (lo + hi), false, {lo, hi}};
}

// Global maximizer of Phi(eps; alpha) over [0,1]: best interior stationary
// point (grid scan + golden-section refinement) compared against the boundary
// value Phi(0). Returns exactly 0.0 when the boundary wins; for the Ising
// entropy the returned maximizer therefore jumps discontinuously to 0 above a
// critical alpha.
inline double annealed_maximizer(const EntropyModel& model, double alpha, double tol,
                                 int grid_points = kScanGridPoints) {
    if (alpha < 0.0) throw std::invalid_argument("annealed_maximizer: alpha must be nonnegative");
    if (!(tol > 0.0)) throw std::invalid_argument("annealed_maximizer: tol must be positive");

    const double h = 1.0 / grid_points;
    double best_x = h;
    double best_v = neg_inf();
    for (int k = 1; k < grid_points; ++k) {
        double x = static_cast<double>(k) * h;
        double v = detail::phi(model, x, alpha);
        if (v > best_v) {
            best_v = v;
            best_x = x;
        }
    }

    // Golden-section around the best grid point.
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = std::max(0.0, best_x - h);
    double b = std::min(1.0, best_x + h);
    double x1 = b - gr * (b - a);
    double x2 = a + gr * (b - a);
    double f1 = detail::phi(model, x1, alpha);
    double f2 = detail::phi(model, x2, alpha);
    while (b - a > tol) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = detail::phi(model, x2, alpha);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = detail::phi(model, x1, alpha);
        }
    }
    double interior_x = 0.5 * (a + b);
    double interior_v = detail::phi(model, interior_x, alpha);
    if (interior_v > best_v) best_v = interior_v; else interior_x = best_x;

    // Boundary comparison: Phi(0) = s(0) (energy vanishes there). A -inf
    // boundary (continuous entropy) means the interior always wins.
    double boundary_v = model.boundary_value();
    if (boundary_v >= best_v) return 0.0;
    return interior_x;
}

// Asymptotic Ising first-order condition: -pi^2 eps ln(eps) = alpha. The left
// side peaks at pi^2/e (at eps = 1/e), so a root exists iff alpha <= pi^2/e;
// absence signals the transition to the boundary solution. Returns the larger
// root, which lies in [1/e, 1).
inline std::optional<double> ising_first_order_condition(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("ising_first_order_condition: alpha must be positive");
    const double alpha_max = kPi * kPi / std::exp(1.0);
    if (alpha > alpha_max) return std::nullopt;
    auto f = [alpha](double eps) { return -kPi * kPi * eps * std::log(eps) - alpha; };
    // f is strictly decreasing on (1/e, 1): f(1/e) = pi^2/e - alpha >= 0, f(1) = -alpha < 0.
    double lo = std::exp(-1.0);
    double hi = 1.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) >= 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

// Continuous small-eps/large-alpha asymptotic: the stationarity of
// ln(eps) - alpha*eps gives eps = 1/alpha, clamped to (0,1].
inline double continuous_first_order_eps(double alpha) {
    if (!(alpha > 0.0))
        throw std::domain_error("continuous_first_order_eps: alpha must be positive");
    return std::min(1.0, 1.0 / alpha);
}

// ---------------------------------------------------------------------------
// Critical load
// ---------------------------------------------------------------------------

enum class TransitionCriterion {
    CrossingVanishes,           // rightmost crossing degenerates to the boundary
    InteriorMaxLosesToBoundary  // annealed maximizer jumps to 0
};

struct CriticalLoad {
    double alpha_c = 0.0;
    std::pair<double, double> certified_interval{0.0, 0.0};
};

// Bisects alpha over [bracket_lo, bracket_hi] for the load at which the
// criterion's predicate flips. Throws "no transition detected" when the
// predicate does not change over the bracket (e.g. the s = 1 bound, whose
// crossing 1 - e^{-1/alpha} stays interior for every finite alpha).
inline CriticalLoad critical_load(const EntropyModel& model, TransitionCriterion criterion,
                                  double tol, double bracket_lo = 0.1, double bracket_hi = 50.0) {
    if (!(tol > 0.0)) throw std::invalid_argument("critical_load: tol must be positive");
    const double solver_tol = std::min(1e-10, tol);
    auto pre_transition = [&](double alpha) {
        switch (criterion) {
            case TransitionCriterion::CrossingVanishes:
                return !rightmost_crossing(model, alpha, solver_tol).at_boundary;
            case TransitionCriterion::InteriorMaxLosesToBoundary:
                return annealed_maximizer(model, alpha, solver_tol) > 0.0;
        }
        return false;
    };
    bool lo_state = pre_transition(bracket_lo);
    bool hi_state = pre_transition(bracket_hi);
    if (lo_state == hi_state)
        throw std::runtime_error("critical_load: no transition detected in [" +
                                 std::to_string(bracket_lo) + ", " + std::to_string(bracket_hi) +
                                 "]");
    double lo = bracket_lo, hi = bracket_hi;
    while (hi - lo > tol) {
        double mid = 0.5 * (lo + hi);
        if (pre_transition(mid) == lo_state)
            lo = mid;
        else
            hi = mid;
    }
    return CriticalLoad{0.5 * (lo + hi), {lo, hi}};
}

// ---------------------------------------------------------------------------
// Learning curves
// ---------------------------------------------------------------------------

enum class CurveMethod { RightmostCrossing, AnnealedMax };

struct LearningCurve {
    struct Point {
        double alpha;
        double eps;
        bool after_jump;  // set on the first point past a detected discontinuity
    };
    struct Jump {
        double alpha_c;  // midpoint of the bracketing grid alphas
        double eps_before;
        double eps_after;
    };
    std::vector<Point> points;
    std::vector<Jump> jumps;
    std::vector<double> gaps;  // alphas where the solver failed (recorded, not fatal)
    CurveMethod method = CurveMethod::RightmostCrossing;
};

inline const char* curve_method_name(CurveMethod m) {
    return m == CurveMethod::RightmostCrossing ? "crossing" : "annealed-max";
}

inline LearningCurve learning_curve(const EntropyModel& model, CurveMethod method,
                                    const std::vector<double>& alphas, double tol = 1e-10,
                                    double jump_threshold = kJumpThreshold) {
    for (std::size_t i = 1; i < alphas.size(); ++i)
        if (!(alphas[i] > alphas[i - 1]))
            throw std::invalid_argument("learning_curve: alphas must strictly increase");
    if (!alphas.empty() && !(alphas.front() > 0.0))
        throw std::invalid_argument("learning_curve: alphas must be positive");

    LearningCurve curve;
    curve.method = method;
    for (double a : alphas) {
        try {
            double eps = method == CurveMethod::RightmostCrossing
                             ? rightmost_crossing(model, a, tol).eps_star
                             : annealed_maximizer(model, a, tol);
            curve.points.push_back({a, eps, false});
        } catch (const std::exception&) {
            curve.gaps.push_back(a);
        }
    }
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
        double drop = curve.points[i - 1].eps - curve.points[i].eps;
        if (drop > jump_threshold) {
            curve.points[i].after_jump = true;
            curve.jumps.push_back({0.5 * (curve.points[i - 1].alpha + curve.points[i].alpha),
                                   curve.points[i - 1].eps, curve.points[i].eps});
        }
    }
    return curve;
}

}  // namespace smcurve

#endif
