#ifndef SMCURVE_GEOMETRY_HPP
#define SMCURVE_GEOMETRY_HPP

#include <cmath>

#include "smcurve/common.hpp"

namespace smcurve {

// Perceptron overlap/error geometry. For teacher T and student J normalized to
// ||.||^2 = N, the overlap R = (1/N) J.T fixes the disagreement probability on
// spherically symmetric inputs: eps = arccos(R)/pi.

inline constexpr double kOverlapClampSlack = 1e-12;

// eps = arccos(r)/pi, strictly decreasing in r. Inputs within 1e-12 outside
// [-1,1] are clamped; larger violations are domain errors.
inline double overlap_to_error(double r) {
    r = clamp_or_throw(r, -1.0, 1.0, kOverlapClampSlack, "overlap");
    return std::acos(r) / kPi;
}

// r = cos(pi * eps), inverse of overlap_to_error on [0,1].
inline double error_to_overlap(double eps) {
    eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
    return std::cos(kPi * eps);
}

// Version-space survival law: each independent example keeps a student of
// error eps with probability 1-eps, so after m examples
//   ln Omega_m = ln Omega_0 + m ln(1-eps).
// Volumes are carried in log space throughout (Omega_0 is exponential in N).
// eps = 1 with m > 0 collapses the volume to zero (-inf), not an error.
inline double survival_log_volume(double log_omega0, double eps, long m) {
    if (m < 0) throw std::domain_error("survival_log_volume: m must be nonnegative");
    eps = clamp_or_throw(eps, 0.0, 1.0, kOverlapClampSlack, "generalization error");
    if (m == 0) return log_omega0;
    if (eps >= 1.0) return neg_inf();
    return log_omega0 + static_cast<double>(m) * std::log1p(-eps);
}

struct SurvivalVolume {
    double log_omega0 = 0.0;
    long m = 0;
    double log_omega_m = 0.0;
};

inline SurvivalVolume make_survival_volume(double log_omega0, double eps, long m) {
    return SurvivalVolume{log_omega0, m, survival_log_volume(log_omega0, eps, m)};
}

}  // namespace smcurve

#endif
