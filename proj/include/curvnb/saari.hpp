#ifndef CURVNB_SAARI_HPP
#define CURVNB_SAARI_HPP

#include <string>

#include "curvnb/integrate.hpp"

// Classifier for the geodesic case of the constant-moment-of-inertia
// question: a trajectory whose bodies stay aligned on a rotating geodesic
// with constant I (elliptic) or J (hyperbolic) must be a relative
// equilibrium.  The verdict mirrors the proof chain: per-body angular
// momentum component constant -> per-body moment constant -> angular
// velocity constant.

namespace curvnb {

enum class SaariMode { elliptic_about_z, hyperbolic_about_x };

struct SaariReport {
    enum class Verdict { relative_equilibrium, inconclusive };
    Verdict verdict = Verdict::inconclusive;
    std::string detail;       // violated check when inconclusive
    double omega_fit = 0.0;   // fitted constant angular velocity / rapidity rate
    double omega_residual = 0.0;
    double moment_drift = 0.0;
    double per_body_L_drift = 0.0;
    std::vector<double> levels;  // fitted constant z_i (elliptic) or x_i (hyperbolic)
};

SaariReport saari_classify(std::span<const TrajectorySample> trajectory, SaariMode mode,
                           double moment_tol = 1e-7);

}  // namespace curvnb

#endif
