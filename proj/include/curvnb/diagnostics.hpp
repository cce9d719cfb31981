#ifndef CURVNB_DIAGNOSTICS_HPP
#define CURVNB_DIAGNOSTICS_HPP

#include <limits>
#include <utility>

#include "curvnb/dynamics.hpp"

// Per-state diagnostics: conserved quantities, moments of inertia about the
// timelike z axis (I) and the spacelike x axis (J), geodesic alignment, and
// the finite-difference gradient oracle.

namespace curvnb {

struct DiagnosticsRecord {
    double energy = 0.0;
    Vec3 angular_momentum;
    double moment_I = 0.0;
    // Only meaningful for kappa < 0; NaN otherwise.
    double moment_J = std::numeric_limits<double>::quiet_NaN();
    double min_pair_gap = std::numeric_limits<double>::infinity();
    double constraint_residual = 0.0;
};

// I = sum m_i (x_i^2 + y_i^2)
double moment_inertia_I(const SystemState& state);

// J = sum m_i (y_i^2 - z_i^2); defined for kappa < 0 only.
double moment_inertia_J(const SystemState& state);

// min over pairs of |sigma - sigma (kappa q_i . q_j)^2|; +inf for n = 1.
double min_pair_gap(const SystemState& state);

// Worst constraint violation over bodies: position residual
// |kappa*inner(q,q) - 1| and momentum tangency |kappa*inner(q,p)|.
double max_constraint_residual(const SystemState& state);

DiagnosticsRecord compute_diagnostics(const SystemState& state);

// Smallest singular value of the n x 3 matrix of positions: zero iff all
// position vectors are coplanar with the origin, i.e. the bodies lie on a
// common geodesic.
double geodesic_alignment_value(const SystemState& state);

// (is_aligned, plane normal); aligned when the smallest singular value is
// below 1e-9.
std::pair<bool, Vec3> geodesic_alignment(const SystemState& state);

/** Central finite differences of the homogeneous force function along the
 * ambient axes against the analytic gradient; returns the worst relative
 * error over bodies. */
double finite_difference_gradient_check(const SystemState& state, double step);

}  // namespace curvnb

#endif
