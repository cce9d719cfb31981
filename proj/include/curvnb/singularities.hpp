#ifndef CURVNB_SINGULARITIES_HPP
#define CURVNB_SINGULARITIES_HPP

#include <vector>

#include "curvnb/dynamics.hpp"

// Classification of near-singular configurations (collisions, antipodal
// pairs, and collision-antipodal clusters), the force-direction test on a
// geodesic, and the symmetric isosceles family whose members end in, are
// repelled from, or pass analytically through a collision-antipodal
// configuration depending on the mass ratio.

namespace curvnb {

struct SingularityClassification {
    std::size_t i, j;
    SingularityKind kind;
    double proximity;  // signed value of sigma - sigma (kappa q_i . q_j)^2
};

// All pairs with |sigma - sigma (kappa q_i.q_j)^2| < threshold.  Antipodal
// kinds exist only for kappa > 0.  A colliding pair with a third body
// antipodal to either member is reported as collision_antipodal.
std::vector<SingularityClassification> classify(const SystemState& state, double threshold);

enum class GeodesicForceDirection { toward_x_axis, toward_y_axis, no_force, impossible };

const char* to_string(GeodesicForceDirection d);

/** Direction the force pulls a body at rest at (x,y), x,y > 0, on the
 * geodesic z = 0, given its accelerations.  Case (c) compares the slopes
 * ydd/xdd and y/x; equal slopes mean no tangential force. */
GeodesicForceDirection direction_on_geodesic(double x, double y, double xdd, double ydd);

enum class IsoscelesCase { collision_M8m, repulsion_M2m, analytic_M4m, custom };

// Masses M at (-x0, y0, 0) and (x0, y0, 0), mass m at (0, -1, 0), all at
// rest on the geodesic z = 0 of the unit sphere.
struct IsoscelesScenario {
    IsoscelesCase kind;
    double mass_M, mass_m;
    double x0, y0;
    double energy_h;  // from rest: h = 2Mm y0/x0 - M^2 (2y0^2 - 1)/(2 x0 y0)

    SystemState initial_state() const;
};

// M_custom is used only with IsoscelesCase::custom.  Requires 0 < x0 < 1;
// the analytic M=4m case additionally requires x0 < 1/sqrt(3).
IsoscelesScenario make_isosceles(IsoscelesCase kind, double x0, double m, double M_custom = 0.0);

/** Reduced planar system for body m2: velocities are eliminated through the
 * energy integral, so the right-hand side depends only on (x, y) and h. */
void reduced_rhs(double M, double m, double h, double x, double y, double& xdd, double& ydd);

struct ReducedSample {
    double t, x, y, xdot, ydot;
};

// Adaptive integration of the reduced system from rest at (x0, y0); stops at
// t_end or when min(4x^2y^2, x^2) drops below min_gap_stop (if positive).
std::vector<ReducedSample> integrate_reduced(const IsoscelesScenario& sc, double t_end,
                                             double rel_tol = 1e-11, double abs_tol = 1e-13,
                                             double min_gap_stop = 0.0);

}  // namespace curvnb

#endif
