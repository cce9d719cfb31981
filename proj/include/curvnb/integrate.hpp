#ifndef CURVNB_INTEGRATE_HPP
#define CURVNB_INTEGRATE_HPP

#include <functional>
#include <span>
#include <vector>

#include "curvnb/diagnostics.hpp"
#include "curvnb/singularities.hpp"

// Projection-stabilized adaptive integration of the first-order system:
// after every accepted embedded-RK step, positions are renormalized onto the
// quadric and momenta re-projected onto the tangent space.  Integration stops
// at t_end, at a singularity event (located by bisection), on step underflow,
// or when the step budget is exhausted.

namespace curvnb {

struct IntegratorConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double initial_dt = 1e-3;
    double max_dt = 0.1;
    // Event threshold on min over pairs of |sigma - sigma (kappa q_i.q_j)^2|;
    // must stay above the hard singularity tolerance of the dynamics.
    double singularity_event_threshold = 1e-8;
    long max_steps = 2000000;
    // Store every k-th accepted step (first and last are always kept); the
    // observer still sees every accepted step.
    long sample_stride = 1;
};

struct TrajectorySample {
    double time;
    SystemState state;
    DiagnosticsRecord diagnostics;
};

struct StopReason {
    enum class Kind { reached_t_end, singularity_event, step_underflow, max_steps };
    Kind kind = Kind::reached_t_end;
    double event_time = 0.0;
    // Populated for singularity events; the trigger threshold localizes the
    // event while classification uses a widened neighborhood so that every
    // pair participating in the singular cluster is reported.
    std::vector<SingularityClassification> classifications;
};

const char* to_string(StopReason::Kind k);

struct Trajectory {
    std::vector<TrajectorySample> samples;
    StopReason stop;
};

using Observer = std::function<void(const TrajectorySample&)>;

/** One embedded RK 5(4) step of size dt followed by manifold projection.
 * Returns the projected state and the scaled error-norm estimate (accept
 * when <= 1).  dt = 0 returns the state unchanged. */
std::pair<SystemState, double> step(const SystemState& state, double dt,
                                    const IntegratorConfig& config);

Trajectory integrate(const SystemState& state, double t_end, const IntegratorConfig& config = {},
                     const Observer& observer = {});

struct DriftReport {
    double energy;            // max relative drift of h
    double angular_momentum;  // max component drift of c
    double constraint;        // max constraint residual over samples
};

// Drifts relative to the first sample's values; absolute when the initial
// value is below 1e-12.
DriftReport invariant_drift(std::span<const TrajectorySample> samples);

}  // namespace curvnb

#endif
