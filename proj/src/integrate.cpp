#include "curvnb/integrate.hpp"

#include <algorithm>
#include <cmath>

#include "curvnb/rk45.hpp"

namespace curvnb {

const char* to_string(StopReason::Kind k) {
    switch (k) {
        case StopReason::Kind::reached_t_end: return "reached_t_end";
        case StopReason::Kind::singularity_event: return "singularity_event";
        case StopReason::Kind::step_underflow: return "step_underflow";
        case StopReason::Kind::max_steps: return "max_steps";
    }
    return "?";
}

namespace {

constexpr double kMinDt = 1e-14;
constexpr double kEventTimeTol = 1e-10;
constexpr double kClassifyWiden = 100.0;

void pack(const SystemState& s, std::vector<double>& y) {
    y.resize(6 * s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Body& b = s.bodies()[i];
        y[6 * i + 0] = b.q.v().x;
        y[6 * i + 1] = b.q.v().y;
        y[6 * i + 2] = b.q.v().z;
        y[6 * i + 3] = b.p.x;
        y[6 * i + 4] = b.p.y;
        y[6 * i + 5] = b.p.z;
    }
}

// Rebuilds a state from the flat vector, projecting every position onto the
// quadric and every momentum onto the tangent space.
SystemState unpack_projected(const SystemState& like, std::span<const double> y, double t) {
    const Curvature& c = like.curvature();
    std::vector<Body> bodies;
    bodies.reserve(like.size());
    for (std::size_t i = 0; i < like.size(); ++i) {
        const Vec3 q{y[6 * i + 0], y[6 * i + 1], y[6 * i + 2]};
        const Vec3 p{y[6 * i + 3], y[6 * i + 4], y[6 * i + 5]};
        const SurfacePoint qp = project_point(c, q);
        const TangentVector pp = project_velocity(c, qp, p);
        bodies.emplace_back(like.bodies()[i].mass, qp, pp.v());
    }
    return SystemState(c, std::move(bodies), t);
}

OdeRhs make_rhs(const SystemState& like) {
    const Curvature c = like.curvature();
    std::vector<double> masses;
    for (const Body& b : like.bodies()) masses.push_back(b.mass);
    return [c, masses](double, std::span<const double> y, std::span<double> dy) {
        const std::size_t n = masses.size();
        const double k = c.kappa();
        const double rk32 = std::pow(c.sigma() * k, 1.5);
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3 qi{y[6 * i], y[6 * i + 1], y[6 * i + 2]};
            const Vec3 pi{y[6 * i + 3], y[6 * i + 4], y[6 * i + 5]};
            Vec3 grad;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                const Vec3 qj{y[6 * j], y[6 * j + 1], y[6 * j + 2]};
                const PairGeometry pg = pair_geometry(c, qi, qj);
                if (std::abs(pg.gap) < kSingularTol)
                    throw SingularityError(std::min(i, j), std::max(i, j),
                                           pg.u > 0.0 ? SingularityKind::collision
                                                      : SingularityKind::antipodal);
                grad += (masses[i] * masses[j] * rk32 / std::pow(pg.gap, 1.5)) * pg.toward;
            }
            const Vec3 pdot = grad - (k * inner(c, pi, pi) / masses[i]) * qi;
            dy[6 * i + 0] = pi.x / masses[i];
            dy[6 * i + 1] = pi.y / masses[i];
            dy[6 * i + 2] = pi.z / masses[i];
            dy[6 * i + 3] = pdot.x;
            dy[6 * i + 4] = pdot.y;
            dy[6 * i + 5] = pdot.z;
        }
    };
}

}  // namespace

std::pair<SystemState, double> step(const SystemState& state, double dt,
                                    const IntegratorConfig& config) {
    if (dt < 0.0) throw std::invalid_argument("step: dt must be nonnegative");
    if (dt == 0.0) return {state, 0.0};
    std::vector<double> y;
    pack(state, y);
    const Rk45Step st = rk45_step(make_rhs(state), state.time(), y, dt, config.rel_tol,
                                  config.abs_tol);
    return {unpack_projected(state, st.y, state.time() + dt), st.error_norm};
}

Trajectory integrate(const SystemState& state, double t_end, const IntegratorConfig& config,
                     const Observer& observer) {
    if (!(t_end > state.time())) throw std::invalid_argument("integrate: t_end must exceed state.time");

    Trajectory traj;
    long since_store = 0;
    auto emit = [&](const SystemState& s, bool force_store = false) {
        TrajectorySample smp{s.time(), s, compute_diagnostics(s)};
        if (observer) observer(smp);
        if (force_store || config.sample_stride <= 1 || ++since_store >= config.sample_stride) {
            since_store = 0;
            if (traj.samples.empty() || traj.samples.back().time < smp.time)
                traj.samples.push_back(std::move(smp));
        }
    };
    // Stores the terminal state even when the stride would skip it.
    auto emit_final = [&](const SystemState& s) {
        if (traj.samples.empty() || traj.samples.back().time < s.time())
            traj.samples.push_back({s.time(), s, compute_diagnostics(s)});
    };

    SystemState current = state;
    emit(current, true);

    const double threshold = config.singularity_event_threshold;
    auto finish_event = [&](const SystemState& at) {
        traj.stop.kind = StopReason::Kind::singularity_event;
        traj.stop.event_time = at.time();
        const double widened = kClassifyWiden * std::max(threshold, min_pair_gap(at));
        traj.stop.classifications = classify(at, widened);
    };

    if (min_pair_gap(current) < threshold) {
        finish_event(current);
        return traj;
    }

    double dt = std::min(config.initial_dt, config.max_dt);
    long steps = 0;
    while (current.time() < t_end) {
        if (++steps > config.max_steps) {
            traj.stop.kind = StopReason::Kind::max_steps;
            traj.stop.event_time = current.time();
            emit_final(current);
            return traj;
        }
        dt = std::min({dt, config.max_dt, t_end - current.time()});
        if (dt < kMinDt) {
            traj.stop.kind = StopReason::Kind::step_underflow;
            traj.stop.event_time = current.time();
            emit_final(current);
            return traj;
        }

        SystemState trial = current;
        double err;
        try {
            auto [s, e] = step(current, dt, config);
            trial = std::move(s);
            err = e;
        } catch (const SingularityError&) {
            // The trial step reached into the singular set; resolve it as an
            // event bracket by shrinking.
            dt *= 0.25;
            continue;
        }
        if (err > 1.0) {
            dt *= rk45_dt_factor(err);
            continue;
        }

        if (min_pair_gap(trial) < threshold) {
            // Bisect the event time within (current.time, current.time + dt].
            double lo = 0.0, hi = dt;
            SystemState at_event = trial;
            while (hi - lo > kEventTimeTol) {
                const double mid = 0.5 * (lo + hi);
                if (mid == lo || mid == hi) break;
                SystemState probe = step(current, mid, config).first;
                if (min_pair_gap(probe) < threshold) {
                    hi = mid;
                    at_event = std::move(probe);
                } else {
                    lo = mid;
                }
            }
            emit(at_event, true);
            finish_event(at_event);
            return traj;
        }

        current = std::move(trial);
        emit(current);
        dt *= rk45_dt_factor(err);
    }
    traj.stop.kind = StopReason::Kind::reached_t_end;
    traj.stop.event_time = current.time();
    emit_final(current);
    return traj;
}

DriftReport invariant_drift(std::span<const TrajectorySample> samples) {
    if (samples.empty()) throw std::invalid_argument("invariant_drift: empty trajectory");
    const DiagnosticsRecord& d0 = samples.front().diagnostics;
    auto rel = [](double v, double v0) {
        const double scale = std::abs(v0) < 1e-12 ? 1.0 : std::abs(v0);
        return std::abs(v - v0) / scale;
    };
    DriftReport r{0.0, 0.0, 0.0};
    for (const TrajectorySample& s : samples) {
        r.energy = std::max(r.energy, rel(s.diagnostics.energy, d0.energy));
        for (int k = 0; k < 3; ++k)
            r.angular_momentum = std::max(
                r.angular_momentum, rel(s.diagnostics.angular_momentum[k], d0.angular_momentum[k]));
        r.constraint = std::max(r.constraint, s.diagnostics.constraint_residual);
    }
    return r;
}

}  // namespace curvnb
