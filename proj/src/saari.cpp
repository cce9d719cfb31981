#include "curvnb/saari.hpp"

#include <algorithm>
#include <cmath>

namespace curvnb {

namespace {

// Least-squares slope of (t_k, th_k).
double fit_slope(const std::vector<double>& t, const std::vector<double>& th, double& residual) {
    const std::size_t n = t.size();
    double mt = 0.0, mth = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        mt += t[k];
        mth += th[k];
    }
    mt /= n;
    mth /= n;
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        num += (t[k] - mt) * (th[k] - mth);
        den += (t[k] - mt) * (t[k] - mt);
    }
    const double slope = num / den;
    residual = 0.0;
    for (std::size_t k = 0; k < n; ++k)
        residual = std::max(residual, std::abs(th[k] - mth - slope * (t[k] - mt)));
    return slope;
}

}  // namespace

SaariReport saari_classify(std::span<const TrajectorySample> trajectory, SaariMode mode,
                           double moment_tol) {
    SaariReport rep;
    if (trajectory.size() < 3) {
        rep.detail = "trajectory too short";
        return rep;
    }
    const SystemState& s0 = trajectory.front().state;
    const Curvature& c = s0.curvature();
    const std::size_t n = s0.size();

    if (mode == SaariMode::hyperbolic_about_x && c.spherical()) {
        rep.detail = "hyperbolic mode requires kappa < 0";
        return rep;
    }

    // Precondition: aligned along a geodesic at every sample.
    for (const TrajectorySample& smp : trajectory) {
        if (geodesic_alignment_value(smp.state) >= 1e-9) {
            rep.detail = "bodies are not aligned along a geodesic";
            return rep;
        }
    }

    // Precondition: the relevant moment of inertia is constant.
    auto moment = [&](const SystemState& s) {
        return mode == SaariMode::elliptic_about_z ? moment_inertia_I(s) : moment_inertia_J(s);
    };
    const double m0 = moment(s0);
    const double mscale = std::max(1.0, std::abs(m0));
    for (const TrajectorySample& smp : trajectory) {
        rep.moment_drift = std::max(rep.moment_drift, std::abs(moment(smp.state) - m0) / mscale);
    }
    if (rep.moment_drift >= moment_tol) {
        rep.detail = "moment of inertia is not constant";
        return rep;
    }

    // Proof chain: the angular-momentum component about the rotation axis is
    // constant body by body.
    const int axis = mode == SaariMode::elliptic_about_z ? 2 : 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double l0 = angular_momentum_body(s0, i)[axis];
        for (const TrajectorySample& smp : trajectory)
            rep.per_body_L_drift = std::max(
                rep.per_body_L_drift, std::abs(angular_momentum_body(smp.state, i)[axis] - l0));
    }
    if (rep.per_body_L_drift >= 1e-7) {
        rep.detail = "per-body angular-momentum component drifts";
        return rep;
    }

    // Constant per-body moments then force constant level coordinates.
    rep.levels.resize(n);
    double level_drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        auto level = [&](const SystemState& s) {
            return mode == SaariMode::elliptic_about_z ? s.bodies()[i].q.v().z
                                                       : s.bodies()[i].q.v().x;
        };
        rep.levels[i] = level(s0);
        for (const TrajectorySample& smp : trajectory)
            level_drift = std::max(level_drift, std::abs(level(smp.state) - rep.levels[i]));
    }
    if (level_drift >= 1e-6) {
        rep.detail = "per-body level coordinate drifts";
        return rep;
    }

    // Fit the rotation rate on the first body with a usable phase.  In the
    // elliptic mode a body at the pole (x = y = 0) carries no phase; the
    // hyperbolic rapidity atanh(y/z) is defined for every body.
    std::size_t ref = 0;
    if (mode == SaariMode::elliptic_about_z) {
        ref = n;
        for (std::size_t i = 0; i < n; ++i) {
            const Vec3& q = s0.bodies()[i].q.v();
            if (std::hypot(q.x, q.y) > 1e-9) {
                ref = i;
                break;
            }
        }
        if (ref == n) {
            rep.detail = "no body with a usable rotation phase";
            return rep;
        }
    }

    std::vector<double> ts, phases;
    double prev = 0.0;
    double offset = 0.0;
    for (std::size_t k = 0; k < trajectory.size(); ++k) {
        const Vec3& q = trajectory[k].state.bodies()[ref].q.v();
        double th;
        if (mode == SaariMode::elliptic_about_z) {
            th = std::atan2(q.y, q.x);
            if (k > 0) {
                // unwrap
                while (th + offset - prev > M_PI) offset -= 2.0 * M_PI;
                while (th + offset - prev < -M_PI) offset += 2.0 * M_PI;
            }
            th += offset;
        } else {
            th = std::atanh(q.y / q.z);  // rapidity of the (y,z) motion
        }
        prev = th;
        ts.push_back(trajectory[k].time);
        phases.push_back(th);
    }
    rep.omega_fit = fit_slope(ts, phases, rep.omega_residual);
    if (rep.omega_residual >= 1e-7) {
        rep.detail = "rotation rate is not constant";
        return rep;
    }

    // Rigid-motion cross-check: pairwise distances must not drift.
    double dist_drift = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d0 = distance(s0.bodies()[i].q, s0.bodies()[j].q);
            for (const TrajectorySample& smp : trajectory)
                dist_drift = std::max(
                    dist_drift,
                    std::abs(distance(smp.state.bodies()[i].q, smp.state.bodies()[j].q) - d0));
        }
    }
    if (dist_drift >= 1e-6) {
        rep.detail = "pairwise distances drift";
        return rep;
    }

    rep.verdict = SaariReport::Verdict::relative_equilibrium;
    return rep;
}

}  // namespace curvnb
