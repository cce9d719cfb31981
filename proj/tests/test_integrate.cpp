#include <doctest.h>

#include <cmath>
#include <random>

#include "curvnb/equilibria.hpp"
#include "curvnb/integrate.hpp"

using namespace curvnb;

namespace {

SystemState free_body(double speed) {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    bodies.emplace_back(1.0, SurfacePoint({1, 0, 0}, c), Vec3{0, speed, 0});
    return SystemState(c, std::move(bodies));
}

double oracle_error(const SystemState& st, double dt, const IntegratorConfig& cfg) {
    const Curvature& c = st.curvature();
    const Body& b = st.bodies()[0];
    auto [qo, vo] = geodesic_flow(c, b.q, TangentVector(b.velocity(), b.q), dt);
    const SystemState stepped = step(st, dt, cfg).first;
    return norm_e(stepped.bodies()[0].q.v() - qo.v());
}

}  // namespace

TEST_CASE("step basics: identity at dt=0 and fixed points") {
    IntegratorConfig cfg;
    const SystemState ngon = fixed_point_ngon(5, 1.0);
    auto [same, err0] = step(ngon, 0.0, cfg);
    CHECK(err0 == 0.0);
    for (std::size_t i = 0; i < ngon.size(); ++i)
        CHECK(norm_e(same.bodies()[i].q.v() - ngon.bodies()[i].q.v()) == 0.0);

    auto [stepped, err] = step(ngon, 0.05, cfg);
    for (std::size_t i = 0; i < ngon.size(); ++i) {
        CHECK(norm_e(stepped.bodies()[i].q.v() - ngon.bodies()[i].q.v()) < 1e-13);
        CHECK(norm_e(stepped.bodies()[i].p) < 1e-13);
    }
}

TEST_CASE("one free-body step carries O(dt^5) local error") {
    IntegratorConfig cfg;
    const SystemState st = free_body(3.0);
    const double e1 = oracle_error(st, 1e-2, cfg);
    const double e2 = oracle_error(st, 5e-3, cfg);
    CHECK(e1 > 1e-13);  // above round-off so the ratio is meaningful
    const double ratio = e1 / e2;
    CHECK(ratio > 22.0);
    CHECK(ratio < 45.0);  // 2^5 = 32 for the advanced 4th-order solution
}

TEST_CASE("global convergence order against the geodesic oracle") {
    IntegratorConfig cfg;
    const SystemState st = free_body(2.0);
    const Curvature& c = st.curvature();
    const Body& b0 = st.bodies()[0];
    const double t_end = 1.0;
    std::vector<double> hs{1e-2, 5e-3, 2.5e-3}, errs;
    for (double h : hs) {
        SystemState cur = st;
        const int n = static_cast<int>(std::round(t_end / h));
        for (int k = 0; k < n; ++k) cur = step(cur, h, cfg).first;
        auto [qo, vo] = geodesic_flow(c, b0.q, TangentVector(b0.velocity(), b0.q), t_end);
        errs.push_back(norm_e(cur.bodies()[0].q.v() - qo.v()));
    }
    const double slope = std::log(errs[0] / errs[2]) / std::log(hs[0] / hs[2]);
    CHECK(slope > 3.5);
    CHECK(slope < 5.5);
}

TEST_CASE("projection keeps constraints at round-off") {
    IntegratorConfig cfg;
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    const Curvature c(1.0);
    std::vector<Body> bodies;
    for (int i = 0; i < 3; ++i) {
        const SurfacePoint q = project_point(c, {g(rng), g(rng), g(rng)});
        bodies.emplace_back(1.0, q, project_velocity(c, q, {g(rng), g(rng), g(rng)}).v());
    }
    SystemState st(c, std::move(bodies));
    for (int k = 0; k < 50; ++k) {
        st = step(st, 1e-3, cfg).first;
        CHECK(max_constraint_residual(st) < 1e-13);
    }
}

TEST_CASE("free body conserves energy to 1e-10 over t in [0,10]") {
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    const Trajectory traj = integrate(free_body(1.0), 10.0, cfg);
    CHECK(traj.stop.kind == StopReason::Kind::reached_t_end);
    const DriftReport d = invariant_drift(traj.samples);
    CHECK(d.energy < 1e-10);
}

TEST_CASE("equilateral relative equilibrium drifts below 1e-8 over three periods") {
    const SystemState lag = make_lagrangian(Curvature(1.0), 0.3, 1.0);
    const double omega = std::sqrt(ngon_omega_sq_over_m(Curvature(1.0), 3, 0.3));
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    const Trajectory traj = integrate(lag, 3 * 2 * M_PI / omega, cfg);
    const DriftReport d = invariant_drift(traj.samples);
    CHECK(d.energy < 1e-8);
    CHECK(d.constraint < 1e-13);
}

TEST_CASE("bounded 3-body orbit keeps the constraint residual below 1e-10") {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    const SurfacePoint q1 = project_point(c, {1.0, 0.1, 0.2});
    const SurfacePoint q2 = project_point(c, {-0.3, 1.0, 0.1});
    const SurfacePoint q3 = project_point(c, {0.1, -0.4, 1.0});
    bodies.emplace_back(1.0, q1, project_velocity(c, q1, {0, 0.3, -0.1}).v());
    bodies.emplace_back(1.0, q2, project_velocity(c, q2, {0.2, 0, 0.2}).v());
    bodies.emplace_back(1.0, q3, project_velocity(c, q3, {-0.2, 0.1, 0}).v());
    const Trajectory traj = integrate(SystemState(c, std::move(bodies)), 5.0);
    CHECK(traj.stop.kind == StopReason::Kind::reached_t_end);
    CHECK(invariant_drift(traj.samples).constraint < 1e-10);
}

TEST_CASE("forward-backward integration returns the initial positions") {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    const SurfacePoint q1 = project_point(c, {1.0, 0.0, 0.3});
    const SurfacePoint q2 = project_point(c, {-0.2, 1.0, -0.3});
    bodies.emplace_back(1.0, q1, project_velocity(c, q1, {0, 0.4, 0}).v());
    bodies.emplace_back(1.2, q2, project_velocity(c, q2, {0.1, 0, 0.3}).v());
    const SystemState st(c, bodies);

    IntegratorConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    const Trajectory fwd = integrate(st, 1.0, cfg);
    SystemState turn = fwd.samples.back().state;
    for (Body& b : turn.bodies()) b.p = -b.p;
    turn.set_time(0.0);
    const Trajectory bwd = integrate(turn, 1.0, cfg);
    for (std::size_t i = 0; i < st.size(); ++i)
        CHECK(norm_e(bwd.samples.back().state.bodies()[i].q.v() - st.bodies()[i].q.v()) < 1e-7);
}

TEST_CASE("invariant_drift on a single sample is zero") {
    const SystemState st = free_body(0.5);
    const std::vector<TrajectorySample> one{{0.0, st, compute_diagnostics(st)}};
    const DriftReport d = invariant_drift(one);
    CHECK(d.energy == 0.0);
    CHECK(d.angular_momentum == 0.0);
}

TEST_CASE("singularity events are located and classified") {
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::collision_M8m, 0.1, 1.0);
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    const Trajectory traj = integrate(sc.initial_state(), 5.0, cfg);
    REQUIRE(traj.stop.kind == StopReason::Kind::singularity_event);
    CHECK(min_pair_gap(traj.samples.back().state) < cfg.singularity_event_threshold);
    bool found_ca = false;
    for (const auto& e : traj.stop.classifications)
        if (e.kind == SingularityKind::collision_antipodal) found_ca = true;
    CHECK(found_ca);

    // a tighter threshold never yields an earlier event
    IntegratorConfig loose = cfg;
    loose.singularity_event_threshold = 1e-5;
    const Trajectory early = integrate(sc.initial_state(), 5.0, loose);
    REQUIRE(early.stop.kind == StopReason::Kind::singularity_event);
    CHECK(traj.stop.event_time >= early.stop.event_time);
}

TEST_CASE("immediate event on an already-singular start") {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    const double eps = 1e-6;
    bodies.emplace_back(1.0, project_point(c, {1.0, eps, 0}), Vec3{});
    bodies.emplace_back(1.0, SurfacePoint({-1.0, 0, 0}, c), Vec3{});
    const Trajectory traj = integrate(SystemState(c, std::move(bodies)), 1.0);
    CHECK(traj.stop.kind == StopReason::Kind::singularity_event);
    CHECK(traj.samples.size() == 1);
}

TEST_CASE("integrate rejects a non-advancing time span") {
    CHECK_THROWS_AS(integrate(free_body(1.0), -1.0), std::invalid_argument);
}
