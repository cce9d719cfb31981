#include <doctest.h>

#include <cmath>

#include "curvnb/integrate.hpp"
#include "curvnb/singularities.hpp"

using namespace curvnb;

TEST_CASE("classification of near-singular pairs") {
    const Curvature s2(1.0);
    {
        std::vector<Body> bodies;
        bodies.emplace_back(1.0, SurfacePoint({1, 0, 0}, s2), Vec3{});
        bodies.emplace_back(1.0, SurfacePoint({-1, 0, 0}, s2), Vec3{});
        const auto cls = classify(SystemState(s2, std::move(bodies)), 1e-6);
        REQUIRE(cls.size() == 1);
        CHECK(cls[0].kind == SingularityKind::antipodal);
    }
    {
        // colliding pair with the third body at the opposite diameter end
        const double d = 1e-5;
        std::vector<Body> bodies;
        bodies.emplace_back(1.0, project_point(s2, {d, 1, 0}), Vec3{});
        bodies.emplace_back(1.0, project_point(s2, {-d, 1, 0}), Vec3{});
        bodies.emplace_back(1.0, SurfacePoint({0, -1, 0}, s2), Vec3{});
        const auto cls = classify(SystemState(s2, std::move(bodies)), 1e-6);
        REQUIRE(cls.size() == 3);
        int ca = 0, anti = 0;
        for (const auto& e : cls) {
            if (e.kind == SingularityKind::collision_antipodal) {
                ++ca;
                CHECK(e.i == 0);
                CHECK(e.j == 1);
            }
            if (e.kind == SingularityKind::antipodal) ++anti;
        }
        CHECK(ca == 1);
        CHECK(anti == 2);
    }
    {
        // no antipodal set on the hyperboloid
        const Curvature h2(-1.0);
        std::vector<Body> bodies;
        bodies.emplace_back(1.0, SurfacePoint({0, 0, 1}, h2), Vec3{});
        bodies.emplace_back(1.0, SurfacePoint({0, std::sinh(1.5), std::cosh(1.5)}, h2), Vec3{});
        CHECK(classify(SystemState(h2, std::move(bodies)), 1e-6).empty());
    }
}

TEST_CASE("force direction on the geodesic") {
    using D = GeodesicForceDirection;
    const double x = 0.6, y = 0.8;
    CHECK(direction_on_geodesic(x, y, 1.0, -0.75) == D::toward_x_axis);   // (a)
    CHECK(direction_on_geodesic(x, y, -1.0, 0.75) == D::toward_y_axis);   // (b)
    CHECK(direction_on_geodesic(x, y, -0.3, -1.0) == D::toward_x_axis);   // (c), ydd/xdd > y/x
    CHECK(direction_on_geodesic(x, y, -1.0, -0.3) == D::toward_y_axis);   // (c), ydd/xdd < y/x
    CHECK(direction_on_geodesic(x, y, -0.6, -0.8) == D::no_force);        // (c), equal slopes
    CHECK(direction_on_geodesic(x, y, 0.0, 0.0) == D::no_force);
    CHECK(direction_on_geodesic(x, y, 1.0, 1.0) == D::impossible);        // (d)
    CHECK_THROWS_AS(direction_on_geodesic(-0.1, 0.5, 1.0, 1.0), std::domain_error);
}

TEST_CASE("isosceles scenario construction") {
    CHECK_THROWS_AS(make_isosceles(IsoscelesCase::collision_M8m, 0.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_isosceles(IsoscelesCase::collision_M8m, 1.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_isosceles(IsoscelesCase::analytic_M4m, 0.6, 1.0), std::domain_error);
    CHECK_THROWS_AS(make_isosceles(IsoscelesCase::custom, 0.5, 1.0, -2.0), std::domain_error);

    // M = 4m: the energy constant from rest is 8 m^2 x0/y0
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::analytic_M4m, 0.2, 1.0);
    CHECK(sc.energy_h == doctest::Approx(1.632993161855452).epsilon(1e-13));
    CHECK(sc.energy_h == doctest::Approx(8.0 * sc.x0 / sc.y0).epsilon(1e-13));

    const SystemState st = sc.initial_state();
    CHECK(st.size() == 3);
    CHECK(st.bodies()[0].mass == 4.0);
    CHECK(st.bodies()[2].q.v().y == -1.0);
}

TEST_CASE("reduced right-hand side") {
    // M = 2m at x = y = sqrt(2)/2 from rest: both accelerations vanish.
    const double x = std::sqrt(2.0) / 2;
    const IsoscelesScenario fp = make_isosceles(IsoscelesCase::repulsion_M2m, x, 1.0);
    double xdd, ydd;
    reduced_rhs(fp.mass_M, fp.mass_m, fp.energy_h, x, x, xdd, ydd);
    CHECK(std::abs(xdd) < 1e-13);
    CHECK(std::abs(ydd) < 1e-13);

    // M = 8m near (0,1): both accelerations diverge to -inf with ydd/xdd -> 0
    const IsoscelesScenario coll = make_isosceles(IsoscelesCase::collision_M8m, 0.05, 1.0);
    double xs = 1e-4, ys = std::sqrt(1 - xs * xs);
    reduced_rhs(coll.mass_M, coll.mass_m, coll.energy_h, xs, ys, xdd, ydd);
    CHECK(xdd < -1e6);
    CHECK(ydd < 0.0);
    CHECK(std::abs(ydd / xdd) < 1e-2);

    // M = 4m near (0,1): xdd -> -m and ydd -> -h/4m (finite forces)
    const IsoscelesScenario ana = make_isosceles(IsoscelesCase::analytic_M4m, 0.2, 1.0);
    xs = 1e-6;
    ys = std::sqrt(1 - xs * xs);
    reduced_rhs(ana.mass_M, ana.mass_m, ana.energy_h, xs, ys, xdd, ydd);
    CHECK(xdd == doctest::Approx(-1.0).epsilon(1e-4));
    CHECK(ydd == doctest::Approx(-ana.energy_h / 4.0).epsilon(1e-4));

    CHECK_THROWS_AS(reduced_rhs(4.0, 1.0, 1.0, 0.0, 1.0, xdd, ydd), SingularityError);
}

TEST_CASE("reduced integration conserves its energy integral") {
    // M = 4m: xdot^2 + ydot^2 + 2mx/y = h/(4m) along the reduced flow.
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::analytic_M4m, 0.2, 1.0);
    const auto samples = integrate_reduced(sc, 0.5);
    REQUIRE(samples.size() > 10);
    const double target = sc.energy_h / (4.0 * sc.mass_m);
    for (const ReducedSample& s : samples) {
        const double e = s.xdot * s.xdot + s.ydot * s.ydot + 2.0 * sc.mass_m * s.x / s.y;
        CHECK(std::abs(e - target) < 1e-9);
    }
}

TEST_CASE("the M=4m collision carries finite velocity and force") {
    // The reduced system stays smooth through x -> 0, so it can be driven
    // much closer to the collision than the full one: speed^2 approaches
    // h/(4m) and the accelerations approach (-m, -h/4m).
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::analytic_M4m, 0.2, 1.0);
    const auto samples = integrate_reduced(sc, 2.0, 1e-12, 1e-14, 2.5e-13);
    const ReducedSample& last = samples.back();
    REQUIRE(last.x < 5e-7);
    const double limit = sc.energy_h / (4.0 * sc.mass_m);
    const double speed2 = last.xdot * last.xdot + last.ydot * last.ydot;
    CHECK(std::abs(speed2 - limit) < 1e-6);
    double xdd, ydd;
    reduced_rhs(sc.mass_M, sc.mass_m, sc.energy_h, last.x, last.y, xdd, ydd);
    CHECK(std::abs(xdd + sc.mass_m) < 1e-3);
    CHECK(std::abs(ydd + limit) < 1e-3);
}

TEST_CASE("the M=2m pair gap never falls below its initial value") {
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::repulsion_M2m, 0.1, 1.0);
    const auto samples = integrate_reduced(sc, 20.0);
    const double gap0 = 4.0 * sc.x0 * sc.x0 * sc.y0 * sc.y0;
    double gap_min = gap0, x_min = 1.0, x_max = 0.0;
    for (const ReducedSample& s : samples) {
        gap_min = std::min(gap_min, 4.0 * s.x * s.x * s.y * s.y);
        x_min = std::min(x_min, s.x);
        x_max = std::max(x_max, s.x);
    }
    CHECK(gap_min >= gap0 - 1e-9);
    CHECK(x_min >= sc.x0 - 1e-7);
    CHECK(x_max > 0.9);
}

TEST_CASE("isosceles symmetry is preserved by the full integration") {
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::collision_M8m, 0.3, 1.0);
    IntegratorConfig cfg;
    cfg.rel_tol = 1e-12;
    cfg.abs_tol = 1e-14;
    const Trajectory traj = integrate(sc.initial_state(), 0.5, cfg);
    for (const TrajectorySample& s : traj.samples) {
        const Vec3& q1 = s.state.bodies()[0].q.v();
        const Vec3& q2 = s.state.bodies()[1].q.v();
        const Vec3& q3 = s.state.bodies()[2].q.v();
        CHECK(std::abs(q1.x + q2.x) < 1e-10);  // mirror in the y axis
        CHECK(std::abs(q1.y - q2.y) < 1e-10);
        CHECK(norm_e(q3 - Vec3{0, -1, 0}) < 1e-10);  // m3 remains fixed
        CHECK(std::abs(q1.z) < 1e-12);
    }
}
