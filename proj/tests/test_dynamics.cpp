#include <doctest.h>

#include <cmath>
#include <random>

#include "curvnb/dynamics.hpp"
#include "curvnb/equilibria.hpp"
#include "curvnb/singularities.hpp"

using namespace curvnb;

namespace {

SystemState two_on_sphere(double angle, double m1 = 1.0, double m2 = 1.0) {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    bodies.emplace_back(m1, SurfacePoint({1, 0, 0}, c), Vec3{});
    bodies.emplace_back(m2, SurfacePoint({std::cos(angle), std::sin(angle), 0}, c), Vec3{});
    return SystemState(c, std::move(bodies));
}

}  // namespace

TEST_CASE("force function values") {
    CHECK(force_function(two_on_sphere(M_PI / 2)) == doctest::Approx(0.0));
    CHECK(force_function(two_on_sphere(M_PI / 3)) ==
          doctest::Approx(0.5773502691896258).epsilon(1e-13));

    const Curvature h2(-1.0);
    std::vector<Body> bodies;
    bodies.emplace_back(1.0, SurfacePoint({0, 0, 1}, h2), Vec3{});
    bodies.emplace_back(1.0, SurfacePoint({0, std::sinh(1.0), std::cosh(1.0)}, h2), Vec3{});
    const SystemState st(h2, std::move(bodies));
    CHECK(force_function(st) == doctest::Approx(1.3130352854993313).epsilon(1e-13));
}

TEST_CASE("singular configurations raise") {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    bodies.emplace_back(1.0, SurfacePoint({1, 0, 0}, c), Vec3{});
    bodies.emplace_back(1.0, SurfacePoint({-1, 0, 0}, c), Vec3{});
    const SystemState st(c, std::move(bodies));
    CHECK_THROWS_AS(force_function(st), SingularityError);
    try {
        force_function(st);
    } catch (const SingularityError& e) {
        CHECK(e.body_i == 0);
        CHECK(e.body_j == 1);
        CHECK(e.kind == SingularityKind::antipodal);
    }
}

TEST_CASE("gradient vanishes at the paper's fixed configurations") {
    const SystemState tetra = fixed_point_tetrahedron(1.0);
    for (std::size_t i = 0; i < 4; ++i)
        CHECK(norm_e(grad_force_function(tetra, i)) < 1e-12);
    for (int n : {3, 5}) {
        const SystemState ngon = fixed_point_ngon(n, 1.0);
        for (std::size_t i = 0; i < ngon.size(); ++i)
            CHECK(norm_e(grad_force_function(ngon, i)) < 1e-12);
    }
}

TEST_CASE("gradient matches constrained finite differences") {
    // Two bodies on the sphere; perturb along tangent directions of the
    // extended potential and compare directional derivatives.
    const SystemState st = two_on_sphere(0.9);
    const Curvature& c = st.curvature();
    std::vector<Vec3> pos{st.bodies()[0].q.v(), st.bodies()[1].q.v()};
    std::vector<double> ms{1.0, 1.0};
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 1.0);
    const double h = 1e-6;
    for (std::size_t i = 0; i < 2; ++i) {
        const Vec3 grad = grad_force_function(st, i);
        for (int rep = 0; rep < 5; ++rep) {
            Vec3 dir = project_velocity(c, st.bodies()[i].q, {g(rng), g(rng), g(rng)}).v();
            dir = dir / norm_e(dir);
            auto shifted = pos;
            shifted[i] = pos[i] + h * dir;
            const double up = force_function_homogeneous(c, shifted, ms);
            shifted[i] = pos[i] - h * dir;
            const double um = force_function_homogeneous(c, shifted, ms);
            const double fd = (up - um) / (2 * h);
            // tangent directions have no z component here (motion on z=0)
            const double ana = dot_e(grad, dir);
            CHECK(std::abs(fd - ana) / std::max(1.0, std::abs(ana)) < 1e-6);
        }
    }
}

TEST_CASE("acceleration reproduces the isosceles initial values") {
    // Bodies of mass M at (-+x0, y0, 0), mass m at (0,-1,0), at rest.
    const double x0 = std::sqrt(2.0) / 2, y0 = std::sqrt(2.0) / 2;
    const IsoscelesScenario sc = make_isosceles(IsoscelesCase::custom, x0, 1.0, 8.0);
    const SystemState st = sc.initial_state();
    const std::vector<Vec3> acc = acceleration(st);
    // body index 1 is m2 at (+x0, y0, 0)
    CHECK(acc[1].x == doctest::Approx(-4.242640687119285).epsilon(1e-12));
    CHECK(acc[1].y == doctest::Approx(4.242640687119285).epsilon(1e-12));
    CHECK(std::abs(acc[2].x) < 1e-13);  // m3 stays put
    CHECK(std::abs(acc[2].y) < 1e-13);

    // M = 2m at x0 = y0 = sqrt(2)/2 is a fixed point
    const IsoscelesScenario fp = make_isosceles(IsoscelesCase::repulsion_M2m, x0, 1.0);
    for (const Vec3& a : acceleration(fp.initial_state())) CHECK(norm_e(a) < 1e-13);
}

TEST_CASE("acceleration satisfies q . qddot = -(qdot . qdot)") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double kappa : {1.0, -1.0, 2.0, -0.5}) {
        const Curvature c(kappa);
        std::vector<Body> bodies;
        for (int i = 0; i < 3; ++i) {
            Vec3 raw{g(rng), g(rng), g(rng)};
            if (c.hyperbolic()) raw.z = std::sqrt(1.0 / -kappa + raw.x * raw.x + raw.y * raw.y);
            const SurfacePoint q = project_point(c, raw);
            const Vec3 v = project_velocity(c, q, {g(rng), g(rng), g(rng)}).v();
            bodies.emplace_back(1.0 + i * 0.25, q, (1.0 + i * 0.25) * v);
        }
        const SystemState st(c, std::move(bodies));
        const std::vector<Vec3> acc = acceleration(st);
        for (std::size_t i = 0; i < st.size(); ++i) {
            const Vec3 v = st.bodies()[i].velocity();
            CHECK(std::abs(inner(c, st.bodies()[i].q.v(), acc[i]) + inner(c, v, v)) < 1e-10);
        }
    }
}

TEST_CASE("hamiltonian rhs is consistent with acceleration") {
    const SystemState st = [&] {
        const Curvature c(1.0);
        std::vector<Body> bodies;
        bodies.emplace_back(1.3, SurfacePoint({1, 0, 0}, c), Vec3{0, 0.5, -0.2});
        bodies.emplace_back(0.7, SurfacePoint({0, 0.6, 0.8}, c), Vec3{0.3, 0, 0});
        return SystemState(c, std::move(bodies));
    }();
    std::vector<Vec3> qdot, pdot;
    hamiltonian_rhs(st, qdot, pdot);
    const std::vector<Vec3> acc = acceleration(st);
    for (std::size_t i = 0; i < st.size(); ++i) {
        CHECK(norm_e(qdot[i] - st.bodies()[i].velocity()) < 1e-14);
        CHECK(norm_e(pdot[i] - st.bodies()[i].mass * acc[i]) < 1e-14);
    }
}

TEST_CASE("free body feels the pure constraint force") {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    bodies.emplace_back(2.0, SurfacePoint({1, 0, 0}, c), Vec3{0, 1.2, 0});
    const SystemState st(c, std::move(bodies));
    std::vector<Vec3> qdot, pdot;
    hamiltonian_rhs(st, qdot, pdot);
    const Body& b = st.bodies()[0];
    const Vec3 expect = -(c.kappa() * inner(c, b.p, b.p) / b.mass) * b.q.v();
    CHECK(norm_e(pdot[0] - expect) < 1e-15);
}

TEST_CASE("fixed point has vanishing derivatives") {
    const SystemState tetra = fixed_point_tetrahedron(1.0);
    std::vector<Vec3> qdot, pdot;
    hamiltonian_rhs(tetra, qdot, pdot);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(norm_e(qdot[i]) == 0.0);
        CHECK(norm_e(pdot[i]) < 1e-12);
    }
}

TEST_CASE("first integrals") {
    CHECK(energy(two_on_sphere(M_PI / 2)) == doctest::Approx(0.0));

    // Hyperbolic relative equilibrium: the x component of each body's
    // angular momentum is constant in t; for the rho = 1 body it is -m*omega.
    const SystemState hre = make_hyperbolic_re(1.0, 1.0, 1.0);
    const double omega = std::sqrt(hyperbolic_re_omega_sq(1.0, 1.0, 1.0));
    CHECK(angular_momentum_body(hre, 0).x == doctest::Approx(-omega).epsilon(1e-12));
    for (double t : {0.4, 1.1}) {
        const Mat3 push = isometry_hyperbolic(omega * t);
        std::vector<Body> moved;
        for (const Body& b : hre.bodies())
            moved.emplace_back(b.mass, SurfacePoint(push * b.q.v(), hre.curvature()),
                               push * b.p);
        const SystemState at_t(hre.curvature(), std::move(moved), t);
        CHECK(angular_momentum_body(at_t, 0).x == doctest::Approx(-omega).epsilon(1e-12));
    }

    // Equal-mass equilateral relative equilibrium at constant z: total c is
    // parallel to the z axis.
    const SystemState lag = make_lagrangian(Curvature(1.0), 0.3, 1.0);
    const Vec3 c_total = angular_momentum(lag);
    CHECK(std::abs(c_total.x) < 1e-14);
    CHECK(std::abs(c_total.y) < 1e-14);
    CHECK(std::abs(c_total.z) > 0.1);

    // bookkeeping: the total is exactly the per-body sum
    Vec3 sum;
    for (std::size_t i = 0; i < lag.size(); ++i) sum += angular_momentum_body(lag, i);
    CHECK(norm_e(sum - c_total) == 0.0);

    const FirstIntegrals fi = first_integrals(lag);
    CHECK(std::abs(fi.energy_h - (fi.kinetic_T - fi.potential_U)) < 1e-12);
}

TEST_CASE("Euler identity and degree-zero homogeneity") {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g(0.0, 1.0);
    for (double kappa : {1.0, -1.0}) {
        const Curvature c(kappa);
        std::vector<Vec3> pos;
        std::vector<double> ms{1.0, 2.0, 0.5};
        for (int i = 0; i < 3; ++i) {
            Vec3 raw{g(rng), g(rng), g(rng)};
            if (c.hyperbolic()) raw.z = std::sqrt(1.0 + raw.x * raw.x + raw.y * raw.y);
            pos.push_back(project_point(c, raw).v());
        }
        const double u0 = force_function_homogeneous(c, pos, ms);
        for (double eta : {0.5, 2.0}) {
            std::vector<Vec3> scaled;
            for (const Vec3& q : pos) scaled.push_back(q * eta);
            CHECK(std::abs(force_function_homogeneous(c, scaled, ms) - u0) < 1e-12);
            for (std::size_t i = 0; i < 3; ++i) {
                const Vec3 grad = grad_force_function_homogeneous(c, scaled, ms, i);
                CHECK(std::abs(inner(c, scaled[i], grad)) < 1e-10);
            }
        }
    }
}

TEST_CASE("potential approaches the Newtonian value as kappa -> 0") {
    const double r = 0.8;
    auto u = [&](double kappa) {
        const Curvature c(kappa);
        std::vector<Body> bodies;
        if (kappa > 0) {
            const double R = 1.0 / std::sqrt(kappa);
            bodies.emplace_back(1.0, SurfacePoint({R, 0, 0}, c), Vec3{});
            bodies.emplace_back(1.0,
                                SurfacePoint({R * std::cos(r / R), R * std::sin(r / R), 0}, c),
                                Vec3{});
        } else {
            const double R = 1.0 / std::sqrt(-kappa);
            bodies.emplace_back(1.0, SurfacePoint({0, 0, R}, c), Vec3{});
            bodies.emplace_back(
                1.0, SurfacePoint({R * std::sinh(r / R), 0, R * std::cosh(r / R)}, c), Vec3{});
        }
        return force_function(SystemState(c, std::move(bodies)));
    };
    for (double sign : {1.0, -1.0}) {
        const double e2 = std::abs(u(sign * 1e-2) - 1.0 / r);
        const double e4 = std::abs(u(sign * 1e-4) - 1.0 / r);
        CHECK(e2 / e4 > 80.0);
        CHECK(e2 / e4 < 120.0);
    }
}

TEST_CASE("isometries carry states to equivalent states") {
    const SystemState st = make_hyperbolic_re(1.0, 1.0, 1.0);
    const double u0 = force_function(st);
    const double h0 = energy(st);
    const SystemState moved =
        apply_isometry(isometry_parabolic(0.7) * isometry_elliptic(0.4), st);
    CHECK(std::abs(force_function(moved) - u0) < 1e-12);
    CHECK(std::abs(energy(moved) - h0) < 1e-12);

    const SystemState lag = make_lagrangian(Curvature(1.0), 0.3, 1.0);
    const SystemState rotated = apply_isometry(so3_rotation_z(1.1), lag);
    CHECK(std::abs(energy(rotated) - energy(lag)) < 1e-12);
}

TEST_CASE("state validation") {
    const Curvature c(1.0);
    std::vector<Body> bodies;
    CHECK_THROWS_AS(Body(-1.0, SurfacePoint({1, 0, 0}, c), Vec3{}), std::invalid_argument);
    CHECK_THROWS_AS(SystemState(c, {}), std::invalid_argument);
}
