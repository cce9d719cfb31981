#include "curvnb/singularities.hpp"

#include <cmath>

#include "curvnb/rk45.hpp"

namespace curvnb {

const char* to_string(GeodesicForceDirection d) {
    switch (d) {
        case GeodesicForceDirection::toward_x_axis: return "toward_(1,0)";
        case GeodesicForceDirection::toward_y_axis: return "toward_(0,1)";
        case GeodesicForceDirection::no_force: return "no_force";
        case GeodesicForceDirection::impossible: return "impossible";
    }
    return "?";
}

std::vector<SingularityClassification> classify(const SystemState& state, double threshold) {
    if (!(threshold > 0.0)) throw std::invalid_argument("classify: threshold must be positive");
    const Curvature& c = state.curvature();
    const auto& bs = state.bodies();
    std::vector<SingularityClassification> out;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        for (std::size_t j = i + 1; j < bs.size(); ++j) {
            const PairGeometry pg = pair_geometry(c, bs[i].q.v(), bs[j].q.v());
            if (std::abs(pg.gap) >= threshold) continue;
            // kappa q_i . q_j >= 1 on the hyperboloid, so only collisions exist there.
            const SingularityKind kind = (c.spherical() && pg.u < 0.0)
                                             ? SingularityKind::antipodal
                                             : SingularityKind::collision;
            out.push_back({i, j, kind, pg.gap});
        }
    }
    // A collision pair with a third body antipodal to either member lies in
    // Delta+ n Delta-.
    for (auto& e : out) {
        if (e.kind != SingularityKind::collision) continue;
        for (const auto& a : out) {
            if (a.kind != SingularityKind::antipodal) continue;
            if (a.i == e.i || a.i == e.j || a.j == e.i || a.j == e.j) {
                e.kind = SingularityKind::collision_antipodal;
                break;
            }
        }
    }
    return out;
}

GeodesicForceDirection direction_on_geodesic(double x, double y, double xdd, double ydd) {
    if (!(x > 0.0) || !(y > 0.0))
        throw std::domain_error("direction_on_geodesic: requires x, y > 0");
    if (xdd > 0.0 && ydd > 0.0) return GeodesicForceDirection::impossible;
    if (xdd > 0.0) return GeodesicForceDirection::toward_x_axis;
    if (xdd < 0.0 && ydd > 0.0) return GeodesicForceDirection::toward_y_axis;
    if (xdd == 0.0 && ydd > 0.0) return GeodesicForceDirection::toward_y_axis;
    // Case (c): xdd <= 0 and ydd <= 0.  The slope test ydd/xdd vs y/x,
    // cross-multiplied with xdd < 0 (inequality flips), with equality
    // meaning the acceleration is radial, i.e. no tangential force.
    const double lhs = x * ydd;
    const double rhs = y * xdd;
    if (lhs < rhs) return GeodesicForceDirection::toward_x_axis;
    if (lhs > rhs) return GeodesicForceDirection::toward_y_axis;
    return GeodesicForceDirection::no_force;
}

SystemState IsoscelesScenario::initial_state() const {
    const Curvature c(1.0);
    const Vec3 q1{-x0, y0, 0.0}, q2{x0, y0, 0.0}, q3{0.0, -1.0, 0.0};
    std::vector<Body> bodies;
    bodies.emplace_back(mass_M, SurfacePoint(q1, c), Vec3{});
    bodies.emplace_back(mass_M, SurfacePoint(q2, c), Vec3{});
    bodies.emplace_back(mass_m, SurfacePoint(q3, c), Vec3{});
    return SystemState(c, std::move(bodies));
}

IsoscelesScenario make_isosceles(IsoscelesCase kind, double x0, double m, double M_custom) {
    if (!(x0 > 0.0 && x0 < 1.0))
        throw std::domain_error("make_isosceles: x0 must lie in (0,1)");
    if (!(m > 0.0)) throw std::domain_error("make_isosceles: m must be positive");
    IsoscelesScenario sc;
    sc.kind = kind;
    sc.mass_m = m;
    switch (kind) {
        case IsoscelesCase::collision_M8m: sc.mass_M = 8.0 * m; break;
        case IsoscelesCase::repulsion_M2m: sc.mass_M = 2.0 * m; break;
        case IsoscelesCase::analytic_M4m:
            if (!(x0 < 1.0 / std::sqrt(3.0)))
                throw std::domain_error("make_isosceles: M=4m requires x0 < 1/sqrt(3)");
            sc.mass_M = 4.0 * m;
            break;
        case IsoscelesCase::custom:
            if (!(M_custom > 0.0)) throw std::domain_error("make_isosceles: custom M must be positive");
            sc.mass_M = M_custom;
            break;
    }
    sc.x0 = x0;
    sc.y0 = std::sqrt(1.0 - x0 * x0);
    const double M = sc.mass_M;
    sc.energy_h = 2.0 * M * m * sc.y0 / sc.x0 -
                  M * M * (2.0 * sc.y0 * sc.y0 - 1.0) / (2.0 * sc.x0 * sc.y0);
    return sc;
}

void reduced_rhs(double M, double m, double h, double x, double y, double& xdd, double& ydd) {
    if (!(x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0))
        throw SingularityError(0, 1, SingularityKind::collision_antipodal);
    const double d = M - 2.0 * m;
    xdd = (4.0 * d * x * x * x * x - 2.0 * d * x * x - M + 4.0 * m) / (4.0 * x * x * y) -
          (h / M) * x;
    ydd = (M + 2.0 * d * y * y - 4.0 * d * y * y * y * y) / (4.0 * x * y * y) - (h / M) * y;
}

std::vector<ReducedSample> integrate_reduced(const IsoscelesScenario& sc, double t_end,
                                             double rel_tol, double abs_tol, double min_gap_stop) {
    const double M = sc.mass_M, m = sc.mass_m, h = sc.energy_h;
    OdeRhs f = [M, m, h](double, std::span<const double> y, std::span<double> dy) {
        double xdd, ydd;
        reduced_rhs(M, m, h, y[0], y[1], xdd, ydd);
        dy[0] = y[2];
        dy[1] = y[3];
        dy[2] = xdd;
        dy[3] = ydd;
    };
    std::vector<double> y{sc.x0, sc.y0, 0.0, 0.0};
    std::vector<ReducedSample> out{{0.0, y[0], y[1], y[2], y[3]}};
    double t = 0.0, dt = 1e-4;
    auto gap = [](const std::vector<double>& s) {
        const double cg = 4.0 * s[0] * s[0] * s[1] * s[1];
        const double ag = s[0] * s[0];
        return std::min(cg, ag);
    };
    while (t < t_end) {
        dt = std::min(dt, t_end - t);
        const Rk45Step st = rk45_step(f, t, y, dt, rel_tol, abs_tol);
        if (st.error_norm > 1.0) {
            dt *= rk45_dt_factor(st.error_norm);
            if (dt < 1e-14) break;
            continue;
        }
        y = st.y;
        t += dt;
        out.push_back({t, y[0], y[1], y[2], y[3]});
        if (min_gap_stop > 0.0 && gap(y) < min_gap_stop) break;
        dt = std::min(dt * rk45_dt_factor(st.error_norm), 0.05);
    }
    return out;
}

}  // namespace curvnb
