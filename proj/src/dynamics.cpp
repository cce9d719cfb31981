#include "curvnb/dynamics.hpp"

#include <cmath>

namespace curvnb {

const char* to_string(SingularityKind k) {
    switch (k) {
        case SingularityKind::collision: return "collision";
        case SingularityKind::antipodal: return "antipodal";
        case SingularityKind::collision_antipodal: return "collision_antipodal";
    }
    return "?";
}

SingularityError::SingularityError(std::size_t i, std::size_t j, SingularityKind kind_)
    : std::runtime_error("singular configuration (" + std::string(to_string(kind_)) + ") for pair (" +
                         std::to_string(i) + "," + std::to_string(j) + ")"),
      body_i(i), body_j(j), kind(kind_) {}

Body::Body(double mass_, const SurfacePoint& q_, const Vec3& p_) : mass(mass_), q(q_), p(p_) {
    if (!(mass > 0.0)) throw std::invalid_argument("Body: mass must be positive");
    TangentVector check(p_, q_);  // enforces tangency
    (void)check;
}

SystemState::SystemState(const Curvature& c, std::vector<Body> bodies, double time)
    : curv_(c), bodies_(std::move(bodies)), time_(time) {
    if (bodies_.empty()) throw std::invalid_argument("SystemState: need at least one body");
    for (const Body& b : bodies_)
        if (b.q.curvature().kappa() != c.kappa())
            throw std::invalid_argument("SystemState: bodies must share the system curvature");
}

PairGeometry pair_geometry(const Curvature& c, const Vec3& qi, const Vec3& qj) {
    const double k = c.kappa();
    const Vec3 d = qj - qi, s = qj + qi;
    const double one_minus_u = 0.5 * k * inner(c, d, d);
    const double one_plus_u = 0.5 * k * inner(c, s, s);
    PairGeometry pg;
    pg.u = 0.5 * (one_plus_u - one_minus_u);
    pg.gap = c.sigma() * one_minus_u * one_plus_u;
    // q_j - u q_i rewritten so the small factor is the accurately known one.
    pg.toward = one_minus_u <= one_plus_u ? d + one_minus_u * qi : s - one_plus_u * qi;
    return pg;
}

double pair_gap(const Curvature& c, const Vec3& qi, const Vec3& qj) {
    return pair_geometry(c, qi, qj).gap;
}

namespace {

PairGeometry checked_pair(const Curvature& c, const Vec3& qi, const Vec3& qj, std::size_t i,
                          std::size_t j) {
    const PairGeometry pg = pair_geometry(c, qi, qj);
    if (std::abs(pg.gap) < kSingularTol)
        throw SingularityError(i, j, pg.u > 0.0 ? SingularityKind::collision
                                                : SingularityKind::antipodal);
    return pg;
}

}  // namespace

double force_function(const SystemState& state) {
    const Curvature& c = state.curvature();
    const double rk = std::sqrt(c.sigma() * c.kappa());  // (sigma*kappa)^{1/2} = sqrt(|kappa|)
    const auto& bs = state.bodies();
    double u_total = 0.0;
    for (std::size_t i = 0; i < bs.size(); ++i) {
        for (std::size_t j = i + 1; j < bs.size(); ++j) {
            const PairGeometry pg = checked_pair(c, bs[i].q.v(), bs[j].q.v(), i, j);
            u_total += bs[i].mass * bs[j].mass * rk * pg.u / std::sqrt(pg.gap);
        }
    }
    return u_total;
}

Vec3 grad_force_function(const SystemState& state, std::size_t i) {
    const Curvature& c = state.curvature();
    const double rk32 = std::pow(c.sigma() * c.kappa(), 1.5);
    const auto& bs = state.bodies();
    Vec3 g;
    for (std::size_t j = 0; j < bs.size(); ++j) {
        if (j == i) continue;
        const PairGeometry pg = checked_pair(c, bs[i].q.v(), bs[j].q.v(), i, j);
        g += (bs[i].mass * bs[j].mass * rk32 / std::pow(pg.gap, 1.5)) * pg.toward;
    }
    return g;
}

double force_function_homogeneous(const Curvature& c, std::span<const Vec3> positions,
                                  std::span<const double> masses) {
    const double k = c.kappa();
    const double sig = c.sigma();
    const double rk = std::sqrt(sig * k);
    double u_total = 0.0;
    for (std::size_t i = 0; i < positions.size(); ++i) {
        const double ni = std::sqrt(k * inner(c, positions[i], positions[i]));
        for (std::size_t j = i + 1; j < positions.size(); ++j) {
            const double nj = std::sqrt(k * inner(c, positions[j], positions[j]));
            const double u = k * inner(c, positions[i], positions[j]) / (ni * nj);
            const double gap = sig - sig * u * u;
            if (std::abs(gap) < kSingularTol)
                throw SingularityError(i, j, u > 0.0 ? SingularityKind::collision
                                                     : SingularityKind::antipodal);
            u_total += masses[i] * masses[j] * rk * u / std::sqrt(gap);
        }
    }
    return u_total;
}

Vec3 grad_force_function_homogeneous(const Curvature& c, std::span<const Vec3> positions,
                                     std::span<const double> masses, std::size_t i) {
    const double k = c.kappa();
    const double sig = c.sigma();
    const double rk = std::sqrt(sig * k);
    const double nii = k * inner(c, positions[i], positions[i]);
    const double ni = std::sqrt(nii);
    Vec3 g;
    for (std::size_t j = 0; j < positions.size(); ++j) {
        if (j == i) continue;
        const double nj = std::sqrt(k * inner(c, positions[j], positions[j]));
        const double kij = k * inner(c, positions[i], positions[j]);
        const double u = kij / (ni * nj);
        const double gap = sig - sig * u * u;
        if (std::abs(gap) < kSingularTol)
            throw SingularityError(i, j, u > 0.0 ? SingularityKind::collision
                                                 : SingularityKind::antipodal);
        const Vec3 num = sig * k * positions[j] - (sig * k * kij / nii) * positions[i];
        g += (masses[i] * masses[j] * rk / (ni * nj * std::pow(gap, 1.5))) * num;
    }
    return g;
}

std::vector<Vec3> acceleration(const SystemState& state) {
    const Curvature& c = state.curvature();
    const auto& bs = state.bodies();
    std::vector<Vec3> acc(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) {
        const Vec3 v = bs[i].velocity();
        acc[i] = grad_force_function(state, i) / bs[i].mass -
                 c.kappa() * inner(c, v, v) * bs[i].q.v();
    }
    return acc;
}

void hamiltonian_rhs(const SystemState& state, std::vector<Vec3>& qdot, std::vector<Vec3>& pdot) {
    const Curvature& c = state.curvature();
    const auto& bs = state.bodies();
    qdot.resize(bs.size());
    pdot.resize(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) {
        qdot[i] = bs[i].p / bs[i].mass;
        pdot[i] = grad_force_function(state, i) -
                  (c.kappa() * inner(c, bs[i].p, bs[i].p) / bs[i].mass) * bs[i].q.v();
    }
}

double kinetic_energy(const SystemState& state) {
    const Curvature& c = state.curvature();
    double t = 0.0;
    for (const Body& b : state.bodies()) t += inner(c, b.p, b.p) / b.mass;
    return 0.5 * t;
}

double energy(const SystemState& state) { return kinetic_energy(state) - force_function(state); }

Vec3 angular_momentum_body(const SystemState& state, std::size_t i) {
    const Body& b = state.bodies()[i];
    return cross(state.curvature(), b.q.v(), b.p);
}

Vec3 angular_momentum(const SystemState& state) {
    Vec3 c;
    for (std::size_t i = 0; i < state.size(); ++i) c += angular_momentum_body(state, i);
    return c;
}

FirstIntegrals first_integrals(const SystemState& state) {
    FirstIntegrals fi;
    fi.kinetic_T = kinetic_energy(state);
    fi.potential_U = force_function(state);
    fi.energy_h = fi.kinetic_T - fi.potential_U;
    fi.angular_momentum_c = angular_momentum(state);
    return fi;
}

SystemState apply_isometry(const Mat3& m, const SystemState& state) {
    std::vector<Body> bodies;
    bodies.reserve(state.size());
    for (const Body& b : state.bodies())
        bodies.emplace_back(b.mass, SurfacePoint(m * b.q.v(), state.curvature()), m * b.p);
    return SystemState(state.curvature(), std::move(bodies), state.time());
}

}  // namespace curvnb
