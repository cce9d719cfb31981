#ifndef CURVNB_DYNAMICS_HPP
#define CURVNB_DYNAMICS_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "curvnb/geometry.hpp"

// Cotangent-potential n-body dynamics for kappa != 0: force function,
// gradients, equations of motion in first- and second-order form, and the
// first integrals (energy and angular momentum).  Units are dimensionless
// with G = 1.

namespace curvnb {

enum class SingularityKind { collision, antipodal, collision_antipodal };

const char* to_string(SingularityKind k);

struct SingularityError : std::runtime_error {
    SingularityError(std::size_t i, std::size_t j, SingularityKind kind);
    std::size_t body_i, body_j;
    SingularityKind kind;
};

struct Body {
    double mass;       // > 0
    SurfacePoint q;    // constrained position
    Vec3 p;            // momentum m*qdot, tangent at q

    Body(double mass, const SurfacePoint& q, const Vec3& p);
    Vec3 velocity() const { return p / mass; }
};

class SystemState {
  public:
    SystemState(const Curvature& c, std::vector<Body> bodies, double time = 0.0);

    const Curvature& curvature() const { return curv_; }
    const std::vector<Body>& bodies() const { return bodies_; }
    std::vector<Body>& bodies() { return bodies_; }
    std::size_t size() const { return bodies_.size(); }
    double time() const { return time_; }
    void set_time(double t) { time_ = t; }

  private:
    Curvature curv_;
    std::vector<Body> bodies_;
    double time_;
};

struct FirstIntegrals {
    double energy_h;
    Vec3 angular_momentum_c;
    double kinetic_T;
    double potential_U;
};

// Hard error tolerance on |sigma - sigma*(kappa q_i . q_j)^2| below which a
// pair is treated as a singular configuration.
inline constexpr double kSingularTol = 1e-14;

// Proximity sigma - sigma*(kappa q_i . q_j)^2 of a pair to the singular set;
// nonnegative up to round-off for kappa < 0.
double pair_gap(const Curvature& c, const Vec3& qi, const Vec3& qj);

// Pair quantities evaluated without the cancellation that 1 - u^2 suffers
// near the singular set: on the constraint surface,
// 1 -+ kappa q_i . q_j = kappa (q_j -+ q_i) . (q_j -+ q_i) / 2, which keeps
// full relative precision however close the pair comes to collision or to an
// antipodal configuration.
struct PairGeometry {
    double u;     // kappa inner(q_i, q_j)
    double gap;   // sigma - sigma u^2
    Vec3 toward;  // q_j - u q_i (the unnormalized force direction on body i)
};
PairGeometry pair_geometry(const Curvature& c, const Vec3& qi, const Vec3& qj);

/** Force function U_kappa(q); throws SingularityError on singular pairs. */
double force_function(const SystemState& state);

/** Constraint-simplified gradient of U_kappa with respect to body i.
 *
 * For kappa < 0 this is the Lorentz-adjusted operator (d/dx, d/dy, -d/dz)
 * applied to U, i.e. exactly the vector driving the equations of motion. */
Vec3 grad_force_function(const SystemState& state, std::size_t i);

// Homogeneous-form potential and gradient, valid off the constraint surface
// (positions need only satisfy kappa*inner(q,q) > 0).  These are the forms
// to use for finite differencing and homogeneity checks.
double force_function_homogeneous(const Curvature& c, std::span<const Vec3> positions,
                                  std::span<const double> masses);
Vec3 grad_force_function_homogeneous(const Curvature& c, std::span<const Vec3> positions,
                                     std::span<const double> masses, std::size_t i);

/** Accelerations qddot_i = grad_i U / m_i - kappa (qdot_i . qdot_i) q_i.
 *
 * The implied Lagrange multiplier is lambda_i = -kappa m_i (qdot_i . qdot_i);
 * it is absorbed into the constraint term and not returned. */
std::vector<Vec3> acceleration(const SystemState& state);

// First-order form: qdot_i = p_i/m_i, pdot_i = grad_i U - kappa (p_i.p_i)/m_i q_i.
void hamiltonian_rhs(const SystemState& state, std::vector<Vec3>& qdot, std::vector<Vec3>& pdot);

// h = T - U with T = (1/2) sum p_i.p_i / m_i.  The paper's redundant factor
// kappa q_i.q_i in T is identically 1 on the constraint surface and omitted.
double energy(const SystemState& state);
double kinetic_energy(const SystemState& state);

// c = sum q_i x p_i with the signature-dependent cross product.
Vec3 angular_momentum(const SystemState& state);
Vec3 angular_momentum_body(const SystemState& state, std::size_t i);

FirstIntegrals first_integrals(const SystemState& state);

// Maps every position and momentum through a linear isometry of the ambient
// space (an SO(3) rotation for kappa > 0, a Lorentz transformation for
// kappa < 0); all inner products, and hence the dynamics, are preserved.
SystemState apply_isometry(const Mat3& m, const SystemState& state);

}  // namespace curvnb

#endif
