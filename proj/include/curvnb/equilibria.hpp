#ifndef CURVNB_EQUILIBRIA_HPP
#define CURVNB_EQUILIBRIA_HPP

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "curvnb/integrate.hpp"

// Fixed points and relative-equilibria families: constructors, the algebraic
// residual equations tying omega^2 to the configuration, a bracketing root
// solver with tangency detection, trajectory-level verification, and the
// nonexistence checks (hemisphere witness, H^2 fixed points, fixed-geodesic
// hyperbolic chase, parabolic ansatz).

namespace curvnb {

// ---- fixed points ----

// Equal masses at the vertices of a regular n-gon on the geodesic z = 0 of
// the unit sphere, at rest.  n must be odd (even n-gons contain antipodal
// pairs).
SystemState fixed_point_ngon(int n, double mass);

SystemState fixed_point_tetrahedron(double mass);

// True iff all momenta and all force-function gradients have norm < tol.
bool is_fixed_point(const SystemState& state, double tol);

struct HemisphereWitness {
    std::size_t body;   // a body of minimal z
    double grad_z;      // dU/dz at that body, strictly positive
};

// For a resting configuration in the closed hemisphere z >= 0 with at least
// one body strictly above the boundary: the returned body accelerates upward,
// certifying that the configuration is not a fixed point.
HemisphereWitness hemisphere_no_fixed_point_witness(const SystemState& state);

struct HyperboloidWitness {
    std::size_t body;        // a body of maximal z
    double minus_z_accel;    // -zddot at that body, strictly positive
};

// For any resting configuration on the hyperboloid: the highest body
// accelerates downward, so no configuration is a fixed point.
HyperboloidWitness hyperboloid_no_fixed_point_witness(const SystemState& state);

// ---- residual equations (omega^2 as a function of the configuration) ----

// Regular n-gon of equal masses m rotating at height z: returns omega^2/m.
// kappa > 0: z in (-1,1), z != 0 when n is even; kappa < 0: z > 1.
double ngon_omega_sq_over_m(const Curvature& c, int n, double z);

// Central body m at the pole, bodies M at opposite ends of a rotating
// diameter at height z: returns omega^2.  kappa > 0: z in (-1,0)u(0,1);
// kappa < 0: z > 1.  A negative return value means no real omega exists.
double eulerian_omega_sq(const Curvature& c, double z, double m, double M);

// Central body m on the geodesic x = 0, bodies M at x and -x, all moving
// hyperbolically: returns omega^2.  x != 0.
double hyperbolic_re_omega_sq(double x, double m, double M);

// ---- root scanning ----

struct Equation {
    std::string id;
    std::function<double(double)> f;
    std::vector<std::pair<double, double>> domain;  // scan intervals
};

// Canonical ids: eq4, eq5, ratio1, ratio2, eq7, two_body_s2, two_body_h2.
const Equation& equation_by_id(const std::string& id);
std::vector<std::string> equation_ids();
Equation ngon_equation(const Curvature& c, int n);  // omega^2/m of the n-gon family

struct Root {
    double value;
    double residual;
    bool tangency;  // double root located through the derivative sign scan
};

struct RootScan {
    std::string equation;
    double target;
    std::vector<Root> roots;  // sorted by value
};

RootScan solve_roots(const Equation& eq, double target,
                     const std::vector<std::pair<double, double>>& intervals, int grid = 4096);
RootScan solve_roots(const Equation& eq, double target, int grid = 4096);

// ---- relative-equilibrium construction ----

struct EllipticREParams {
    Curvature curvature;
    std::vector<double> z;      // per-body height; kappa>0: r=sqrt(1-z^2), kappa<0: rho=sqrt(z^2-1)
    std::vector<double> alpha;  // per-body phase at t = 0
    double omega;
};

struct HyperbolicREParams {
    std::vector<double> x;      // per-body constant x; rho = sqrt(1+x^2)
    std::vector<double> alpha;  // per-body rapidity phase at t = 0
    double omega;
};

SystemState build_relative_equilibrium(const EllipticREParams& params,
                                       const std::vector<double>& masses);
SystemState build_relative_equilibrium(const HyperbolicREParams& params,
                                       const std::vector<double>& masses);

// Canonical families; omega is taken from the matching residual equation
// (omega_sign selects the sense of rotation).
SystemState make_lagrangian(const Curvature& c, double z, double mass, int omega_sign = +1);
SystemState make_ngon_re(const Curvature& c, int n, double z, double mass, int omega_sign = +1);
SystemState make_eulerian(const Curvature& c, double z, double m, double M, int omega_sign = +1);
SystemState make_hyperbolic_re(double x, double m, double M, int omega_sign = +1);

// ---- trajectory-level verification ----

enum class REKind { elliptic, hyperbolic };

struct REVerifyReport {
    bool pass = false;
    double max_distance_drift = 0.0;  // pairwise geodesic distances
    double max_level_drift = 0.0;     // z_i (elliptic) or x_i (hyperbolic)
    double max_phase_drift = 0.0;     // pairwise phase differences (elliptic)
    double max_alignment = 0.0;       // coplanarity residual (hyperbolic)
    std::vector<std::string> failures;
};

REVerifyReport verify_relative_equilibrium(std::span<const TrajectorySample> trajectory,
                                           REKind kind, double distance_tol = 1e-7,
                                           double alignment_tol = 1e-8);

// Max over the time grid and over bodies of the residual of the
// fixed-geodesic chase equation; a nonzero value certifies that no
// hyperbolic relative equilibrium rides the geodesic x = 0.
double fixed_geodesic_chase_residual(const std::vector<double>& alphas,
                                     const std::vector<double>& masses, double omega, double t_lo,
                                     double t_hi, int samples);

// ---- parabolic nonexistence ----

struct ParabolicAnsatz {
    // Per-body constants (a, b, c) with a^2 + b^2 - c^2 = -1.
    explicit ParabolicAnsatz(std::vector<std::array<double, 3>> abc);
    std::vector<std::array<double, 3>> abc;
};

struct ParabolicVerdict {
    bool nonexistent = true;
    // Coefficient of t in the first angular-momentum component,
    // -sum m_i (b_i - c_i)^2; nonzero unless b_i = c_i for all i.
    double momentum_t_coefficient = 0.0;
    std::string obstruction;
};

ParabolicVerdict parabolic_nonexistence_check(const ParabolicAnsatz& ansatz,
                                              const std::vector<double>& masses);

// Raw variant that also reports the contradiction for b_i = c_i inputs,
// which cannot satisfy the quadratic constraint at all.
ParabolicVerdict parabolic_nonexistence_check(const std::vector<std::array<double, 3>>& abc,
                                              const std::vector<double>& masses);

}  // namespace curvnb

#endif
