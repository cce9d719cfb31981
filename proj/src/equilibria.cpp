#include "curvnb/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace curvnb {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

std::vector<Body> ring_bodies(const Curvature& c, double radial, double z, double omega,
                              const std::vector<double>& alpha, const std::vector<double>& masses) {
    std::vector<Body> bodies;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        const double ca = std::cos(alpha[i]), sa = std::sin(alpha[i]);
        const Vec3 q{radial * ca, radial * sa, z};
        const Vec3 v{-omega * radial * sa, omega * radial * ca, 0.0};
        bodies.emplace_back(masses[i], SurfacePoint(q, c), masses[i] * v);
    }
    return bodies;
}

}  // namespace

SystemState fixed_point_ngon(int n, double mass) {
    if (n < 3) throw std::domain_error("fixed_point_ngon: need n >= 3");
    if (n % 2 == 0)
        throw std::domain_error(
            "fixed_point_ngon: an even geodesic n-gon has n/2 antipodal vertex pairs");
    if (!(mass > 0.0)) throw std::domain_error("fixed_point_ngon: mass must be positive");
    const Curvature c(1.0);
    std::vector<double> alpha(n), masses(n, mass);
    for (int k = 0; k < n; ++k) alpha[k] = kTwoPi * k / n;
    return SystemState(c, ring_bodies(c, 1.0, 0.0, 0.0, alpha, masses));
}

SystemState fixed_point_tetrahedron(double mass) {
    if (!(mass > 0.0)) throw std::domain_error("fixed_point_tetrahedron: mass must be positive");
    const Curvature c(1.0);
    const double s23 = 2.0 * std::sqrt(2.0) / 3.0;
    const double s26 = 2.0 / std::sqrt(6.0);
    const double s13 = std::sqrt(2.0) / 3.0;
    const Vec3 qs[4] = {{0.0, 0.0, 1.0},
                        {0.0, s23, -1.0 / 3.0},
                        {-s26, -s13, -1.0 / 3.0},
                        {s26, -s13, -1.0 / 3.0}};
    std::vector<Body> bodies;
    for (const Vec3& q : qs) bodies.emplace_back(mass, project_point(c, q), Vec3{});
    return SystemState(c, std::move(bodies));
}

bool is_fixed_point(const SystemState& state, double tol) {
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (norm_e(state.bodies()[i].p) >= tol) return false;
        if (norm_e(grad_force_function(state, i)) >= tol) return false;
    }
    return true;
}

HemisphereWitness hemisphere_no_fixed_point_witness(const SystemState& state) {
    if (!state.curvature().spherical())
        throw std::domain_error("hemisphere witness: requires kappa > 0");
    bool any_above = false;
    std::size_t lowest = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double z = state.bodies()[i].q.v().z;
        if (z < -1e-15) throw std::domain_error("hemisphere witness: requires all z >= 0");
        if (norm_e(state.bodies()[i].p) > 1e-12)
            throw std::domain_error("hemisphere witness: requires a resting configuration");
        if (z > 1e-12) any_above = true;
        if (z < state.bodies()[lowest].q.v().z) lowest = i;
    }
    if (!any_above)
        throw std::domain_error("hemisphere witness: requires at least one body with z > 0");
    const double gz = grad_force_function(state, lowest).z;
    return {lowest, gz};
}

HyperboloidWitness hyperboloid_no_fixed_point_witness(const SystemState& state) {
    if (!state.curvature().hyperbolic())
        throw std::domain_error("hyperboloid witness: requires kappa < 0");
    if (state.size() < 2) throw std::domain_error("hyperboloid witness: requires n >= 2");
    std::size_t highest = 0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (norm_e(state.bodies()[i].p) > 1e-12)
            throw std::domain_error("hyperboloid witness: requires a resting configuration");
        if (state.bodies()[i].q.v().z > state.bodies()[highest].q.v().z) highest = i;
    }
    // At rest the constraint force vanishes, so zddot = (grad U)_z / m.
    const double zdd = grad_force_function(state, highest).z / state.bodies()[highest].mass;
    return {highest, -zdd};
}

double ngon_omega_sq_over_m(const Curvature& c, int n, double z) {
    if (n < 2) throw std::domain_error("ngon_omega_sq_over_m: need n >= 2");
    double level2;  // r^2 on the sphere, rho^2 on the hyperboloid
    if (c.spherical()) {
        if (!(z > -1.0 && z < 1.0)) throw std::domain_error("ngon_omega_sq_over_m: need |z| < 1");
        if (n % 2 == 0 && z == 0.0)
            throw SingularityError(0, n / 2, SingularityKind::antipodal);
        level2 = 1.0 - z * z;
    } else {
        if (!(z > 1.0)) throw std::domain_error("ngon_omega_sq_over_m: need z > 1");
        level2 = z * z - 1.0;
    }
    const int sig = c.sigma();
    auto pair_term = [&](double a) {
        // k_{0j} = cos(a) (1 - z^2) + z^2 on the sphere; c_{0j} = z^2 - rho^2 cos(a)
        // on the hyperboloid.  Both give gap = sigma (1 - k^2) > 0 off the
        // singular set.
        const double k = sig > 0 ? std::cos(a) * level2 + z * z : z * z - level2 * std::cos(a);
        const double gap = sig > 0 ? 1.0 - k * k : k * k - 1.0;
        return 2.0 * (1.0 - std::cos(a)) / std::pow(gap, 1.5);
    };
    double sum = 0.0;
    if (n % 2 == 1) {
        const int s = (n - 1) / 2;
        for (int j = 1; j <= s; ++j) sum += pair_term(kTwoPi * j / n);
    } else {
        const int s = n / 2;
        for (int j = 1; j < s; ++j) sum += pair_term(kTwoPi * j / n);
        // Diametrically opposite partner (alpha = pi), counted once.
        const double omz = sig > 0 ? 1.0 - z * z : z * z - 1.0;
        sum += 1.0 / (4.0 * z * z * std::abs(z) * std::pow(omz, 1.5));
    }
    return sum;
}

double eulerian_omega_sq(const Curvature& c, double z, double m, double M) {
    if (!(m > 0.0 && M > 0.0)) throw std::domain_error("eulerian_omega_sq: masses must be positive");
    if (c.spherical()) {
        if (z == 0.0) throw SingularityError(1, 2, SingularityKind::antipodal);
        if (!(z > -1.0 && z < 1.0)) throw std::domain_error("eulerian_omega_sq: need |z| < 1");
        return (4.0 * m * z + M / std::abs(z)) / (4.0 * z * z * std::pow(1.0 - z * z, 1.5));
    }
    if (!(z > 1.0)) throw std::domain_error("eulerian_omega_sq: need z > 1");
    return (4.0 * m * z * z + M) / (4.0 * z * z * z * std::pow(z * z - 1.0, 1.5));
}

double hyperbolic_re_omega_sq(double x, double m, double M) {
    if (x == 0.0) throw std::domain_error("hyperbolic_re_omega_sq: undefined for x = 0");
    if (!(m > 0.0 && M > 0.0))
        throw std::domain_error("hyperbolic_re_omega_sq: masses must be positive");
    const double x2 = x * x, ax = std::abs(x);
    return m / (x2 * ax * std::sqrt(x2 + 1.0)) + M / (4.0 * x2 * ax * std::pow(x2 + 1.0, 1.5));
}

namespace {

std::map<std::string, Equation> make_equations() {
    std::map<std::string, Equation> eqs;
    const double eps = 1e-6;
    eqs["eq4"] = {"eq4",
                  [](double z) { return 8.0 / (std::sqrt(3.0) * std::pow(1.0 + 2 * z * z - 3 * z * z * z * z, 1.5)); },
                  {{-1.0 + eps, 1.0 - eps}}};
    eqs["eq5"] = {"eq5",
                  [](double z) { return 8.0 / (std::sqrt(3.0) * std::pow(3 * z * z * z * z - 2 * z * z - 1.0, 1.5)); },
                  {{1.0 + eps, 12.0}}};
    eqs["ratio1"] = {"ratio1",
                     [](double z) { return eulerian_omega_sq(Curvature(1.0), z, 1.0, 1.0); },
                     {{-1.0 + eps, -eps}, {eps, 1.0 - eps}}};
    eqs["ratio2"] = {"ratio2",
                     [](double z) { return eulerian_omega_sq(Curvature(-1.0), z, 1.0, 1.0); },
                     {{1.0 + eps, 12.0}}};
    eqs["eq7"] = {"eq7", [](double x) { return hyperbolic_re_omega_sq(x, 1.0, 1.0); },
                  {{-25.0, -eps}, {eps, 25.0}}};
    eqs["two_body_s2"] = {"two_body_s2",
                          [](double z) { return ngon_omega_sq_over_m(Curvature(1.0), 2, z); },
                          {{-1.0 + eps, -eps}, {eps, 1.0 - eps}}};
    eqs["two_body_h2"] = {"two_body_h2",
                          [](double z) { return ngon_omega_sq_over_m(Curvature(-1.0), 2, z); },
                          {{1.0 + eps, 12.0}}};
    return eqs;
}

const std::map<std::string, Equation>& equations() {
    static const std::map<std::string, Equation> eqs = make_equations();
    return eqs;
}

}  // namespace

const Equation& equation_by_id(const std::string& id) {
    auto it = equations().find(id);
    if (it == equations().end()) throw std::invalid_argument("unknown equation id: " + id);
    return it->second;
}

std::vector<std::string> equation_ids() {
    std::vector<std::string> ids;
    for (const auto& [id, eq] : equations()) ids.push_back(id);
    return ids;
}

Equation ngon_equation(const Curvature& c, int n) {
    const double eps = 1e-6;
    std::vector<std::pair<double, double>> dom;
    if (c.spherical()) {
        if (n % 2 == 0)
            dom = {{-1.0 + eps, -eps}, {eps, 1.0 - eps}};
        else
            dom = {{-1.0 + eps, 1.0 - eps}};
    } else {
        dom = {{1.0 + eps, 12.0}};
    }
    const double kappa = c.kappa();
    return {"ngon:" + std::to_string(n),
            [kappa, n](double z) { return ngon_omega_sq_over_m(Curvature(kappa), n, z); }, dom};
}

RootScan solve_roots(const Equation& eq, double target,
                     const std::vector<std::pair<double, double>>& intervals, int grid) {
    if (grid < 8) throw std::invalid_argument("solve_roots: grid too coarse");
    RootScan scan{eq.id, target, {}};

    auto g = [&](double x) { return eq.f(x) - target; };

    for (const auto& [lo, hi] : intervals) {
        if (!(hi > lo)) throw std::invalid_argument("solve_roots: empty scan range");
        const double h = (hi - lo) / grid;

        // Simple roots: bisection on sign changes of f - target.
        double xl = lo, gl = g(xl);
        for (int i = 1; i <= grid; ++i) {
            const double xr = lo + i * h;
            const double gr = g(xr);
            if (gl == 0.0) scan.roots.push_back({xl, 0.0, false});
            if (gl * gr < 0.0) {
                double a = xl, b = xr, ga = gl;
                for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
                    const double m = 0.5 * (a + b);
                    const double gm = g(m);
                    if (ga * gm <= 0.0)
                        b = m;
                    else {
                        a = m;
                        ga = gm;
                    }
                }
                const double r = 0.5 * (a + b);
                scan.roots.push_back({r, std::abs(g(r)), false});
            }
            xl = xr;
            gl = gr;
        }

        // Tangency (double) roots: locate critical points through a sign scan
        // of the centered-difference derivative, then test whether f touches
        // the target there.
        const double dstep = h * 1e-3;
        auto fprime = [&](double x) { return (eq.f(x + dstep) - eq.f(x - dstep)) / (2.0 * dstep); };
        double xl2 = lo + h, dl = fprime(xl2);
        for (int i = 2; i < grid; ++i) {
            const double xr = lo + i * h;
            const double dr = fprime(xr);
            // A grid point can land exactly on a critical point (the centered
            // difference of an even function vanishes identically at 0), so an
            // exact zero is taken as located rather than bracketed.
            const bool exact_hit = dr == 0.0;
            if (exact_hit || dl * dr < 0.0) {
                double xc = xr;
                if (!exact_hit) {
                    double a = xl2, b = xr, da = dl;
                    for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
                        const double m = 0.5 * (a + b);
                        const double dm = fprime(m);
                        if (da * dm <= 0.0)
                            b = m;
                        else {
                            a = m;
                            da = dm;
                        }
                    }
                    xc = 0.5 * (a + b);
                }
                const double res = std::abs(g(xc));
                if (res < 1e-9) {
                    // A critical point on the target level is a double root;
                    // if the plain scan already caught it (exact grid hit),
                    // upgrade that root instead of adding another.
                    Root* existing = nullptr;
                    for (Root& r : scan.roots)
                        if (std::abs(r.value - xc) < 1e-6) existing = &r;
                    if (existing)
                        existing->tangency = true;
                    else
                        scan.roots.push_back({xc, res, true});
                }
            }
            xl2 = xr;
            dl = dr;
        }
    }

    std::sort(scan.roots.begin(), scan.roots.end(),
              [](const Root& a, const Root& b) { return a.value < b.value; });
    return scan;
}

RootScan solve_roots(const Equation& eq, double target, int grid) {
    return solve_roots(eq, target, eq.domain, grid);
}

SystemState build_relative_equilibrium(const EllipticREParams& params,
                                       const std::vector<double>& masses) {
    const Curvature& c = params.curvature;
    if (params.z.size() != masses.size() || params.alpha.size() != masses.size())
        throw std::invalid_argument("build_relative_equilibrium: inconsistent sizes");
    std::vector<Body> bodies;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const double z = params.z[i];
        double radial;
        if (c.spherical()) {
            if (!(z > -1.0 && z < 1.0)) throw std::invalid_argument("elliptic RE: need |z| < 1");
            radial = std::sqrt(1.0 - z * z);
        } else {
            if (!(z >= 1.0)) throw std::invalid_argument("elliptic RE: need z >= 1");
            radial = std::sqrt(z * z - 1.0);
        }
        const double ca = std::cos(params.alpha[i]), sa = std::sin(params.alpha[i]);
        const Vec3 q{radial * ca, radial * sa, z};
        const Vec3 v{-params.omega * radial * sa, params.omega * radial * ca, 0.0};
        bodies.emplace_back(masses[i], SurfacePoint(q, c), masses[i] * v);
    }
    return SystemState(c, std::move(bodies));
}

SystemState build_relative_equilibrium(const HyperbolicREParams& params,
                                       const std::vector<double>& masses) {
    const Curvature c(-1.0);
    if (params.x.size() != masses.size() || params.alpha.size() != masses.size())
        throw std::invalid_argument("build_relative_equilibrium: inconsistent sizes");
    std::vector<Body> bodies;
    for (std::size_t i = 0; i < masses.size(); ++i) {
        const double rho = std::sqrt(1.0 + params.x[i] * params.x[i]);
        const double sh = std::sinh(params.alpha[i]), ch = std::cosh(params.alpha[i]);
        const Vec3 q{params.x[i], rho * sh, rho * ch};
        const Vec3 v{0.0, params.omega * rho * ch, params.omega * rho * sh};
        bodies.emplace_back(masses[i], SurfacePoint(q, c), masses[i] * v);
    }
    return SystemState(c, std::move(bodies));
}

SystemState make_lagrangian(const Curvature& c, double z, double mass, int omega_sign) {
    return make_ngon_re(c, 3, z, mass, omega_sign);
}

SystemState make_ngon_re(const Curvature& c, int n, double z, double mass, int omega_sign) {
    const double w2 = mass * ngon_omega_sq_over_m(c, n, z);
    EllipticREParams params{c, std::vector<double>(n, z), {}, 0.0};
    params.alpha.resize(n);
    for (int k = 0; k < n; ++k) params.alpha[k] = kTwoPi * k / n;
    params.omega = (omega_sign < 0 ? -1.0 : 1.0) * std::sqrt(w2);
    return build_relative_equilibrium(params, std::vector<double>(n, mass));
}

SystemState make_eulerian(const Curvature& c, double z, double m, double M, int omega_sign) {
    const double w2 = eulerian_omega_sq(c, z, m, M);
    if (!(w2 > 0.0))
        throw std::domain_error("make_eulerian: no real omega at this height (omega^2 <= 0)");
    const double omega = (omega_sign < 0 ? -1.0 : 1.0) * std::sqrt(w2);
    std::vector<Body> bodies;
    bodies.emplace_back(m, SurfacePoint(Vec3{0.0, 0.0, 1.0}, c), Vec3{});
    const double radial = c.spherical() ? std::sqrt(1.0 - z * z) : std::sqrt(z * z - 1.0);
    // The second ring body is the exact negation of the first so the mirror
    // symmetry of the configuration holds to the last bit (sin(pi) would
    // leave a 1e-16 seed that the unstable antisymmetric mode amplifies).
    const Vec3 q2{radial, 0.0, z};
    const Vec3 v2{0.0, omega * radial, 0.0};
    bodies.emplace_back(M, SurfacePoint(q2, c), M * v2);
    bodies.emplace_back(M, SurfacePoint(Vec3{-q2.x, -q2.y, q2.z}, c),
                        M * Vec3{-v2.x, -v2.y, v2.z});
    return SystemState(c, std::move(bodies));
}

SystemState make_hyperbolic_re(double x, double m, double M, int omega_sign) {
    const double w2 = hyperbolic_re_omega_sq(x, m, M);
    const double omega = (omega_sign < 0 ? -1.0 : 1.0) * std::sqrt(w2);
    HyperbolicREParams params{{0.0, x, -x}, {0.0, 0.0, 0.0}, omega};
    return build_relative_equilibrium(params, {m, M, M});
}

REVerifyReport verify_relative_equilibrium(std::span<const TrajectorySample> trajectory,
                                           REKind kind, double distance_tol, double alignment_tol) {
    REVerifyReport rep;
    if (trajectory.size() < 2) {
        rep.failures.push_back("trajectory too short");
        return rep;
    }
    const SystemState& s0 = trajectory.front().state;
    const std::size_t n = s0.size();

    std::vector<double> d0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            d0.push_back(distance(s0.bodies()[i].q, s0.bodies()[j].q));

    auto phase_diff0 = [&](const SystemState& s, std::size_t i, std::size_t j) {
        // Angle of (x_i + i y_i) * conj(x_j + i y_j): constant for a rigid
        // rotation about z; avoids unwrapping.
        const Vec3& a = s.bodies()[i].q.v();
        const Vec3& b = s.bodies()[j].q.v();
        return std::atan2(a.y * b.x - a.x * b.y, a.x * b.x + a.y * b.y);
    };

    std::vector<double> level0(n), pd0;
    for (std::size_t i = 0; i < n; ++i)
        level0[i] = (kind == REKind::elliptic) ? s0.bodies()[i].q.v().z : s0.bodies()[i].q.v().x;
    std::vector<std::pair<std::size_t, std::size_t>> phase_pairs;
    if (kind == REKind::elliptic) {
        for (std::size_t i = 1; i < n; ++i) {
            const Vec3& a = s0.bodies()[0].q.v();
            const Vec3& b = s0.bodies()[i].q.v();
            if (std::hypot(a.x, a.y) > 1e-9 && std::hypot(b.x, b.y) > 1e-9)
                phase_pairs.emplace_back(0, i);
        }
        if (phase_pairs.empty() && n > 2) {
            for (std::size_t i = 2; i < n; ++i) phase_pairs.emplace_back(1, i);
        }
        pd0.reserve(phase_pairs.size());
        for (auto& [i, j] : phase_pairs) pd0.push_back(phase_diff0(s0, i, j));
    }

    for (const TrajectorySample& smp : trajectory) {
        const SystemState& s = smp.state;
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j, ++k)
                rep.max_distance_drift = std::max(
                    rep.max_distance_drift, std::abs(distance(s.bodies()[i].q, s.bodies()[j].q) - d0[k]));
        for (std::size_t i = 0; i < n; ++i) {
            const double lvl =
                (kind == REKind::elliptic) ? s.bodies()[i].q.v().z : s.bodies()[i].q.v().x;
            rep.max_level_drift = std::max(rep.max_level_drift, std::abs(lvl - level0[i]));
        }
        if (kind == REKind::elliptic) {
            for (std::size_t k2 = 0; k2 < phase_pairs.size(); ++k2) {
                const auto [i, j] = phase_pairs[k2];
                double d = phase_diff0(s, i, j) - pd0[k2];
                d = std::remainder(d, kTwoPi);
                rep.max_phase_drift = std::max(rep.max_phase_drift, std::abs(d));
            }
        } else {
            rep.max_alignment = std::max(rep.max_alignment, geodesic_alignment_value(s));
        }
    }

    if (rep.max_distance_drift >= distance_tol)
        rep.failures.push_back("pairwise distance drift " + std::to_string(rep.max_distance_drift));
    if (rep.max_level_drift >= distance_tol)
        rep.failures.push_back("level-coordinate drift " + std::to_string(rep.max_level_drift));
    if (kind == REKind::elliptic && rep.max_phase_drift >= distance_tol)
        rep.failures.push_back("phase-difference drift " + std::to_string(rep.max_phase_drift));
    if (kind == REKind::hyperbolic && rep.max_alignment >= alignment_tol)
        rep.failures.push_back("geodesic alignment residual " + std::to_string(rep.max_alignment));
    rep.pass = rep.failures.empty();
    return rep;
}

double fixed_geodesic_chase_residual(const std::vector<double>& alphas,
                                     const std::vector<double>& masses, double omega, double t_lo,
                                     double t_hi, int samples) {
    if (alphas.size() != masses.size() || alphas.size() < 2)
        throw std::invalid_argument("fixed_geodesic_chase_residual: need >= 2 bodies");
    double worst = 0.0;
    for (int s = 0; s < samples; ++s) {
        const double t = t_lo + (t_hi - t_lo) * s / std::max(1, samples - 1);
        for (std::size_t i = 0; i < alphas.size(); ++i) {
            double lhs = 0.0;
            for (std::size_t j = 0; j < alphas.size(); ++j) {
                if (j == i) continue;
                const double sij = std::sinh(alphas[i] - alphas[j]);
                if (sij == 0.0)
                    throw std::domain_error("fixed_geodesic_chase_residual: coincident phases");
                lhs += masses[j] *
                       (std::sinh(omega * t + alphas[j]) -
                        std::cosh(alphas[i] - alphas[j]) * std::sinh(omega * t + alphas[i])) /
                       std::pow(std::abs(sij), 3.0);
            }
            worst = std::max(worst, std::abs(lhs));
        }
    }
    return worst;
}

ParabolicAnsatz::ParabolicAnsatz(std::vector<std::array<double, 3>> abc_) : abc(std::move(abc_)) {
    if (abc.empty()) throw std::invalid_argument("ParabolicAnsatz: need at least one body");
    for (const auto& [a, b, c] : abc)
        if (std::abs(a * a + b * b - c * c + 1.0) > 1e-9)
            throw ConstraintError("ParabolicAnsatz: a^2 + b^2 - c^2 = -1 violated");
}

ParabolicVerdict parabolic_nonexistence_check(const std::vector<std::array<double, 3>>& abc,
                                              const std::vector<double>& masses) {
    if (abc.size() != masses.size())
        throw std::invalid_argument("parabolic_nonexistence_check: size mismatch");
    ParabolicVerdict v;
    double coeff = 0.0;
    bool all_equal = true;
    for (std::size_t i = 0; i < abc.size(); ++i) {
        const double bc = abc[i][1] - abc[i][2];
        coeff -= masses[i] * bc * bc;
        if (bc != 0.0) all_equal = false;
    }
    v.momentum_t_coefficient = coeff;
    if (!all_equal) {
        v.obstruction =
            "first angular-momentum component drifts linearly in t (coefficient nonzero)";
    } else {
        // b_i = c_i collapses the constraint to a_i^2 = -1.
        v.obstruction = "b_i = c_i forces a_i^2 = -1, which no real a_i satisfies";
    }
    return v;
}

ParabolicVerdict parabolic_nonexistence_check(const ParabolicAnsatz& ansatz,
                                              const std::vector<double>& masses) {
    return parabolic_nonexistence_check(ansatz.abc, masses);
}

}  // namespace curvnb
