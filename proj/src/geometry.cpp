#include "curvnb/geometry.hpp"

#include <algorithm>

namespace curvnb {

namespace {

// Absolute tolerance for accepting externally supplied constrained data,
// scaled by the magnitude of the quantities involved.
double scaled_tol(double magnitude) { return 1e-12 * std::max(1.0, magnitude); }

double clamped_acos(double u) {
    if (u > 1.0) {
        if (u > 1.0 + 1e-10) throw ConstraintError("acos argument above 1 beyond tolerance");
        u = 1.0;
    } else if (u < -1.0) {
        if (u < -1.0 - 1e-10) throw ConstraintError("acos argument below -1 beyond tolerance");
        u = -1.0;
    }
    return std::acos(u);
}

double clamped_acosh(double u) {
    if (u < 1.0) {
        if (u < 1.0 - 1e-10) throw ConstraintError("acosh argument below 1 beyond tolerance");
        u = 1.0;
    }
    return std::acosh(u);
}

}  // namespace

double kappa_sn(double kappa, double x) {
    if (kappa > 0.0) {
        const double rk = std::sqrt(kappa);
        return std::sin(rk * x) / rk;
    }
    if (kappa < 0.0) {
        const double rk = std::sqrt(-kappa);
        return std::sinh(rk * x) / rk;
    }
    return x;
}

double kappa_csn(double kappa, double x) {
    if (kappa > 0.0) return std::cos(std::sqrt(kappa) * x);
    if (kappa < 0.0) return std::cosh(std::sqrt(-kappa) * x);
    return 1.0;
}

double kappa_tn(double kappa, double x) { return kappa_sn(kappa, x) / kappa_csn(kappa, x); }

double kappa_ctn(double kappa, double x) {
    const double sn = kappa_sn(kappa, x);
    if (sn == 0.0) throw std::domain_error("kappa_ctn: pole of ctn (sn_kappa(x) = 0)");
    return kappa_csn(kappa, x) / sn;
}

double constraint_residual(const Curvature& c, const Vec3& q) {
    return std::abs(c.kappa() * inner(c, q, q) - 1.0);
}

SurfacePoint::SurfacePoint(const Vec3& v, const Curvature& c) : v_(v), curv_(c) {
    const double mag = std::abs(c.kappa()) * dot_e(v, v);
    if (constraint_residual(c, v) > scaled_tol(mag))
        throw ConstraintError("SurfacePoint: kappa*inner(q,q) != 1");
    if (c.hyperbolic() && v.z <= 0.0)
        throw ConstraintError("SurfacePoint: hyperboloid sheet requires z > 0");
}

TangentVector::TangentVector(const Vec3& v, const SurfacePoint& at) : v_(v), at_(at) {
    const Curvature& c = at.curvature();
    const double mag = norm_e(at.v()) * norm_e(v);
    if (std::abs(inner(c, at.v(), v)) > scaled_tol(mag))
        throw ConstraintError("TangentVector: inner(q,v) != 0");
}

double distance(const SurfacePoint& a, const SurfacePoint& b) {
    const Curvature& c = a.curvature();
    const double k = c.kappa();
    const double u = k * inner(c, a.v(), b.v());
    if (c.spherical()) return clamped_acos(u) / std::sqrt(k);
    return clamped_acosh(u) / std::sqrt(-k);
}

double distance_extended(const Curvature& c, const Vec3& a, const Vec3& b) {
    const double k = c.kappa();
    const double na = k * inner(c, a, a);
    const double nb = k * inner(c, b, b);
    if (!(na > 0.0) || !(nb > 0.0))
        throw std::domain_error("distance_extended: kappa*inner(a,a) must be positive");
    const double u = k * inner(c, a, b) / std::sqrt(na * nb);
    if (c.spherical()) return clamped_acos(u) / std::sqrt(k);
    return clamped_acosh(u) / std::sqrt(-k);
}

SurfacePoint project_point(const Curvature& c, const Vec3& a) {
    const double n = c.kappa() * inner(c, a, a);
    if (!(n > 0.0)) throw std::domain_error("project_point: kappa*inner(a,a) must be positive");
    if (c.hyperbolic() && a.z <= 0.0)
        throw std::domain_error("project_point: hyperboloid sheet requires z > 0");
    // Dead band: a point already at round-off distance from the quadric is
    // returned bit-identically, which makes the projection exactly idempotent.
    if (std::abs(n - 1.0) <= 1e-14) return SurfacePoint(a, c, SurfacePoint::Unchecked{});
    return SurfacePoint(a / std::sqrt(n), c, SurfacePoint::Unchecked{});
}

TangentVector project_velocity(const Curvature& c, const SurfacePoint& q, const Vec3& v) {
    const double u = c.kappa() * inner(c, q.v(), v);
    const double scale = std::abs(c.kappa()) * norm_e(q.v()) * norm_e(v);
    if (std::abs(u) <= 1e-14 * std::max(1.0, scale))
        return TangentVector(v, q, TangentVector::Unchecked{});
    return TangentVector(v - u * q.v(), q, TangentVector::Unchecked{});
}

Mat3 Mat3::identity() {
    Mat3 r;
    r.m[0][0] = r.m[1][1] = r.m[2][2] = 1.0;
    return r;
}

Vec3 Mat3::operator*(const Vec3& v) const {
    return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j] + m[i][2] * o.m[2][j];
    return r;
}

Mat3 isometry_elliptic(double theta) {
    Mat3 r = Mat3::identity();
    const double ct = std::cos(theta), st = std::sin(theta);
    r.m[0][0] = ct; r.m[0][1] = -st;
    r.m[1][0] = st; r.m[1][1] = ct;
    return r;
}

Mat3 isometry_hyperbolic(double s) {
    Mat3 r = Mat3::identity();
    const double ch = std::cosh(s), sh = std::sinh(s);
    r.m[1][1] = ch; r.m[1][2] = sh;
    r.m[2][1] = sh; r.m[2][2] = ch;
    return r;
}

Mat3 isometry_parabolic(double t) {
    Mat3 r;
    const double t2 = t * t / 2.0;
    r.m[0][0] = 1.0; r.m[0][1] = -t;       r.m[0][2] = t;
    r.m[1][0] = t;   r.m[1][1] = 1.0 - t2; r.m[1][2] = t2;
    r.m[2][0] = t;   r.m[2][1] = -t2;      r.m[2][2] = 1.0 + t2;
    return r;
}

Mat3 so3_rotation_z(double theta) { return isometry_elliptic(theta); }

Mat3 conjugate(const Curvature& c, const Mat3& p, const Mat3& a) {
    // Metric inverse: P^T for SO(3), eta P^T eta (eta = diag(1,1,-1)) for Lorentz.
    Mat3 pinv;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) pinv.m[i][j] = p.m[j][i];
    if (c.hyperbolic()) {
        for (int i = 0; i < 3; ++i) {
            pinv.m[2][i] = -pinv.m[2][i];
            pinv.m[i][2] = -pinv.m[i][2];
        }
    }
    return p * (a * pinv);
}

std::pair<SurfacePoint, TangentVector> geodesic_flow(const Curvature& c, const SurfacePoint& q,
                                                     const TangentVector& v, double t) {
    const double speed2 = inner(c, v.v(), v.v());
    if (speed2 <= 0.0) return {q, v};
    const double speed = std::sqrt(speed2);
    const double rk = std::sqrt(std::abs(c.kappa()));
    const double phase = rk * speed * t;
    double cp, sp;
    if (c.spherical()) {
        cp = std::cos(phase);
        sp = std::sin(phase);
    } else {
        cp = std::cosh(phase);
        sp = std::sinh(phase);
    }
    const Vec3 qt = q.v() * cp + v.v() * (sp / (rk * speed));
    const double sgn = c.spherical() ? -1.0 : +1.0;
    const Vec3 vt = q.v() * (sgn * rk * speed * sp) + v.v() * cp;
    SurfacePoint qnew = project_point(c, qt);
    Vec3 vnew = project_velocity(c, qnew, vt).v();
    // The flow conserves the speed exactly; rescale to remove the round-off
    // the cosh/sinh cancellation leaves behind at large rapidity.
    const double s2 = inner(c, vnew, vnew);
    if (s2 > 0.0) vnew *= speed / std::sqrt(s2);
    return {qnew, TangentVector(vnew, qnew)};
}

}  // namespace curvnb
