#ifndef CURVNB_GEOMETRY_HPP
#define CURVNB_GEOMETRY_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

// Geometry of the two model surfaces: the sphere x^2+y^2+z^2 = 1/kappa
// (kappa > 0) and the upper sheet (z > 0) of the hyperboloid
// x^2+y^2-z^2 = 1/kappa (kappa < 0) in Minkowski 3-space.  All inner and
// cross products carry the signature selected by sign(kappa).

namespace curvnb {

struct ConstraintError : std::runtime_error {
    explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3() = default;
    Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double s) { x *= s; y *= s; z *= s; return *this; }

    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

// Euclidean dot/norm, used for error measurement regardless of signature.
inline double dot_e(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline double norm_e(const Vec3& a) { return std::sqrt(dot_e(a, a)); }

/** Nonzero curvature with its derived signature sign. */
class Curvature {
  public:
    explicit Curvature(double kappa) : kappa_(kappa) {
        if (!(kappa != 0.0) || !std::isfinite(kappa))
            throw std::invalid_argument("Curvature: kappa must be a nonzero finite real");
    }
    double kappa() const { return kappa_; }
    int sigma() const { return kappa_ > 0.0 ? +1 : -1; }
    bool spherical() const { return kappa_ > 0.0; }
    bool hyperbolic() const { return kappa_ < 0.0; }

  private:
    double kappa_;
};

// Unified trigonometric kappa-functions.  The kappa = 0 branch returns the
// Euclidean limit (x, 1, x, 1/x) and exists only for continuity tests.
double kappa_sn(double kappa, double x);
double kappa_csn(double kappa, double x);
double kappa_tn(double kappa, double x);
double kappa_ctn(double kappa, double x);  // throws std::domain_error at poles of sn

// Signature-dependent inner product: a.b for kappa > 0, the Lorentz product
// a_x b_x + a_y b_y - a_z b_z for kappa < 0.
inline double inner(const Curvature& c, const Vec3& a, const Vec3& b) {
    return a.x * b.x + a.y * b.y + (c.sigma() > 0 ? a.z * b.z : -a.z * b.z);
}

// Signature-dependent cross product.  For kappa < 0 the z component is
// a_y b_x - a_x b_y, i.e. sign-flipped relative to the Euclidean convention.
inline Vec3 cross(const Curvature& c, const Vec3& a, const Vec3& b) {
    const double zc = a.x * b.y - a.y * b.x;
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, c.sigma() > 0 ? zc : -zc};
}

class SurfacePoint {
  public:
    // Validates kappa*inner(v,v) = 1 (and z > 0 on the hyperboloid).
    SurfacePoint(const Vec3& v, const Curvature& c);

    const Vec3& v() const { return v_; }
    const Curvature& curvature() const { return curv_; }

  private:
    friend SurfacePoint project_point(const Curvature&, const Vec3&);
    struct Unchecked {};
    SurfacePoint(const Vec3& v, const Curvature& c, Unchecked) : v_(v), curv_(c) {}

    Vec3 v_;
    Curvature curv_;
};

class TangentVector {
  public:
    // Validates inner(q, v) = 0.
    TangentVector(const Vec3& v, const SurfacePoint& at);

    const Vec3& v() const { return v_; }
    const SurfacePoint& at() const { return at_; }

  private:
    friend TangentVector project_velocity(const Curvature&, const SurfacePoint&, const Vec3&);
    struct Unchecked {};
    TangentVector(const Vec3& v, const SurfacePoint& at, Unchecked) : v_(v), at_(at) {}

    Vec3 v_;
    SurfacePoint at_;
};

// Residual |kappa*inner(q,q) - 1| of the surface constraint.
double constraint_residual(const Curvature& c, const Vec3& q);

/** Geodesic distance between two constrained points. */
double distance(const SurfacePoint& a, const SurfacePoint& b);

// Extended distance, defined for any ambient vectors with
// kappa*inner(a,a) > 0 (and z > 0 for kappa < 0); agrees with distance()
// on constrained inputs.
double distance_extended(const Curvature& c, const Vec3& a, const Vec3& b);

// Radial renormalization onto the quadric: a / sqrt(kappa*inner(a,a)).
// Requires kappa*inner(a,a) > 0; for kappa < 0 additionally a.z > 0.
SurfacePoint project_point(const Curvature& c, const Vec3& a);

// Tangential projection v - kappa*inner(q,v)*q; the result satisfies
// inner(q, result) = 0 exactly.
TangentVector project_velocity(const Curvature& c, const SurfacePoint& q, const Vec3& v);

struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    static Mat3 identity();
    Vec3 operator*(const Vec3& v) const;
    Mat3 operator*(const Mat3& o) const;
};

// The three canonical one-parameter isometry subgroups of the Lorentz group
// (rotation about a timelike, spacelike, and lightlike axis), written with
// P = identity, plus the SO(3) rotation used on the sphere.
Mat3 isometry_elliptic(double theta);
Mat3 isometry_hyperbolic(double s);
Mat3 isometry_parabolic(double t);
Mat3 so3_rotation_z(double theta);

// Conjugation P A P^{-1} with the metric-appropriate inverse of P.
Mat3 conjugate(const Curvature& c, const Mat3& p, const Mat3& a);

/** Closed-form flow of a free body: uniform motion along a geodesic. */
std::pair<SurfacePoint, TangentVector> geodesic_flow(const Curvature& c, const SurfacePoint& q,
                                                     const TangentVector& v, double t);

}  // namespace curvnb

#endif
