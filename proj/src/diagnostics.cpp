#include "curvnb/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace curvnb {

double moment_inertia_I(const SystemState& state) {
    double s = 0.0;
    for (const Body& b : state.bodies()) s += b.mass * (b.q.v().x * b.q.v().x + b.q.v().y * b.q.v().y);
    return s;
}

double moment_inertia_J(const SystemState& state) {
    if (state.curvature().spherical())
        throw std::domain_error("moment_inertia_J: defined only for kappa < 0");
    double s = 0.0;
    for (const Body& b : state.bodies()) s += b.mass * (b.q.v().y * b.q.v().y - b.q.v().z * b.q.v().z);
    return s;
}

double min_pair_gap(const SystemState& state) {
    const auto& bs = state.bodies();
    double g = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bs.size(); ++i)
        for (std::size_t j = i + 1; j < bs.size(); ++j)
            g = std::min(g, std::abs(pair_gap(state.curvature(), bs[i].q.v(), bs[j].q.v())));
    return g;
}

double max_constraint_residual(const SystemState& state) {
    const Curvature& c = state.curvature();
    double r = 0.0;
    for (const Body& b : state.bodies()) {
        r = std::max(r, constraint_residual(c, b.q.v()));
        r = std::max(r, std::abs(c.kappa() * inner(c, b.q.v(), b.p)) / b.mass);
    }
    return r;
}

DiagnosticsRecord compute_diagnostics(const SystemState& state) {
    DiagnosticsRecord d;
    d.energy = energy(state);
    d.angular_momentum = angular_momentum(state);
    d.moment_I = moment_inertia_I(state);
    if (state.curvature().hyperbolic()) d.moment_J = moment_inertia_J(state);
    d.min_pair_gap = min_pair_gap(state);
    d.constraint_residual = max_constraint_residual(state);
    return d;
}

namespace {

// Column-pivoted QR of the n x 3 position matrix by modified Gram-Schmidt.
// The last diagonal entry of R tracks the smallest singular value; unlike the
// eigenvalues of the Gram matrix it does not square the conditioning, so an
// exactly coplanar configuration reads as ~1e-16 rather than ~1e-8.
struct AlignmentQR {
    double smin;
    Vec3 normal;
};

AlignmentQR alignment_qr(const SystemState& state) {
    const std::size_t n = state.size();
    std::array<std::vector<double>, 3> col;
    for (auto& c : col) c.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        col[0][i] = state.bodies()[i].q.v().x;
        col[1][i] = state.bodies()[i].q.v().y;
        col[2][i] = state.bodies()[i].q.v().z;
    }
    std::array<int, 3> perm{0, 1, 2};
    double r[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    auto cdot = [&](int a, int b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += col[a][i] * col[b][i];
        return s;
    };
    for (int k = 0; k < 3; ++k) {
        int best = k;
        double best_norm = cdot(k, k);
        for (int j = k + 1; j < 3; ++j) {
            const double nj = cdot(j, j);
            if (nj > best_norm) {
                best_norm = nj;
                best = j;
            }
        }
        if (best != k) {
            std::swap(col[k], col[best]);
            std::swap(perm[k], perm[best]);
            for (int row = 0; row < k; ++row) std::swap(r[row][k], r[row][best]);
        }
        r[k][k] = std::sqrt(std::max(best_norm, 0.0));
        if (r[k][k] > 0.0)
            for (std::size_t i = 0; i < n; ++i) col[k][i] /= r[k][k];
        for (int j = k + 1; j < 3; ++j) {
            r[k][j] = cdot(k, j);
            for (std::size_t i = 0; i < n; ++i) col[j][i] -= r[k][j] * col[k][i];
        }
    }

    AlignmentQR out;
    out.smin = std::abs(r[2][2]);
    // Null direction of R (permuted back): the plane normal when smin ~ 0.
    double w2 = 1.0;
    double w1 = r[1][1] != 0.0 ? -r[1][2] / r[1][1] : 0.0;
    double w0 = r[0][0] != 0.0 ? -(r[0][1] * w1 + r[0][2] * w2) / r[0][0] : 0.0;
    Vec3 normal;
    normal[perm[0]] = w0;
    normal[perm[1]] = w1;
    normal[perm[2]] = w2;
    const double nn = norm_e(normal);
    if (nn > 0.0) normal = normal / nn;
    out.normal = normal;
    return out;
}

}  // namespace

double geodesic_alignment_value(const SystemState& state) { return alignment_qr(state).smin; }

std::pair<bool, Vec3> geodesic_alignment(const SystemState& state) {
    const AlignmentQR qr = alignment_qr(state);
    return {qr.smin < 1e-9, qr.normal};
}

double finite_difference_gradient_check(const SystemState& state, double step) {
    if (!(step > 0.0)) throw std::invalid_argument("finite_difference_gradient_check: step > 0");
    const Curvature& c = state.curvature();
    std::vector<Vec3> pos;
    std::vector<double> ms;
    for (const Body& b : state.bodies()) {
        pos.push_back(b.q.v());
        ms.push_back(b.mass);
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        const Vec3 ana = grad_force_function_homogeneous(c, pos, ms, i);
        Vec3 fd;
        for (int axis = 0; axis < 3; ++axis) {
            std::vector<Vec3> pp = pos, pm = pos;
            pp[i][axis] += step;
            pm[i][axis] -= step;
            fd[axis] = (force_function_homogeneous(c, pp, ms) -
                        force_function_homogeneous(c, pm, ms)) /
                       (2.0 * step);
        }
        if (c.hyperbolic()) fd.z = -fd.z;  // FD gives the plain gradient
        const double err = norm_e(ana - fd) / std::max(1.0, norm_e(ana));
        worst = std::max(worst, err);
    }
    return worst;
}

}  // namespace curvnb
