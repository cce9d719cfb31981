#ifndef CURVNB_RK45_HPP
#define CURVNB_RK45_HPP

#include <functional>
#include <span>
#include <vector>

// Embedded Dormand-Prince 5(4) step on a flat state vector.  The 4th-order
// solution is the one advanced; the 5th-order solution serves as the error
// reference, so the per-step error estimate is a genuine estimate of the
// propagated error.

namespace curvnb {

using OdeRhs = std::function<void(double t, std::span<const double> y, std::span<double> dydt)>;

struct Rk45Step {
    std::vector<double> y;  // 4th-order solution at t + h
    double error_norm;      // scaled RMS of y5 - y4; accept when <= 1
};

Rk45Step rk45_step(const OdeRhs& f, double t, std::span<const double> y, double h, double rel_tol,
                   double abs_tol);

// Standard step-size factor 0.9 * err^(-1/5), clamped to [0.2, 5].
double rk45_dt_factor(double error_norm);

}  // namespace curvnb

#endif
