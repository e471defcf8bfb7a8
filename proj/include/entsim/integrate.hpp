// integrate.hpp: embedded Dormand-Prince 5(4) stepper for small complex-valued
// linear systems, with an adaptive and a fixed-step entry point.
#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "entsim/model.hpp"

namespace entsim {

struct StepSizeUnderflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StepControl {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    double max_step = 0.1;
};

template <std::size_t N>
using CState = std::array<cplx, N>;

namespace detail {

// Dormand-Prince coefficients (c nodes implicit in the a rows).
inline constexpr double kA21 = 1.0 / 5;
inline constexpr double kA31 = 3.0 / 40, kA32 = 9.0 / 40;
inline constexpr double kA41 = 44.0 / 45, kA42 = -56.0 / 15, kA43 = 32.0 / 9;
inline constexpr double kA51 = 19372.0 / 6561, kA52 = -25360.0 / 2187, kA53 = 64448.0 / 6561,
                        kA54 = -212.0 / 729;
inline constexpr double kA61 = 9017.0 / 3168, kA62 = -355.0 / 33, kA63 = 46732.0 / 5247,
                        kA64 = 49.0 / 176, kA65 = -5103.0 / 18656;
inline constexpr double kB1 = 35.0 / 384, kB3 = 500.0 / 1113, kB4 = 125.0 / 192,
                        kB5 = -2187.0 / 6784, kB6 = 11.0 / 84;
inline constexpr double kE1 = 35.0 / 384 - 5179.0 / 57600, kE3 = 500.0 / 1113 - 7571.0 / 16695,
                        kE4 = 125.0 / 192 - 393.0 / 640, kE5 = -2187.0 / 6784 + 92097.0 / 339200,
                        kE6 = 11.0 / 84 - 187.0 / 2100, kE7 = -1.0 / 40;

// One DP5 step from (t, x) with step h. Writes the 5th-order solution to
// x_out and the embedded error estimate to err.
template <std::size_t N, class Deriv>
void dp5_step(Deriv&& f, double t, const CState<N>& x, double h, CState<N>& x_out,
              CState<N>& err) {
    CState<N> k1, k2, k3, k4, k5, k6, k7, tmp;
    f(t, x, k1);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h * (kA21 * k1[i]);
    f(t + h / 5, tmp, k2);
    for (std::size_t i = 0; i < N; ++i) tmp[i] = x[i] + h * (kA31 * k1[i] + kA32 * k2[i]);
    f(t + 3 * h / 10, tmp, k3);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = x[i] + h * (kA41 * k1[i] + kA42 * k2[i] + kA43 * k3[i]);
    f(t + 4 * h / 5, tmp, k4);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = x[i] + h * (kA51 * k1[i] + kA52 * k2[i] + kA53 * k3[i] + kA54 * k4[i]);
    f(t + 8 * h / 9, tmp, k5);
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = x[i] + h * (kA61 * k1[i] + kA62 * k2[i] + kA63 * k3[i] + kA64 * k4[i] +
                             kA65 * k5[i]);
    f(t + h, tmp, k6);
    for (std::size_t i = 0; i < N; ++i)
        x_out[i] = x[i] + h * (kB1 * k1[i] + kB3 * k3[i] + kB4 * k4[i] + kB5 * k5[i] + kB6 * k6[i]);
    f(t + h, x_out, k7);
    for (std::size_t i = 0; i < N; ++i)
        err[i] = h * (kE1 * k1[i] + kE3 * k3[i] + kE4 * k4[i] + kE5 * k5[i] + kE6 * k6[i] +
                      kE7 * k7[i]);
}

}  // namespace detail

// Advances x from t0 to t1 with adaptive step control, landing exactly on t1.
template <std::size_t N, class Deriv>
void advance(Deriv&& f, CState<N>& x, double t0, double t1, const StepControl& ctl) {
    if (t1 <= t0) return;
    const double hmin_floor = 16.0 * std::numeric_limits<double>::epsilon();
    double t = t0;
    double h = std::min(ctl.max_step, t1 - t0);
    CState<N> x_new, err;
    while (true) {
        const double floor_t = hmin_floor * std::max(1.0, std::abs(t));
        const double rem = t1 - t;
        if (rem <= floor_t) break;  // within roundoff of the target
        const double h_try = std::min(h, rem);
        if (h_try < floor_t)
            throw StepSizeUnderflow("step size underflow in adaptive integration");
        detail::dp5_step(f, t, x, h_try, x_new, err);
        double norm = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc =
                ctl.abs_tol + ctl.rel_tol * std::max(std::abs(x[i]), std::abs(x_new[i]));
            const double e = std::abs(err[i]) / sc;
            norm += e * e;
        }
        norm = std::sqrt(norm / static_cast<double>(N));
        if (!(norm <= 1.0)) {  // reject; NaN/inf estimates also land here and shrink
            h = h_try * std::max(0.2, 0.9 * std::pow(norm, -0.2));
            continue;
        }
        t = (h_try == rem) ? t1 : t + h_try;
        x = x_new;
        const double fac =
            (norm == 0.0) ? 5.0 : std::min(5.0, std::max(0.2, 0.9 * std::pow(norm, -0.2)));
        h = std::min(fac * h_try, ctl.max_step);
    }
}

// Fixed-step variant: ceil((t1-t0)/h_target) equal DP5 steps, no error control.
// Used by the step-doubling diagnostics.
template <std::size_t N, class Deriv>
void advance_fixed(Deriv&& f, CState<N>& x, double t0, double t1, double h_target) {
    if (t1 <= t0) return;
    const auto n = static_cast<std::size_t>(std::ceil((t1 - t0) / h_target - 1e-12));
    const double h = (t1 - t0) / static_cast<double>(std::max<std::size_t>(n, 1));
    CState<N> x_new, err;
    double t = t0;
    for (std::size_t i = 0; i < std::max<std::size_t>(n, 1); ++i) {
        detail::dp5_step(f, t, x, h, x_new, err);
        x = x_new;
        t = t0 + static_cast<double>(i + 1) * h;
    }
}

}  // namespace entsim
