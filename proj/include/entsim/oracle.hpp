// oracle.hpp: independent integration of the memory-kernel amplitude
// equations. The two-exponential kernel turns the memory integral into two
// auxiliary states, giving a small constant-coefficient linear system:
//   c1' = -g_fac * prefactor * r1 * (z+ + z-)
//   c2' = -g_fac * prefactor * r2 * (z+ + z-)
//   z±' = V± z± + (r1 c1 + r2 c2)
// This route never touches the Laplace solution and is used to certify it.
#pragma once

#include <span>

#include "entsim/model.hpp"

namespace entsim::oracle {

struct OracleConfig {
    double rel_tol = 1e-9;
    double abs_tol = 1e-12;
    // User cap on the step; the effective cap also shrinks with the kernel
    // beat frequency as 0.1 / (1 + omega0*beta).
    double max_step = 0.1;
    int method_order = 5;  // Dormand-Prince 5(4)
};

// Integrates from the product initial state c1(0) = cos(eta/2),
// c2(0) = sin(eta/2) e^{i phi}. With fill_epsilon the collective amplitude is
// also integrated (the r1 = 1 reduction of the same system) and stored.
Trajectory integrate_volterra(const ModelParams& p, std::span<const double> t_grid,
                              const OracleConfig& cfg = {}, bool fill_epsilon = false);

// Same dynamics from explicit initial amplitudes (the system is linear; this
// exists so tests can probe superposition and phase covariance directly).
Trajectory integrate_volterra_from(const ModelParams& p, cplx c1_0, cplx c2_0,
                                   std::span<const double> t_grid, const OracleConfig& cfg = {});

// Step-doubling diagnostic: fixed-step re-integrations at h, h/2, h/4.
// error_estimate is the Richardson extrapolation of the finest pair; the
// check fails when it exceeds max(10*rel_tol, 10*abs_tol).
struct RichardsonReport {
    bool empty = false;                   // true for grids with fewer than 2 points
    double step = 0.0;                    // coarse step actually used
    double dev_coarse_half = 0.0;         // sup|x_h - x_{h/2}| over the grid
    double dev_half_quarter = 0.0;        // sup|x_{h/2} - x_{h/4}|
    double observed_order = 0.0;          // log2 of the deviation ratio
    double error_estimate = 0.0;
    double threshold = 0.0;
    bool needs_smaller_max_step = false;
};

RichardsonReport richardson_check(const ModelParams& p, std::span<const double> t_grid,
                                  const OracleConfig& cfg = {});

}  // namespace entsim::oracle
