// analytic.hpp: closed-form Laplace solution of the amplitude equations. The
// collective amplitude eps(t) is a sum of three exponentials with rates q_i*y;
// near-degenerate roots fall back to an equivalent linear-system integration.
#pragma once

#include <span>

#include "entsim/cubic.hpp"
#include "entsim/model.hpp"

namespace entsim {

// Roots closer than this (relative) make the residue formula ill-conditioned.
inline constexpr double kDegenerateSeparation = 1e-6;

// The three residues of eps(t): res_i = (q_i - y+)(q_i - y-) / prod(q_i - q_j).
// They sum to 1 for any non-degenerate root set.
std::array<cplx, 3> epsilon_weights(const CubicSolution& cubic, const KernelParams& kernel);

// eps(t) = sum_i res_i * exp(q_i * y * t). Throws DegenerateRoots below
// kDegenerateSeparation; callers fall back to epsilon_ode.
cplx epsilon_residues(double t, const CubicSolution& cubic, const KernelParams& kernel);

// Root-free evaluation of the same dynamics: integrates
//   eps' = -prefactor * g_fac * (z+ + z-),   z±' = V± z± + eps,
// eps(0) = 1, z±(0) = 0 over the grid (which must be increasing, from t >= 0).
std::vector<cplx> epsilon_ode(std::span<const double> t_grid, const KernelParams& kernel,
                              double g_fac);

// c_j(t) = p_j + q_j * eps(t); the p_j part is the subradiant component that
// survives at long times.
struct AmplitudeCoeffs {
    cplx p1, q1, p2, q2;
};
AmplitudeCoeffs amplitude_coeffs(const ModelParams& p);

// Full solution on a grid. Uses the residue sum when the cubic roots are well
// separated and switches to epsilon_ode otherwise.
Trajectory amplitudes(std::span<const double> t_grid, const ModelParams& p);

}  // namespace entsim
