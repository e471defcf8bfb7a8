// cubic.hpp: the monic complex cubic whose roots set the decay rates of the
// collective amplitude, solved in closed form with one polishing step.
#pragma once

#include <array>
#include <stdexcept>

#include "entsim/model.hpp"

namespace entsim {

struct IllConditionedCubic : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateRoots : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CubicSolution {
    // Descending powers, monic: {1, a2, a1, a0}.
    std::array<cplx, 4> coeffs{};
    // Valid after solve_cubic; sorted by descending real part (ties by
    // descending imaginary part).
    std::array<cplx, 3> roots{};
    // Smallest pairwise root distance divided by max(1, largest |root|).
    double min_separation = 0.0;
    bool solved = false;
};

// Builds q^3 + 2 q^2 + (y+ y- + K) q + K with K = gamma*lambda*g_fac/(4 y^2).
CubicSolution characteristic_cubic(const ModelParams& p);
CubicSolution characteristic_cubic(const KernelParams& k, double g_fac, double gamma,
                                   double lambda);

// Closed-form (Cardano) roots plus one Newton step each. Throws
// IllConditionedCubic when a polished root fails the residual check
// |p(q)| <= 1e-8 * max|coeff|.
CubicSolution solve_cubic(CubicSolution cubic);

}  // namespace entsim
