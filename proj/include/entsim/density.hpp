// density.hpp: reduced two-qubit density matrix in the dressed product basis
// {|EE>, |EG>, |GE>, |GG>} and the Wootters concurrence.
#pragma once

#include <Eigen/Dense>

#include "entsim/model.hpp"

namespace entsim {

struct DensitySnapshot {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    double concurrence = 0.0;
};

// Single-excitation state: nonzero block is the {|EG>, |GE>} sector plus the
// ground-ground population 1 - |c1|^2 - |c2|^2 (clamped to 0 within -1e-9).
// Rejects |c1|^2 + |c2|^2 > 1 + 1e-9 as non-physical.
DensitySnapshot density_matrix(cplx c1, cplx c2);

// Closed form 2|c1 c2*| valid for the X-shaped states produced above.
double concurrence_x(cplx c1, cplx c2);

// General Wootters route: eigenvalues of rho (sy x sy) rho* (sy x sy).
double concurrence_general(const DensitySnapshot& s);

// Rotates both qubits from the dressed basis back to the bare {|e>, |g>}
// basis. Unitary, so spectrum, trace and concurrence are preserved.
DensitySnapshot to_bare_basis(const DensitySnapshot& s, double theta);

}  // namespace entsim
