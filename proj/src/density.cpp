#include "entsim/density.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entsim {

DensitySnapshot density_matrix(cplx c1, cplx c2) {
    const double n1 = std::norm(c1), n2 = std::norm(c2);
    if (!(n1 + n2 <= 1.0 + 1e-9))
        throw std::invalid_argument("non-physical amplitudes: |c1|^2 + |c2|^2 > 1 + 1e-9");
    double p_gg = 1.0 - n1 - n2;
    if (p_gg < 0.0) p_gg = 0.0;  // floating-point dust within the 1e-9 budget

    DensitySnapshot s;
    s.rho(1, 1) = n1;
    s.rho(2, 2) = n2;
    s.rho(1, 2) = c1 * std::conj(c2);
    s.rho(2, 1) = std::conj(c1) * c2;
    s.rho(3, 3) = p_gg;
    s.concurrence = concurrence_x(c1, c2);
    return s;
}

double concurrence_x(cplx c1, cplx c2) { return 2.0 * std::abs(c1 * std::conj(c2)); }

double concurrence_general(const DensitySnapshot& s) {
    Eigen::Matrix4cd flip = Eigen::Matrix4cd::Zero();
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;  // sigma_y x sigma_y

    // sqrt(l_i) of rho*flip*rho^* *flip are the singular values of
    // B = sqrt(rho)^* flip sqrt(rho): with A = sqrt(rho) Hermitian and B
    // symmetric, eig(rho flip rho^* flip) = eig(B^* B) = svd(B)^2. Computing
    // them as singular values avoids taking sqrt of eigenvalue noise near 0.
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es((s.rho + s.rho.adjoint()) / 2.0);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("eigenvalue solver failed on the density matrix");
    // Eigenvalues below the solver's resolution are dust from rank-deficient
    // states; sqrt would amplify them to ~1e-8.
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1e-300, es.eigenvalues().cwiseAbs().maxCoeff());
    Eigen::Vector4d d = es.eigenvalues().unaryExpr(
        [floor](double v) { return v < floor ? 0.0 : std::sqrt(v); });
    const Eigen::Matrix4cd a =
        es.eigenvectors() * d.asDiagonal() * es.eigenvectors().adjoint();
    const Eigen::Matrix4cd b = a.conjugate() * flip * a;
    Eigen::JacobiSVD<Eigen::Matrix4cd> svd(b);
    const auto& sv = svd.singularValues();  // sorted descending
    return std::max(0.0, sv[0] - sv[1] - sv[2] - sv[3]);
}

DensitySnapshot to_bare_basis(const DensitySnapshot& s, double theta) {
    const double c = std::cos(theta / 2.0), sn = std::sin(theta / 2.0);
    Eigen::Matrix2cd u;  // columns are |E>, |G> expressed in {|e>, |g>}
    u << c, -sn, sn, c;
    Eigen::Matrix4cd u2 = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) u2(2 * i + k, 2 * j + l) = u(i, j) * u(k, l);
    DensitySnapshot out;
    out.rho = u2 * s.rho * u2.adjoint();
    out.concurrence = concurrence_general(out);
    return out;
}

}  // namespace entsim
