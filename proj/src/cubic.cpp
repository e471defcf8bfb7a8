#include "entsim/cubic.hpp"

#include <algorithm>
#include <cmath>

namespace entsim {

namespace {

cplx eval_poly(const std::array<cplx, 4>& c, cplx q) {
    return ((c[0] * q + c[1]) * q + c[2]) * q + c[3];
}

cplx eval_dpoly(const std::array<cplx, 4>& c, cplx q) {
    return (3.0 * c[0] * q + 2.0 * c[1]) * q + c[2];
}

}  // namespace

CubicSolution characteristic_cubic(const ModelParams& p) {
    const DressedFrame f = dressed_frame(p);
    const KernelParams k = kernel_params(p, f);
    return characteristic_cubic(k, f.g_fac, p.gamma, p.lambda);
}

CubicSolution characteristic_cubic(const KernelParams& k, double g_fac, double gamma,
                                   double lambda) {
    const cplx kk = gamma * lambda * g_fac / (4.0 * k.y * k.y);
    CubicSolution c;
    // The quadratic coefficient is -(y+ + y-) = 2 identically.
    c.coeffs = {cplx(1.0), cplx(2.0), k.y_plus * k.y_minus + kk, kk};
    return c;
}

CubicSolution solve_cubic(CubicSolution cubic) {
    const cplx a = cubic.coeffs[1];
    const cplx b = cubic.coeffs[2];
    const cplx c = cubic.coeffs[3];

    // Complex-coefficient Cardano with the cancellation-safe branch choice
    // Re(conj(R) * s) >= 0 for s = sqrt(R^2 - Q^3).
    const cplx Q = (a * a - 3.0 * b) / 9.0;
    const cplx R = (2.0 * a * a * a - 9.0 * a * b + 27.0 * c) / 54.0;
    cplx s = std::sqrt(R * R - Q * Q * Q);
    if (std::real(std::conj(R) * s) < 0.0) s = -s;
    const cplx A = (R + s == cplx(0.0)) ? cplx(0.0) : -std::pow(R + s, 1.0 / 3.0);
    const cplx B = (A == cplx(0.0)) ? cplx(0.0) : Q / A;

    const cplx shift = a / 3.0;
    const cplx half = -0.5 * (A + B) - shift;
    const cplx cross = cplx(0.0, std::sqrt(3.0) / 2.0) * (A - B);
    std::array<cplx, 3> q = {A + B - shift, half + cross, half - cross};

    // One Newton step per root; skip where p' vanishes (multiple root).
    for (auto& qi : q) {
        const cplx d = eval_dpoly(cubic.coeffs, qi);
        if (std::abs(d) > 1e-300) qi -= eval_poly(cubic.coeffs, qi) / d;
    }

    double max_coeff = 0.0;
    for (const auto& ci : cubic.coeffs) max_coeff = std::max(max_coeff, std::abs(ci));
    for (const auto& qi : q) {
        const double res = std::abs(eval_poly(cubic.coeffs, qi));
        if (!(res <= 1e-8 * max_coeff))
            throw IllConditionedCubic("cubic root residual exceeds 1e-8 * max|coeff|");
    }

    std::sort(q.begin(), q.end(), [](const cplx& u, const cplx& v) {
        if (std::real(u) != std::real(v)) return std::real(u) > std::real(v);
        return std::imag(u) > std::imag(v);
    });

    double scale = 1.0;
    for (const auto& qi : q) scale = std::max(scale, std::abs(qi));
    double min_sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) min_sep = std::min(min_sep, std::abs(q[i] - q[j]));

    cubic.roots = q;
    cubic.min_separation = min_sep / scale;
    cubic.solved = true;
    return cubic;
}

}  // namespace entsim
