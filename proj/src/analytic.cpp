#include "entsim/analytic.hpp"

#include <cmath>
#include <stdexcept>

#include "entsim/integrate.hpp"

namespace entsim {

namespace {

void check_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must be non-empty");
    if (!(t_grid.front() >= 0.0)) throw std::invalid_argument("time grid must start at t >= 0");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
    for (double t : t_grid)
        if (!std::isfinite(t)) throw std::invalid_argument("time grid must be finite");
}

}  // namespace

std::array<cplx, 3> epsilon_weights(const CubicSolution& cubic, const KernelParams& kernel) {
    if (!cubic.solved) throw std::invalid_argument("cubic roots not solved");
    if (cubic.min_separation < kDegenerateSeparation)
        throw DegenerateRoots("cubic roots are degenerate; use epsilon_ode");
    const auto& q = cubic.roots;
    std::array<cplx, 3> w;
    for (int i = 0; i < 3; ++i) {
        cplx den(1.0);
        for (int j = 0; j < 3; ++j)
            if (j != i) den *= q[i] - q[j];
        w[i] = (q[i] - kernel.y_plus) * (q[i] - kernel.y_minus) / den;
    }
    return w;
}

cplx epsilon_residues(double t, const CubicSolution& cubic, const KernelParams& kernel) {
    const auto w = epsilon_weights(cubic, kernel);
    cplx out(0.0);
    for (int i = 0; i < 3; ++i) out += w[i] * std::exp(cubic.roots[i] * kernel.y * t);
    return out;
}

std::vector<cplx> epsilon_ode(std::span<const double> t_grid, const KernelParams& kernel,
                              double g_fac) {
    check_grid(t_grid);
    const double rate = kernel.prefactor * g_fac;
    const cplx vp = kernel.v_plus, vm = kernel.v_minus;
    auto deriv = [&](double, const CState<3>& x, CState<3>& dx) {
        dx[0] = -rate * (x[1] + x[2]);
        dx[1] = vp * x[1] + x[0];
        dx[2] = vm * x[2] + x[0];
    };

    StepControl ctl;
    ctl.rel_tol = 1e-11;
    ctl.abs_tol = 1e-13;
    const double im_max = std::max(std::abs(std::imag(vp)), std::abs(std::imag(vm)));
    ctl.max_step = 0.1 / (1.0 + im_max);

    CState<3> x = {cplx(1.0), cplx(0.0), cplx(0.0)};
    std::vector<cplx> out;
    out.reserve(t_grid.size());
    double t = 0.0;
    for (double tk : t_grid) {
        advance(deriv, x, t, tk, ctl);
        t = tk;
        out.push_back(x[0]);
    }
    return out;
}

AmplitudeCoeffs amplitude_coeffs(const ModelParams& p) {
    validate(p);
    const double r1 = p.r1, r2 = p.r2();
    const cplx ch = std::cos(p.eta / 2.0);
    const cplx sh = std::sin(p.eta / 2.0) * std::exp(cplx(0.0, p.phi));
    AmplitudeCoeffs a;
    a.p1 = r2 * r2 * ch - r1 * r2 * sh;
    a.q1 = r1 * r1 * ch + r1 * r2 * sh;
    a.p2 = r1 * r1 * sh - r1 * r2 * ch;
    a.q2 = r2 * r2 * sh + r1 * r2 * ch;
    return a;
}

Trajectory amplitudes(std::span<const double> t_grid, const ModelParams& p) {
    check_grid(t_grid);
    const DressedFrame frame = dressed_frame(p);
    const KernelParams kernel = kernel_params(p, frame);
    const CubicSolution cubic = solve_cubic(characteristic_cubic(kernel, frame.g_fac, p.gamma, p.lambda));
    const AmplitudeCoeffs ac = amplitude_coeffs(p);

    Trajectory tr;
    tr.times.assign(t_grid.begin(), t_grid.end());
    if (cubic.min_separation >= kDegenerateSeparation) {
        const auto w = epsilon_weights(cubic, kernel);
        tr.eps.reserve(t_grid.size());
        for (double t : t_grid) {
            cplx e(0.0);
            for (int i = 0; i < 3; ++i) e += w[i] * std::exp(cubic.roots[i] * kernel.y * t);
            tr.eps.push_back(e);
        }
    } else {
        tr.eps = epsilon_ode(t_grid, kernel, frame.g_fac);
    }
    tr.c1.reserve(t_grid.size());
    tr.c2.reserve(t_grid.size());
    for (const cplx& e : tr.eps) {
        tr.c1.push_back(ac.p1 + ac.q1 * e);
        tr.c2.push_back(ac.p2 + ac.q2 * e);
    }
    return tr;
}

}  // namespace entsim
