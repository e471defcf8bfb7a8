#include <doctest.h>

#include <cmath>
#include <vector>

#include "entsim/oracle.hpp"

using namespace entsim;
using oracle::OracleConfig;

namespace {

std::vector<double> linspace(double a, double b, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i)
        t[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

// Second-order direct integration of the memory-integral equations on a
// uniform grid: the kernel is evaluated pairwise under the integral and never
// folded into auxiliary states, so this validates that reformulation itself.
struct QuadTraj {
    std::vector<cplx> c1, c2;
};

QuadTraj quad_volterra(const ModelParams& p, double t_end, std::size_t steps) {
    const DressedFrame f = dressed_frame(p);
    const KernelParams k = kernel_params(p, f);
    const double pref = f.g_fac * k.prefactor;
    const double r1 = p.r1, r2 = p.r2();
    const double h = t_end / static_cast<double>(steps);

    std::vector<cplx> kernel(steps + 1);
    for (std::size_t j = 0; j <= steps; ++j) {
        const double dt = h * static_cast<double>(j);
        kernel[j] = std::exp(k.v_plus * dt) + std::exp(k.v_minus * dt);
    }

    QuadTraj out;
    out.c1.reserve(steps + 1);
    out.c2.reserve(steps + 1);
    out.c1.push_back(std::cos(p.eta / 2.0));
    out.c2.push_back(std::sin(p.eta / 2.0) * std::exp(cplx(0.0, p.phi)));
    std::vector<cplx> w = {r1 * out.c1[0] + r2 * out.c2[0]};

    auto memory = [&](std::size_t n, cplx w_n) {
        // trapezoid over [0, t_n] with the endpoint value w_n
        if (n == 0) return cplx(0.0);
        cplx acc = 0.5 * (kernel[n] * w[0] + kernel[0] * w_n);
        for (std::size_t j = 1; j < n; ++j) acc += kernel[n - j] * w[j];
        return h * acc;
    };

    for (std::size_t n = 0; n < steps; ++n) {
        const cplx In = memory(n, w[n]);
        const cplx f1 = -pref * r1 * In, f2 = -pref * r2 * In;
        // Heun predictor-corrector
        const cplx c1p = out.c1[n] + h * f1, c2p = out.c2[n] + h * f2;
        const cplx wp = r1 * c1p + r2 * c2p;
        const cplx Ip = memory(n + 1, wp);
        const cplx g1 = -pref * r1 * Ip, g2 = -pref * r2 * Ip;
        out.c1.push_back(out.c1[n] + 0.5 * h * (f1 + g1));
        out.c2.push_back(out.c2[n] + 0.5 * h * (f2 + g2));
        w.push_back(r1 * out.c1[n + 1] + r2 * out.c2[n + 1]);
    }
    return out;
}

}  // namespace

TEST_CASE("initial conditions follow the prepared state") {
    ModelParams p;
    p.eta = 1.1;
    p.phi = 0.7;
    const auto grid = linspace(0.0, 1.0, 5);
    const Trajectory tr = oracle::integrate_volterra(p, grid);
    CHECK(std::abs(tr.c1[0] - cplx(std::cos(0.55))) < 1e-12);
    CHECK(std::abs(tr.c2[0] - std::sin(0.55) * std::exp(cplx(0.0, 0.7))) < 1e-12);
}

TEST_CASE("symmetric coupling rides the collective decay") {
    ModelParams p;
    p.lambda = 4.0;
    p.r1 = 1.0 / std::numbers::sqrt2;
    const auto grid = linspace(0.0, 1.0, 11);
    const Trajectory tr = oracle::integrate_volterra(p, grid, {}, true);
    const cplx eps1(0.82226342390180952);
    CHECK(std::abs(tr.c1.back() - eps1 / std::numbers::sqrt2) < 1e-8);
    CHECK(std::abs(tr.c2.back() - eps1 / std::numbers::sqrt2) < 1e-8);
    CHECK(std::abs(tr.eps.back() - eps1) < 1e-8);
    CHECK(std::abs(tr.eps.front() - cplx(1.0)) < 1e-12);
}

TEST_CASE("a decoupled qubit keeps its amplitude") {
    ModelParams p;
    p.r1 = 0.0;
    p.eta = 1.0;
    const auto grid = linspace(0.0, 20.0, 81);
    const Trajectory tr = oracle::integrate_volterra(p, grid);
    for (const auto& c1 : tr.c1) CHECK(std::abs(c1 - cplx(std::cos(0.5))) < 1e-9);
}

TEST_CASE("direct quadrature of the memory integral agrees with the reformulation") {
    OracleConfig cfg;
    cfg.rel_tol = 1e-11;
    cfg.abs_tol = 1e-13;
    auto check_preset = [&](double lambda) {
        ModelParams p;
        p.lambda = lambda;
        const std::size_t steps = 4000;
        const auto grid = linspace(0.0, 10.0, steps + 1);
        const QuadTraj q = quad_volterra(p, 10.0, steps);
        const Trajectory tr = oracle::integrate_volterra(p, grid, cfg);
        double worst = 0.0;
        for (std::size_t i = 0; i <= steps; ++i) {
            worst = std::max(worst, std::abs(q.c1[i] - tr.c1[i]));
            worst = std::max(worst, std::abs(q.c2[i] - tr.c2[i]));
        }
        CHECK(worst < 1e-5);
    };
    check_preset(4.0);   // weak coupling
    check_preset(0.04);  // strong coupling
    check_preset(0.1);   // strong coupling, wider line
}

TEST_CASE("a global phase on the initial pair propagates linearly") {
    ModelParams p;
    p.lambda = 0.1;
    p.omega_drive = 1.6;
    p.beta = 1e-9;
    const cplx phase = std::exp(cplx(0.0, 1.234));
    const cplx a0(0.6, 0.2), b0(0.3, -0.5);
    const auto grid = linspace(0.0, 15.0, 61);
    const Trajectory ta = oracle::integrate_volterra_from(p, a0, b0, grid);
    const Trajectory tb = oracle::integrate_volterra_from(p, phase * a0, phase * b0, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(tb.c1[i] - phase * ta.c1[i]) < 1e-12);
        CHECK(std::abs(tb.c2[i] - phase * ta.c2[i]) < 1e-12);
    }
}

TEST_CASE("excited population decays monotonically in the static weak-coupling case") {
    ModelParams p;
    p.lambda = 4.0;
    const auto grid = linspace(0.0, 30.0, 301);
    const Trajectory tr = oracle::integrate_volterra(p, grid);
    double prev = 2.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double n = std::norm(tr.c1[i]) + std::norm(tr.c2[i]);
        CHECK(n <= prev + 1e-12);
        prev = n;
    }
}

// Same stepping budget for both step-doubling cases: the smooth preset is
// comfortably converged while the fast dressed oscillation is not.
TEST_CASE("step-doubling report on a smooth preset stays below threshold") {
    ModelParams p;
    p.lambda = 4.0;
    OracleConfig cfg;
    cfg.rel_tol = 1e-6;
    cfg.max_step = 0.2;
    const auto grid = linspace(0.0, 50.0, 26);
    const auto rep = oracle::richardson_check(p, grid, cfg);
    CHECK(!rep.empty);
    CHECK(rep.dev_half_quarter < 10.0 * cfg.rel_tol);
    CHECK(!rep.needs_smaller_max_step);
    CHECK(rep.observed_order > 4.5);
    CHECK(rep.observed_order < 7.0);
}

TEST_CASE("step-doubling flags an under-resolved oscillatory preset") {
    ModelParams p;
    p.lambda = 0.04;
    p.omega_drive = 4.0;
    OracleConfig cfg;
    cfg.rel_tol = 1e-6;
    cfg.max_step = 0.2;
    const auto grid = linspace(0.0, 100.0, 51);
    const auto rep = oracle::richardson_check(p, grid, cfg);
    CHECK(rep.needs_smaller_max_step);
    CHECK(rep.error_estimate > rep.threshold);
}

TEST_CASE("step-doubling on a zero-length grid yields an empty report") {
    ModelParams p;
    const std::vector<double> grid = {0.0};
    const auto rep = oracle::richardson_check(p, grid);
    CHECK(rep.empty);
    CHECK(!rep.needs_smaller_max_step);
}

TEST_CASE("oracle config validation") {
    ModelParams p;
    const auto grid = linspace(0.0, 1.0, 3);
    OracleConfig bad;
    bad.rel_tol = 0.0;
    CHECK_THROWS_AS(oracle::integrate_volterra(p, grid, bad), std::invalid_argument);
    bad = OracleConfig{};
    bad.max_step = -1.0;
    CHECK_THROWS_AS(oracle::integrate_volterra(p, grid, bad), std::invalid_argument);
}
