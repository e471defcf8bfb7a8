#include "entsim/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "entsim/integrate.hpp"

namespace entsim::oracle {

namespace {

void check_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) throw std::invalid_argument("time grid must be non-empty");
    if (!(t_grid.front() >= 0.0)) throw std::invalid_argument("time grid must start at t >= 0");
    for (std::size_t i = 0; i + 1 < t_grid.size(); ++i)
        if (!(t_grid[i] < t_grid[i + 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
}

void check_config(const OracleConfig& cfg) {
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0))
        throw std::invalid_argument("oracle tolerances must be positive");
    if (!(cfg.max_step > 0.0)) throw std::invalid_argument("oracle max_step must be positive");
}

struct System {
    double rate;  // g_fac * gamma * lambda / 8
    double r1, r2;
    cplx vp, vm;

    void operator()(double, const CState<4>& x, CState<4>& dx) const {
        const cplx zsum = x[2] + x[3];
        const cplx w = r1 * x[0] + r2 * x[1];
        dx[0] = -rate * r1 * zsum;
        dx[1] = -rate * r2 * zsum;
        dx[2] = vp * x[2] + w;
        dx[3] = vm * x[3] + w;
    }
};

System build_system(const ModelParams& p) {
    const DressedFrame f = dressed_frame(p);
    const KernelParams k = kernel_params(p, f);
    return System{f.g_fac * k.prefactor, p.r1, p.r2(), k.v_plus, k.v_minus};
}

double effective_max_step(const ModelParams& p, const OracleConfig& cfg) {
    return std::min(cfg.max_step, 0.1 / (1.0 + p.omega0 * p.beta));
}

}  // namespace

Trajectory integrate_volterra_from(const ModelParams& p, cplx c1_0, cplx c2_0,
                                   std::span<const double> t_grid, const OracleConfig& cfg) {
    validate(p);
    check_grid(t_grid);
    check_config(cfg);
    const System sys = build_system(p);

    StepControl ctl{cfg.rel_tol, cfg.abs_tol, effective_max_step(p, cfg)};
    CState<4> x = {c1_0, c2_0, cplx(0.0), cplx(0.0)};
    Trajectory tr;
    tr.times.assign(t_grid.begin(), t_grid.end());
    tr.c1.reserve(t_grid.size());
    tr.c2.reserve(t_grid.size());
    double t = 0.0;
    for (double tk : t_grid) {
        advance(sys, x, t, tk, ctl);
        t = tk;
        tr.c1.push_back(x[0]);
        tr.c2.push_back(x[1]);
    }
    return tr;
}

Trajectory integrate_volterra(const ModelParams& p, std::span<const double> t_grid,
                              const OracleConfig& cfg, bool fill_epsilon) {
    const cplx c1_0 = std::cos(p.eta / 2.0);
    const cplx c2_0 = std::sin(p.eta / 2.0) * std::exp(cplx(0.0, p.phi));
    Trajectory tr = integrate_volterra_from(p, c1_0, c2_0, t_grid, cfg);
    if (fill_epsilon) {
        // r1 = 1 reduction: w == c1 and c1(0) = 1 turns the system into the
        // equation of the collective amplitude itself.
        ModelParams q = p;
        q.r1 = 1.0;
        q.eta = 0.0;
        q.phi = 0.0;
        const Trajectory e = integrate_volterra_from(q, cplx(1.0), cplx(0.0), t_grid, cfg);
        tr.eps = e.c1;
    }
    return tr;
}

RichardsonReport richardson_check(const ModelParams& p, std::span<const double> t_grid,
                                  const OracleConfig& cfg) {
    validate(p);
    check_config(cfg);
    RichardsonReport rep;
    rep.threshold = 10.0 * std::max(cfg.rel_tol, cfg.abs_tol);
    if (t_grid.size() < 2) {
        rep.empty = true;
        return rep;
    }
    check_grid(t_grid);

    const System sys = build_system(p);
    const cplx c1_0 = std::cos(p.eta / 2.0);
    const cplx c2_0 = std::sin(p.eta / 2.0) * std::exp(cplx(0.0, p.phi));
    const double h0 = cfg.max_step;
    rep.step = h0;

    auto run = [&](double h) {
        std::vector<CState<4>> out;
        out.reserve(t_grid.size());
        CState<4> x = {c1_0, c2_0, cplx(0.0), cplx(0.0)};
        double t = t_grid.front();
        if (t_grid.front() > 0.0) advance_fixed(sys, x, 0.0, t_grid.front(), h);
        out.push_back(x);
        for (std::size_t i = 1; i < t_grid.size(); ++i) {
            advance_fixed(sys, x, t, t_grid[i], h);
            t = t_grid[i];
            out.push_back(x);
        }
        return out;
    };

    const auto xh = run(h0), xh2 = run(h0 / 2.0), xh4 = run(h0 / 4.0);
    auto sup_dev = [](const std::vector<CState<4>>& a, const std::vector<CState<4>>& b) {
        double d = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < 4; ++j) d = std::max(d, std::abs(a[i][j] - b[i][j]));
        return d;
    };
    rep.dev_coarse_half = sup_dev(xh, xh2);
    rep.dev_half_quarter = sup_dev(xh2, xh4);
    if (rep.dev_half_quarter > 0.0 && rep.dev_coarse_half > 0.0)
        rep.observed_order = std::log2(rep.dev_coarse_half / rep.dev_half_quarter);
    const double denom = std::pow(2.0, cfg.method_order) - 1.0;
    rep.error_estimate = rep.dev_half_quarter / denom;
    rep.needs_smaller_max_step = rep.error_estimate > rep.threshold;
    return rep;
}

}  // namespace entsim::oracle
