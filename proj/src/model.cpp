#include "entsim/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace entsim {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

void validate(const ModelParams& p) {
    require_finite(p.omega0, "omega0");
    require_finite(p.gamma, "gamma");
    require_finite(p.lambda, "lambda");
    require_finite(p.delta, "delta");
    require_finite(p.omega_drive, "omega_drive");
    require_finite(p.beta, "beta");
    require_finite(p.r1, "r1");
    require_finite(p.eta, "eta");
    require_finite(p.phi, "phi");

    require(p.gamma > 0.0, "gamma must satisfy gamma > 0");
    require(p.lambda > 0.0, "lambda must satisfy lambda > 0");
    require(p.omega0 > 0.0, "omega0 must satisfy omega0 > 0");
    require(p.beta >= 0.0 && p.beta < 1.0, "beta must satisfy 0 <= beta < 1");
    require(p.r1 >= 0.0 && p.r1 <= 1.0, "r1 must satisfy 0 <= r1 <= 1");
    require(p.omega_drive >= 0.0, "omega_drive must satisfy omega_drive >= 0");
    require(p.eta >= 0.0 && p.eta <= std::numbers::pi, "eta must lie in [0, pi]");
    require(p.phi >= 0.0 && p.phi < 2.0 * std::numbers::pi, "phi must lie in [0, 2*pi)");
}

void set_param(ModelParams& p, std::string_view name, double value) {
    if (name == "omega0") p.omega0 = value;
    else if (name == "gamma") p.gamma = value;
    else if (name == "lambda") p.lambda = value;
    else if (name == "delta") p.delta = value;
    else if (name == "omega_drive") p.omega_drive = value;
    else if (name == "beta") p.beta = value;
    else if (name == "r1") p.r1 = value;
    else if (name == "eta") p.eta = value;
    else if (name == "phi") p.phi = value;
    else throw std::invalid_argument("unknown parameter name: " + std::string(name));
}

bool is_param_name(std::string_view name) {
    static constexpr std::string_view names[] = {"omega0", "gamma",       "lambda", "delta", "omega_drive",
                                                 "beta",   "r1",          "eta",    "phi"};
    for (auto n : names)
        if (n == name) return true;
    return false;
}

DressedFrame dressed_frame(const ModelParams& p) {
    validate(p);
    DressedFrame f;
    f.omega_d = std::hypot(p.delta, 2.0 * p.omega_drive);
    // No drive means no rotation of the basis, regardless of the detuning sign.
    f.theta = (p.omega_drive == 0.0) ? 0.0 : std::atan2(2.0 * p.omega_drive, p.delta);
    const double c = std::cos(f.theta / 2.0);
    f.g_fac = c * c * c * c;
    return f;
}

KernelParams kernel_params(const ModelParams& p, const DressedFrame& f) {
    KernelParams k;
    k.y = cplx(p.lambda, p.delta - f.omega_d);
    k.mu = cplx(p.lambda, p.omega0);
    const cplx shift = k.mu * p.beta;
    k.v_plus = -k.y + shift;
    k.v_minus = -k.y - shift;
    k.y_plus = k.v_plus / k.y;
    k.y_minus = k.v_minus / k.y;
    k.prefactor = p.gamma * p.lambda / 8.0;
    return k;
}

}  // namespace entsim
