// model.hpp: physical inputs for the driven moving-qubit pair and the derived
// dressed-frame and memory-kernel constants. Everything is expressed in units
// of the reservoir coupling rate gamma.
#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <string_view>
#include <vector>

namespace entsim {

using cplx = std::complex<double>;

struct ModelParams {
    double omega0 = 1.5e9;                     // bare qubit transition frequency
    double gamma = 1.0;                        // reservoir coupling rate (the unit)
    double lambda = 4.0;                       // Lorentzian spectral width
    double delta = 0.0;                        // drive detuning omega0 - omega_L
    double omega_drive = 0.0;                  // classical driving strength
    double beta = 0.0;                         // velocity ratio v/c, 0 <= beta < 1
    double r1 = 0.5;                           // relative coupling of qubit 1
    double eta = std::numbers::pi / 2;         // initial-state mixing angle, [0, pi]
    double phi = 0.0;                          // initial-state relative phase, [0, 2*pi)

    // relative coupling of qubit 2, fixed by normalization r1^2 + r2^2 = 1
    double r2() const { return std::sqrt(1.0 - r1 * r1); }
};

// Throws std::invalid_argument naming the offending field and constraint.
void validate(const ModelParams& p);

// Sets one parameter by field name ("lambda", "beta", ...). Throws on unknown
// names. Used by sweep axes and the config loader.
void set_param(ModelParams& p, std::string_view name, double value);
bool is_param_name(std::string_view name);

// Qubit + classical drive diagonalized: |E> = cos(t/2)|e> + sin(t/2)|g>,
// |G> = cos(t/2)|g> - sin(t/2)|e> with t = theta.
struct DressedFrame {
    double omega_d = 0.0;  // dressed transition frequency sqrt(delta^2 + 4 Omega^2)
    double theta = 0.0;    // mixing angle, [0, pi); 0 when the drive is off
    double g_fac = 1.0;    // coupling suppression factor cos^4(theta/2)
};

DressedFrame dressed_frame(const ModelParams& p);

// Constants of the infinite-cavity memory kernel
//   F(t - t') = prefactor * [exp(V+ (t-t')) + exp(V- (t-t'))].
struct KernelParams {
    cplx y;                  // lambda + i*(delta - omega_d)
    cplx mu;                 // lambda + i*omega0
    cplx v_plus;             // -y + mu*beta
    cplx v_minus;            // -y - mu*beta
    cplx y_plus;             // v_plus / y
    cplx y_minus;            // v_minus / y
    double prefactor = 0.0;  // gamma * lambda / 8

    // beat frequency omega0*beta introduced by the qubit motion
    double oscillation_rate() const { return std::abs(std::imag(v_plus - v_minus)) / 2.0; }
};

KernelParams kernel_params(const ModelParams& p, const DressedFrame& f);

// Sampled solution: collective decay amplitude eps(t) and the two qubit
// amplitudes c1(t), c2(t) on a common time grid.
struct Trajectory {
    std::vector<double> times;
    std::vector<cplx> eps;  // empty when not requested
    std::vector<cplx> c1;
    std::vector<cplx> c2;
};

}  // namespace entsim
