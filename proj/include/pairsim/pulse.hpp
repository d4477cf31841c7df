#pragma once

#include "pairsim/types.hpp"

namespace pairsim {

enum class PulseShape { off, cw, gaussian };

/// One laser drive in the rotating frame. Times in 1/Gamma_ac, rates in Gamma_ac.
struct PulseSpec {
    PulseShape shape = PulseShape::off;
    double omega_peak = 0.0;  ///< peak Rabi frequency
    double center = 0.5;      ///< envelope center t_x
    double width = 1.0;       ///< Gaussian width sigma_x, exp[-(t - t_x)^2 / sigma_x^2]
    double detuning = 0.0;    ///< static detuning Delta_x
    double chirp = 0.0;       ///< alpha_x, quadratic phase exp(-i alpha_x (t - t_ref)^2)
    double phase0 = 0.0;      ///< constant phase phi_x
    double chirp_origin = 0.0; ///< t_ref; the chirp phase is referenced to the window start by default

    void validate(const char* name) const;
};

PulseSpec cw_pulse(double omega, double detuning = 0.0, double phase = 0.0);
PulseSpec gaussian_pulse(double omega, double center, double width, double detuning = 0.0,
                         double chirp = 0.0, double phase = 0.0);

double envelope(const PulseSpec& spec, double t) noexcept;

/// Complex Rabi amplitude Omega_x E(t) exp(-i(phi_x + alpha_x (t - t_ref)^2)).
Complex rabi(const PulseSpec& spec, double t);

/// Diagnostic Delta_x + 2 alpha_x (t - t_ref); the drift matrix uses rabi() instead.
double instantaneous_detuning(const PulseSpec& spec, double t) noexcept;

} // namespace pairsim
