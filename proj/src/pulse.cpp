#include "pairsim/pulse.hpp"

#include <cmath>
#include <string>

namespace pairsim {

void PulseSpec::validate(const char* name) const
{
    auto fail = [name](const std::string& msg) { throw InputError(std::string(name) + "." + msg); };
    if (!std::isfinite(omega_peak) || omega_peak < 0.0) {
        fail("omega: must be finite and >= 0");
    }
    if (!std::isfinite(center) || !std::isfinite(detuning) || !std::isfinite(chirp) ||
        !std::isfinite(phase0) || !std::isfinite(chirp_origin)) {
        fail("center/detuning/chirp/phase: must be finite");
    }
    if (shape == PulseShape::gaussian && !(width > 0.0 && std::isfinite(width))) {
        fail("width: must be > 0 for a gaussian pulse");
    }
}

PulseSpec cw_pulse(double omega, double detuning, double phase)
{
    PulseSpec p;
    p.shape = PulseShape::cw;
    p.omega_peak = omega;
    p.detuning = detuning;
    p.phase0 = phase;
    return p;
}

PulseSpec gaussian_pulse(double omega, double center, double width, double detuning, double chirp,
                         double phase)
{
    PulseSpec p;
    p.shape = PulseShape::gaussian;
    p.omega_peak = omega;
    p.center = center;
    p.width = width;
    p.detuning = detuning;
    p.chirp = chirp;
    p.phase0 = phase;
    return p;
}

double envelope(const PulseSpec& spec, double t) noexcept
{
    switch (spec.shape) {
        case PulseShape::off: return 0.0;
        case PulseShape::cw: return 1.0;
        case PulseShape::gaussian: {
            const double x = (t - spec.center) / spec.width;
            return std::exp(-x * x);
        }
    }
    return 0.0;
}

Complex rabi(const PulseSpec& spec, double t)
{
    if (!std::isfinite(t)) {
        throw InputError("rabi: non-finite time");
    }
    const double e = envelope(spec, t);
    if (e == 0.0) {
        return {0.0, 0.0};
    }
    const double tc = t - spec.chirp_origin;
    return spec.omega_peak * e * std::polar(1.0, -(spec.phase0 + spec.chirp * tc * tc));
}

double instantaneous_detuning(const PulseSpec& spec, double t) noexcept
{
    return spec.detuning + 2.0 * spec.chirp * (t - spec.chirp_origin);
}

} // namespace pairsim
