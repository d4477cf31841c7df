#include <cmath>
#include <limits>
#include <numbers>

#include <doctest.h>

#include "pairsim/pulse.hpp"

using namespace pairsim;

TEST_CASE("Gaussian envelope peak and 1/e points")
{
    const PulseSpec p = gaussian_pulse(10.0, 0.5, 1.0 / 15.0);
    CHECK(std::abs(rabi(p, 0.5) - Complex(10.0, 0.0)) < 1e-14);
    CHECK(std::abs(rabi(p, 0.5 + 1.0 / 15.0) - 10.0 * std::exp(-1.0)) < 1e-12);
    CHECK(std::abs(rabi(p, 0.5 - 1.0 / 15.0) - 10.0 * std::exp(-1.0)) < 1e-12);
}

TEST_CASE("cw amplitude carries the constant phase")
{
    const PulseSpec p = cw_pulse(5.0, 0.0, std::numbers::pi);
    for (double t : {0.0, 0.7, 2.9}) {
        CHECK(std::abs(rabi(p, t) - Complex(-5.0, 0.0)) < 1e-12);
    }
}

TEST_CASE("non-finite time is rejected")
{
    const PulseSpec p = cw_pulse(1.0);
    CHECK_THROWS_AS(rabi(p, std::numeric_limits<double>::quiet_NaN()), InputError);
    CHECK_THROWS_AS(rabi(p, std::numeric_limits<double>::infinity()), InputError);
}

TEST_CASE("instantaneous detuning")
{
    CHECK(instantaneous_detuning(cw_pulse(1.0), 2.0) == 0.0);
    CHECK(instantaneous_detuning(gaussian_pulse(1.0, 0.5, 0.1, 0.0, 1.0), 1.0) == doctest::Approx(2.0));
    CHECK(instantaneous_detuning(cw_pulse(1.0, -100.0), 0.3) == -100.0);
}

TEST_CASE("envelope symmetry and chirp invariance of the magnitude")
{
    const PulseSpec plain = gaussian_pulse(7.0, 0.8, 0.2);
    const PulseSpec chirped = gaussian_pulse(7.0, 0.8, 0.2, 0.0, 45.0, 0.3);
    const PulseSpec negative = gaussian_pulse(7.0, 0.8, 0.2, 0.0, -45.0, 0.0);
    const PulseSpec positive = gaussian_pulse(7.0, 0.8, 0.2, 0.0, 45.0, 0.0);
    for (double dt = 0.0; dt < 0.7; dt += 0.037) {
        CHECK(std::abs(rabi(plain, 0.8 + dt)) == doctest::Approx(std::abs(rabi(plain, 0.8 - dt))).epsilon(1e-13));
        CHECK(std::abs(rabi(chirped, 0.8 + dt)) == doctest::Approx(std::abs(rabi(plain, 0.8 + dt))).epsilon(1e-13));
        CHECK(std::abs(rabi(negative, 0.8 + dt) - std::conj(rabi(positive, 0.8 + dt))) < 1e-12);
        CHECK(std::abs(rabi(chirped, 0.8 + dt)) <= 7.0 + 1e-12);
    }
}

TEST_CASE("chirp phase is referenced to the configured origin")
{
    PulseSpec p = cw_pulse(1.0);
    p.chirp = 2.0;
    CHECK(std::abs(rabi(p, 1.5) - std::polar(1.0, -2.0 * 1.5 * 1.5)) < 1e-12);
    p.chirp_origin = 0.5;
    CHECK(std::abs(rabi(p, 1.5) - std::polar(1.0, -2.0)) < 1e-12);
}

TEST_CASE("pulse validation names the field")
{
    PulseSpec p = gaussian_pulse(1.0, 0.5, 0.0);
    CHECK_THROWS_WITH_AS(p.validate("pump"), doctest::Contains("pump.width"), InputError);
    p = cw_pulse(-1.0);
    CHECK_THROWS_WITH_AS(p.validate("control"), doctest::Contains("control.omega"), InputError);
    p = cw_pulse(1.0);
    p.width = 0.0;
    CHECK_NOTHROW(p.validate("pump"));
}
