#include "pairsim/scenario.hpp"

#include <functional>
#include <map>

namespace pairsim {

namespace {

constexpr double kFig2Width = 1.0 / 15.0;
constexpr double kFig5Width = 1.0 / 2.1;
constexpr double kChirp = 150.0;
constexpr double kFig7bWidth = 0.2;

ScenarioConfig named(const std::string& name)
{
    ScenarioConfig c;
    c.name = name;
    return c;
}

// Double resonant Raman, rho_bb = rho_cc = 0.5.
ScenarioConfig drr(const std::string& name)
{
    ScenarioConfig c = named(name);
    c.atom.rho0 = AtomConfig::diagonal_rho0(0.0, 0.5, 0.5, 0.0);
    return c;
}

ScenarioConfig fig2a()
{
    ScenarioConfig c = drr("fig2a");
    c.drives.pump = cw_pulse(10.0);
    c.drives.control = cw_pulse(10.0);
    return c;
}

ScenarioConfig fig2b()
{
    ScenarioConfig c = drr("fig2b");
    c.drives.pump = gaussian_pulse(10.0, 0.5, kFig2Width);
    c.drives.control = gaussian_pulse(10.0, 0.5, kFig2Width);
    return c;
}

ScenarioConfig fig3a()
{
    ScenarioConfig c = fig2b();
    c.name = "fig3a";
    c.scan = ScanAxis{"pump.width,control.width", {1.0 / 5.0, 1.0 / 10.0, 1.0 / 15.0}};
    return c;
}

ScenarioConfig fig3b()
{
    ScenarioConfig c = fig2b();
    c.name = "fig3b";
    c.drives.pump.detuning = -100.0;
    c.drives.control.detuning = -100.0;
    c.scan = ScanAxis{"pump.omega,control.omega", {10.0, 20.0, 50.0, 100.0}};
    return c;
}

ScenarioConfig fig4b()
{
    ScenarioConfig c = fig2b();
    c.name = "fig4b";
    c.drives.pump.chirp = kChirp;
    c.drives.control.chirp = kChirp;
    return c;
}

ScenarioConfig fig4c()
{
    ScenarioConfig c = fig2b();
    c.name = "fig4c";
    c.drives.pump.chirp = kChirp;
    c.drives.control.chirp = -kChirp;
    return c;
}

ScenarioConfig fig4d()
{
    ScenarioConfig c = fig4c();
    c.name = "fig4d";
    c.drives.control.center += kFig2Width;
    return c;
}

ScenarioConfig fig5_base(const std::string& name)
{
    ScenarioConfig c = named(name);
    c.atom.rho0 = AtomConfig::diagonal_rho0(0.0, 0.0, 1.0, 0.0);
    c.drives.pump = gaussian_pulse(30.0, 0.5, kFig5Width);
    c.drives.control = gaussian_pulse(30.0, 0.5, kFig5Width);
    return c;
}

std::vector<ScenarioConfig> fig5()
{
    ScenarioConfig cw = fig5_base("fig5a-cw");
    cw.drives.pump = cw_pulse(30.0);
    cw.drives.control = cw_pulse(30.0);
    ScenarioConfig coincident = fig5_base("fig5b-coincident");
    ScenarioConfig intuitive = fig5_base("fig5c-intuitive");
    intuitive.drives.control.center += kFig5Width;
    ScenarioConfig counter = fig5_base("fig5d-counterintuitive");
    counter.drives.pump.center += kFig5Width;
    return {cw, coincident, intuitive, counter};
}

ScenarioConfig fig6a()
{
    ScenarioConfig c = drr("fig6a");
    c.drives.pump = gaussian_pulse(30.0, 0.5, kFig5Width);
    c.drives.control = gaussian_pulse(30.0, 0.5, kFig5Width);
    c.scan = ScanAxis{"pump.width,control.width", {0.1, 0.2, 0.3, kFig5Width, 0.6}};
    return c;
}

ScenarioConfig fig6b()
{
    ScenarioConfig c = drr("fig6b");
    c.drives.pump = gaussian_pulse(30.0, 0.5, kFig5Width);
    c.drives.control = gaussian_pulse(30.0, 0.5, kFig5Width);
    c.scan = ScanAxis{"pump.omega,control.omega", {10.0, 20.0, 30.0, 40.0, 50.0}};
    return c;
}

// Stokes generation from |c>, pump only unless stated.
ScenarioConfig fig7(const std::string& name)
{
    ScenarioConfig c = named(name);
    c.atom.rho0 = AtomConfig::diagonal_rho0(0.0, 0.0, 1.0, 0.0);
    return c;
}

ScenarioConfig fig7a()
{
    ScenarioConfig c = fig7("fig7a");
    c.drives.pump = cw_pulse(5.0);
    return c;
}

ScenarioConfig fig7b()
{
    ScenarioConfig c = fig7("fig7b");
    c.drives.pump = gaussian_pulse(5.0, 0.5, kFig7bWidth);
    return c;
}

ScenarioConfig fig7c()
{
    ScenarioConfig c = fig7("fig7c");
    c.drives.pump = cw_pulse(5.0, -50.0);
    return c;
}

ScenarioConfig fig7d()
{
    ScenarioConfig c = fig7c();
    c.name = "fig7d";
    c.drives.control = cw_pulse(10.0);
    return c;
}

const std::map<std::string, std::function<std::vector<ScenarioConfig>()>>& table()
{
    static const std::map<std::string, std::function<std::vector<ScenarioConfig>()>> t{
        {"fig2a", [] { return std::vector{fig2a()}; }},
        {"fig2b", [] { return std::vector{fig2b()}; }},
        {"fig3a", [] { return std::vector{fig3a()}; }},
        {"fig3b", [] { return std::vector{fig3b()}; }},
        {"fig4b", [] { return std::vector{fig4b()}; }},
        {"fig4c", [] { return std::vector{fig4c()}; }},
        {"fig4d", [] { return std::vector{fig4d()}; }},
        {"fig5", [] { return fig5(); }},
        {"fig6a", [] { return std::vector{fig6a()}; }},
        {"fig6b", [] { return std::vector{fig6b()}; }},
        {"fig7a", [] { return std::vector{fig7a()}; }},
        {"fig7b", [] { return std::vector{fig7b()}; }},
        {"fig7c", [] { return std::vector{fig7c()}; }},
        {"fig7d", [] { return std::vector{fig7d()}; }},
    };
    return t;
}

} // namespace

std::vector<std::string> preset_names()
{
    std::vector<std::string> out;
    for (const auto& [name, _] : table()) {
        out.push_back(name);
    }
    return out;
}

std::vector<ScenarioConfig> preset(const std::string& name)
{
    const auto& t = table();
    const auto it = t.find(name);
    if (it == t.end()) {
        throw InputError("unknown preset '" + name + "'");
    }
    auto configs = it->second();
    for (const auto& c : configs) {
        c.validate();
    }
    return configs;
}

} // namespace pairsim
