// Command-line front end: run, preset, scan and verify subcommands.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pairsim/scenario.hpp"

namespace fs = std::filesystem;
using namespace pairsim;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct Overrides {
    std::optional<int> grid_points;
    std::optional<double> tol;
    std::optional<int> workers;
    std::string out_dir = ".";
};

void apply(const Overrides& o, ScenarioConfig& cfg)
{
    if (o.grid_points) cfg.run.grid_points = *o.grid_points;
    if (o.tol) cfg.run.rtol = *o.tol;
    if (o.workers) cfg.run.workers = *o.workers;
    cfg.validate();
}

std::string safe_name(std::string name)
{
    for (char& c : name) {
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' && c != '.') {
            c = '_';
        }
    }
    return name;
}

fs::path write_file(const Overrides& o, const std::string& file, const auto& writer)
{
    fs::create_directories(o.out_dir);
    const fs::path path = fs::path(o.out_dir) / file;
    std::ofstream out(path);
    if (!out) {
        throw InputError("cannot write '" + path.string() + "'");
    }
    writer(out);
    return path;
}

void emit_manifest(const Overrides& o, const ScenarioConfig& cfg, const std::vector<std::string>& files)
{
    const auto path = write_file(o, safe_name(cfg.name) + ".manifest.json",
                                 [&](std::ostream& out) { write_manifest(out, cfg, files); });
    std::cout << "wrote " << path.string() << "\n";
}

void do_run(const Overrides& o, ScenarioConfig cfg)
{
    apply(o, cfg);
    const ScenarioResult r = run_scenario(cfg);
    const std::string file = safe_name(cfg.name) + ".csv";
    const auto path = write_file(o, file, [&](std::ostream& out) { write_series_csv(out, r); });
    std::cout << "wrote " << path.string() << "  peak g_cs " << r.summary.peak_g_cs << "  min D "
              << r.summary.min_duan_d << "  peak n_k " << r.summary.peak_n_k << "\n";
    emit_manifest(o, cfg, {file});
}

void do_scan(const Overrides& o, ScenarioConfig cfg)
{
    apply(o, cfg);
    if (!cfg.scan) {
        throw InputError("scan: configuration has no [scan] section");
    }
    const ScanResult r = run_scan(cfg, cfg.run.workers);
    std::vector<std::string> files;
    const std::string file = safe_name(cfg.name) + "_scan.csv";
    files.push_back(file);
    auto path = write_file(o, file, [&](std::ostream& out) { write_scan_csv(out, r); });
    std::cout << "wrote " << path.string() << "\n";
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
        const std::string series = safe_name(cfg.name) + "_" + std::to_string(k) + ".csv";
        files.push_back(series);
        write_file(o, series, [&](std::ostream& out) { write_series_csv(out, r.runs[k]); });
    }
    emit_manifest(o, cfg, files);
}

void do_verify(const Overrides& o, ScenarioConfig cfg)
{
    apply(o, cfg);
    const VerifyResult r = run_verify(cfg);
    const std::string file = safe_name(cfg.name) + "_verify.csv";
    const auto path = write_file(o, file, [&](std::ostream& out) { write_verify_csv(out, r); });
    std::cout << "wrote " << path.string() << "  max rel n_k " << r.max_relative_n_k << "  n_q "
              << r.max_relative_n_q << "  |<a_q a_k>| " << r.max_relative_qk << "\n";
    emit_manifest(o, r.config, {file});
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stokes/anti-Stokes pair correlations from a driven four-level atom"};
    app.require_subcommand(1);
    Overrides o;
    app.add_option("--grid-points", o.grid_points, "Override run.grid_points");
    app.add_option("--tol", o.tol, "Override the relative ODE tolerance");
    app.add_option("--out", o.out_dir, "Output directory");
    app.add_option("--workers", o.workers, "Worker threads");

    std::string config_path;
    std::string preset_name;
    auto* run = app.add_subcommand("run", "Run one scenario file");
    run->add_option("config", config_path, "Scenario INI file")->required();
    auto* pre = app.add_subcommand("preset", "Run a figure preset");
    pre->add_option("name", preset_name, "Preset name")->required();
    auto* list = app.add_subcommand("list", "List presets");
    auto* scan = app.add_subcommand("scan", "Run a parameter scan");
    scan->add_option("config", config_path, "Scenario INI file with a [scan] section")->required();
    auto* verify = app.add_subcommand("verify", "Compare against the Fock-space oracle");
    verify->add_option("config", config_path, "Scenario INI file")->required();

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*list) {
            for (const auto& n : preset_names()) {
                std::cout << n << "\n";
            }
        }
        else if (*run) {
            do_run(o, load_scenario(config_path));
        }
        else if (*scan) {
            do_scan(o, load_scenario(config_path));
        }
        else if (*verify) {
            do_verify(o, load_scenario(config_path));
        }
        else if (*pre) {
            for (auto& cfg : preset(preset_name)) {
                if (cfg.scan) {
                    do_scan(o, cfg);
                }
                else {
                    do_run(o, cfg);
                }
            }
        }
    }
    catch (const InputError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    }
    catch (const IntegrationError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    catch (const CutoffError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
