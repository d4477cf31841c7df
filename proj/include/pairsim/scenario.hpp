#pragma once

// Scenario configuration (INI), figure presets, runs, scans and CSV output.

#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "pairsim/atom.hpp"
#include "pairsim/fock_oracle.hpp"
#include "pairsim/moments.hpp"
#include "pairsim/observables.hpp"
#include "pairsim/propagator.hpp"

namespace pairsim {

inline constexpr const char* kToolVersion = "1.0.0";

enum class OutputKind { gcs, duan, moments, noise_split, relate };

struct RunSettings {
    double t_end = 3.0;
    int grid_points = 600;
    Ordering ordering = Ordering::causal;
    Quadrature quadrature = Quadrature::exact;
    double rtol = 1e-10;
    double atol = 1e-16;
    int workers = 1;
    std::set<OutputKind> outputs{OutputKind::gcs, OutputKind::duan, OutputKind::moments, OutputKind::noise_split,
                                 OutputKind::relate};
};

/// One scan axis; `parameter` may tie several paths with commas ("pump.width,control.width").
struct ScanAxis {
    std::string parameter;
    std::vector<double> values;

    std::vector<std::string> paths() const;
};

struct ScenarioConfig {
    std::string name = "scenario";
    AtomConfig atom;
    Drives drives;
    RunSettings run;
    std::optional<ScanAxis> scan;
    std::optional<OracleConfig> verify;

    /// Throws InputError with a field-level message.
    void validate() const;
};

ScenarioConfig parse_scenario(std::istream& in, const std::string& name = "scenario");
ScenarioConfig load_scenario(const std::string& path);

/// Sets a numeric parameter by "section.key" path; unknown paths are rejected.
void set_parameter(ScenarioConfig& cfg, const std::string& path, double value);
double get_parameter(const ScenarioConfig& cfg, const std::string& path);

/// Every parameter (defaults included) as ordered "section.key" / value pairs.
std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg);

/// FNV-1a 64-bit hash of the canonical description.
std::string config_hash(const ScenarioConfig& cfg);

struct ScenarioResult {
    ScenarioConfig config;
    MomentSeries moments;
    ObservableSeries observables;
    SeriesSummary summary;
};

ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct ScanResult {
    ScenarioConfig base;
    std::vector<double> values;
    std::vector<ScenarioResult> runs;
};

ScanResult run_scan(const ScenarioConfig& cfg, int workers = 1);

struct VerifyResult {
    ScenarioConfig config; ///< couplings replaced by the oracle's
    MomentSeries kernel;
    OracleResult oracle;
    double max_relative_n_k = 0.0;
    double max_relative_n_q = 0.0;
    double max_relative_qk = 0.0;
    double threshold = 1e-12;
};

/// Kernel pipeline vs Fock oracle at the oracle's couplings.
VerifyResult run_verify(const ScenarioConfig& cfg);

/// Largest |a - b| / |b| over entries where max(|a|, |b|) > threshold.
double max_relative_difference(const std::vector<double>& a, const std::vector<double>& b, double threshold);

// Presets

std::vector<std::string> preset_names();

/// Scenario list for a named figure preset (several runs for multi-panel presets).
std::vector<ScenarioConfig> preset(const std::string& name);

// Output

void write_series_csv(std::ostream& out, const ScenarioResult& result);
void write_scan_csv(std::ostream& out, const ScanResult& result);
void write_verify_csv(std::ostream& out, const VerifyResult& result);
void write_manifest(std::ostream& out, const ScenarioConfig& cfg, const std::vector<std::string>& files);

std::string to_string(Ordering o);
std::string to_string(Quadrature q);
std::string to_string(PulseShape s);

} // namespace pairsim
