#include "pairsim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "pairsim/parallel.hpp"

namespace pairsim {

namespace {

std::string trim(std::string s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        out.push_back(trim(item));
    }
    return out;
}

double parse_plain(const std::string& text, const std::string& field)
{
    double v = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || text.empty()) {
        throw InputError(field + ": cannot parse number '" + text + "'");
    }
    return v;
}

// Accepts a plain number or a single quotient "a/b".
double parse_number(const std::string& raw, const std::string& field)
{
    const std::string text = trim(raw);
    const auto slash = text.find('/');
    double v = 0.0;
    if (slash == std::string::npos) {
        v = parse_plain(text, field);
    }
    else {
        const double num = parse_plain(trim(text.substr(0, slash)), field);
        const double den = parse_plain(trim(text.substr(slash + 1)), field);
        if (den == 0.0) {
            throw InputError(field + ": division by zero in '" + text + "'");
        }
        v = num / den;
    }
    if (!std::isfinite(v)) {
        throw InputError(field + ": value must be finite");
    }
    return v;
}

int parse_int(const std::string& raw, const std::string& field)
{
    const double v = parse_number(raw, field);
    if (v != std::floor(v) || std::abs(v) > 1e9) {
        throw InputError(field + ": expected an integer, got '" + trim(raw) + "'");
    }
    return static_cast<int>(v);
}

Complex parse_complex(const std::string& raw, const std::string& field)
{
    const auto parts = split(raw, ',');
    if (parts.size() == 1) {
        return {parse_number(parts[0], field), 0.0};
    }
    if (parts.size() == 2) {
        return {parse_number(parts[0], field), parse_number(parts[1], field)};
    }
    throw InputError(field + ": expected 're' or 're,im'");
}

std::string fmt(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

int level_index(char c, const std::string& field)
{
    if (c < 'a' || c > 'd') {
        throw InputError(field + ": unknown level '" + std::string(1, c) + "'");
    }
    return c - 'a';
}

PulseShape parse_shape(const std::string& raw, const std::string& field)
{
    const std::string s = trim(raw);
    if (s == "off") return PulseShape::off;
    if (s == "cw") return PulseShape::cw;
    if (s == "gaussian") return PulseShape::gaussian;
    throw InputError(field + ": shape must be off, cw or gaussian (got '" + s + "')");
}

OutputKind parse_output(const std::string& s, const std::string& field)
{
    if (s == "gcs") return OutputKind::gcs;
    if (s == "duan") return OutputKind::duan;
    if (s == "moments") return OutputKind::moments;
    if (s == "noise_split") return OutputKind::noise_split;
    if (s == "relate") return OutputKind::relate;
    throw InputError(field + ": unknown output '" + s + "'");
}

std::string output_name(OutputKind k)
{
    switch (k) {
    case OutputKind::gcs: return "gcs";
    case OutputKind::duan: return "duan";
    case OutputKind::moments: return "moments";
    case OutputKind::noise_split: return "noise_split";
    case OutputKind::relate: return "relate";
    }
    return "?";
}

struct NumericRef {
    double* real = nullptr;
    int* integer = nullptr;
};

double* pulse_field(PulseSpec& p, const std::string& key)
{
    if (key == "omega") return &p.omega_peak;
    if (key == "center") return &p.center;
    if (key == "width") return &p.width;
    if (key == "detuning") return &p.detuning;
    if (key == "chirp") return &p.chirp;
    if (key == "phase") return &p.phase0;
    if (key == "chirp_origin") return &p.chirp_origin;
    return nullptr;
}

NumericRef numeric_ref(ScenarioConfig& cfg, const std::string& section, const std::string& key)
{
    NumericRef r;
    if (section == "atom") {
        AtomConfig& a = cfg.atom;
        if (key == "gamma_ab") r.real = &a.gamma_ab;
        else if (key == "gamma_ac") r.real = &a.gamma_ac;
        else if (key == "gamma_db") r.real = &a.gamma_db;
        else if (key == "gamma_dc") r.real = &a.gamma_dc;
        else if (key == "gamma_bc") r.real = &a.gamma_bc;
        else if (key == "g_k") r.real = &a.g_k;
        else if (key == "g_q") r.real = &a.g_q;
        else if (key == "n_th_k") r.real = &a.n_th_k;
        else if (key == "n_th_q") r.real = &a.n_th_q;
        if (!r.real && key.size() == 6 && key.rfind("rho_", 0) == 0 && key[4] == key[5]) {
            const int x = level_index(key[4], "atom." + key);
            r.real = &reinterpret_cast<double(&)[2]>(a.rho0(x, x))[0];
        }
    }
    else if (section == "pump") {
        r.real = pulse_field(cfg.drives.pump, key);
    }
    else if (section == "control") {
        r.real = pulse_field(cfg.drives.control, key);
    }
    else if (section == "run") {
        if (key == "t_end") r.real = &cfg.run.t_end;
        else if (key == "grid_points") r.integer = &cfg.run.grid_points;
        else if (key == "rtol") r.real = &cfg.run.rtol;
        else if (key == "atol") r.real = &cfg.run.atol;
        else if (key == "workers") r.integer = &cfg.run.workers;
    }
    else if (section == "verify") {
        if (!cfg.verify) {
            cfg.verify.emplace();
        }
        OracleConfig& v = *cfg.verify;
        if (key == "cutoff_k") r.integer = &v.cutoff_k;
        else if (key == "cutoff_q") r.integer = &v.cutoff_q;
        else if (key == "g_k") r.real = &v.g_k;
        else if (key == "g_q") r.real = &v.g_q;
        else if (key == "max_dim") r.integer = &v.max_dim;
        else if (key == "leakage_tolerance") r.real = &v.leakage_tolerance;
        else if (key == "leakage_floor") r.real = &v.leakage_floor;
        else if (key == "rtol") r.real = &v.ode.rtol;
        else if (key == "atol") r.real = &v.ode.atol;
    }
    return r;
}

void apply_key(ScenarioConfig& cfg, const std::string& section, const std::string& key, const std::string& value)
{
    const std::string field = section + "." + key;
    if (section == "run" && key == "name") {
        cfg.name = trim(value);
        return;
    }
    if (section == "run" && key == "outputs") {
        cfg.run.outputs.clear();
        for (const auto& item : split(value, ',')) {
            cfg.run.outputs.insert(parse_output(item, field));
        }
        if (cfg.run.outputs.empty()) {
            throw InputError(field + ": at least one output is required");
        }
        return;
    }
    if (section == "run" && key == "ordering") {
        const std::string v = trim(value);
        if (v == "causal") cfg.run.ordering = Ordering::causal;
        else if (v == "literal") cfg.run.ordering = Ordering::literal;
        else throw InputError(field + ": must be causal or literal");
        return;
    }
    if (section == "run" && key == "quadrature") {
        const std::string v = trim(value);
        if (v == "exact") cfg.run.quadrature = Quadrature::exact;
        else if (v == "trapezoid") cfg.run.quadrature = Quadrature::trapezoid;
        else throw InputError(field + ": must be exact or trapezoid");
        return;
    }
    if ((section == "pump" || section == "control") && key == "shape") {
        (section == "pump" ? cfg.drives.pump : cfg.drives.control).shape = parse_shape(value, field);
        return;
    }
    if (section == "scan" && key == "parameter") {
        if (!cfg.scan) cfg.scan.emplace();
        cfg.scan->parameter = trim(value);
        return;
    }
    if (section == "scan" && key == "values") {
        if (!cfg.scan) cfg.scan.emplace();
        cfg.scan->values.clear();
        const std::string v = trim(value);
        if (!v.empty()) {
            for (const auto& item : split(v, ',')) {
                cfg.scan->values.push_back(parse_number(item, field));
            }
        }
        return;
    }
    if (section == "verify" && key == "g") {
        if (!cfg.verify) cfg.verify.emplace();
        cfg.verify->g_k = cfg.verify->g_q = parse_number(value, field);
        return;
    }
    if (section == "atom" && key.size() == 6 && key.rfind("rho_", 0) == 0 && key[4] != key[5]) {
        const int x = level_index(key[4], field);
        const int y = level_index(key[5], field);
        const Complex c = parse_complex(value, field);
        cfg.atom.rho0(x, y) = c;
        cfg.atom.rho0(y, x) = std::conj(c);
        return;
    }
    const NumericRef ref = numeric_ref(cfg, section, key);
    if (ref.real) {
        *ref.real = parse_number(value, field);
        return;
    }
    if (ref.integer) {
        *ref.integer = parse_int(value, field);
        return;
    }
    throw InputError("unknown configuration key '" + field + "'");
}

void require(bool ok, const std::string& message)
{
    if (!ok) {
        throw InputError(message);
    }
}

} // namespace

std::vector<std::string> ScanAxis::paths() const
{
    std::vector<std::string> out;
    for (const auto& p : split(parameter, ',')) {
        if (!p.empty()) {
            out.push_back(p);
        }
    }
    return out;
}

std::string to_string(Ordering o)
{
    return o == Ordering::causal ? "causal" : "literal";
}

std::string to_string(Quadrature q)
{
    return q == Quadrature::exact ? "exact" : "trapezoid";
}

std::string to_string(PulseShape s)
{
    switch (s) {
    case PulseShape::off: return "off";
    case PulseShape::cw: return "cw";
    case PulseShape::gaussian: return "gaussian";
    }
    return "?";
}

void ScenarioConfig::validate() const
{
    atom.validate();
    drives.pump.validate("pump");
    drives.control.validate("control");
    require(std::isfinite(run.t_end) && run.t_end > 0.0, "run.t_end must be > 0");
    require(run.grid_points >= 50, "run.grid_points must be >= 50");
    require(run.rtol > 0.0 && run.atol > 0.0, "run.rtol and run.atol must be > 0");
    require(run.workers >= 1, "run.workers must be >= 1");
    require(!run.outputs.empty(), "run.outputs must not be empty");
    if (scan) {
        require(!scan->paths().empty(), "scan.parameter must name a parameter");
        require(!scan->values.empty(), "scan.values must be a non-empty list");
        for (double v : scan->values) {
            require(std::isfinite(v), "scan.values must be finite");
        }
        ScenarioConfig probe = *this;
        for (const auto& p : scan->paths()) {
            set_parameter(probe, p, scan->values.front());
        }
    }
    if (verify) {
        verify->validate();
        require(verify->ode.rtol > 0.0 && verify->ode.atol > 0.0, "verify.rtol and verify.atol must be > 0");
    }
}

ScenarioConfig parse_scenario(std::istream& in, const std::string& name)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error& e) {
        throw InputError(std::string("config syntax: ") + e.message() + " (line " + std::to_string(e.line()) + ")");
    }
    ScenarioConfig cfg;
    cfg.name = name;
    // Any rho_* key replaces the default initial state.
    if (const auto atom = tree.get_child_optional("atom")) {
        for (const auto& kv : *atom) {
            if (kv.first.rfind("rho_", 0) == 0) {
                cfg.atom.rho0 = Mat4::Zero();
                break;
            }
        }
    }
    for (const auto& section : tree) {
        if (section.second.empty()) {
            throw InputError("config key '" + section.first + "' must belong to a section");
        }
        const std::string& sec = section.first;
        if (sec != "atom" && sec != "pump" && sec != "control" && sec != "run" && sec != "scan" && sec != "verify") {
            throw InputError("unknown configuration section [" + sec + "]");
        }
        if (sec == "verify" && !cfg.verify) {
            cfg.verify.emplace();
        }
        for (const auto& kv : section.second) {
            apply_key(cfg, sec, kv.first, kv.second.data());
        }
    }
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open config file '" + path + "'");
    }
    std::string stem = path;
    if (const auto slash = stem.find_last_of('/'); slash != std::string::npos) {
        stem = stem.substr(slash + 1);
    }
    if (const auto dot = stem.find_last_of('.'); dot != std::string::npos) {
        stem = stem.substr(0, dot);
    }
    return parse_scenario(in, stem);
}

void set_parameter(ScenarioConfig& cfg, const std::string& path, double value)
{
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        throw InputError("parameter path '" + path + "' must look like section.key");
    }
    const std::string section = path.substr(0, dot);
    const std::string key = path.substr(dot + 1);
    if (section == "verify" && key == "g") {
        if (!cfg.verify) cfg.verify.emplace();
        cfg.verify->g_k = cfg.verify->g_q = value;
        return;
    }
    const NumericRef ref = numeric_ref(cfg, section, key);
    if (ref.real) {
        *ref.real = value;
        return;
    }
    if (ref.integer) {
        if (value != std::floor(value)) {
            throw InputError("parameter '" + path + "' takes integer values");
        }
        *ref.integer = static_cast<int>(value);
        return;
    }
    throw InputError("unknown scan parameter '" + path + "'");
}

double get_parameter(const ScenarioConfig& cfg, const std::string& path)
{
    ScenarioConfig copy = cfg;
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        throw InputError("parameter path '" + path + "' must look like section.key");
    }
    const NumericRef ref = numeric_ref(copy, path.substr(0, dot), path.substr(dot + 1));
    if (ref.real) return *ref.real;
    if (ref.integer) return *ref.integer;
    throw InputError("unknown parameter '" + path + "'");
}

std::vector<std::pair<std::string, std::string>> describe(const ScenarioConfig& cfg)
{
    std::vector<std::pair<std::string, std::string>> d;
    const AtomConfig& a = cfg.atom;
    d.emplace_back("run.name", cfg.name);
    d.emplace_back("atom.gamma_ab", fmt(a.gamma_ab));
    d.emplace_back("atom.gamma_ac", fmt(a.gamma_ac));
    d.emplace_back("atom.gamma_db", fmt(a.gamma_db));
    d.emplace_back("atom.gamma_dc", fmt(a.gamma_dc));
    d.emplace_back("atom.gamma_bc", fmt(a.gamma_bc));
    d.emplace_back("atom.g_k", fmt(a.g_k));
    d.emplace_back("atom.g_q", fmt(a.g_q));
    d.emplace_back("atom.n_th_k", fmt(a.n_th_k));
    d.emplace_back("atom.n_th_q", fmt(a.n_th_q));
    const char labels[] = "abcd";
    for (int x = 0; x < 4; ++x) {
        for (int y = x; y < 4; ++y) {
            const std::string key = std::string("atom.rho_") + labels[x] + labels[y];
            const Complex v = a.rho0(x, y);
            d.emplace_back(key, x == y ? fmt(v.real()) : fmt(v.real()) + "," + fmt(v.imag()));
        }
    }
    for (const auto& [label, p] : {std::pair<std::string, const PulseSpec*>{"pump", &cfg.drives.pump},
                                   std::pair<std::string, const PulseSpec*>{"control", &cfg.drives.control}}) {
        d.emplace_back(label + ".shape", to_string(p->shape));
        d.emplace_back(label + ".omega", fmt(p->omega_peak));
        d.emplace_back(label + ".center", fmt(p->center));
        d.emplace_back(label + ".width", fmt(p->width));
        d.emplace_back(label + ".detuning", fmt(p->detuning));
        d.emplace_back(label + ".chirp", fmt(p->chirp));
        d.emplace_back(label + ".phase", fmt(p->phase0));
        d.emplace_back(label + ".chirp_origin", fmt(p->chirp_origin));
    }
    d.emplace_back("run.t_end", fmt(cfg.run.t_end));
    d.emplace_back("run.grid_points", std::to_string(cfg.run.grid_points));
    d.emplace_back("run.ordering", to_string(cfg.run.ordering));
    d.emplace_back("run.quadrature", to_string(cfg.run.quadrature));
    d.emplace_back("run.rtol", fmt(cfg.run.rtol));
    d.emplace_back("run.atol", fmt(cfg.run.atol));
    std::string outs;
    for (auto k : cfg.run.outputs) {
        outs += (outs.empty() ? "" : ",") + output_name(k);
    }
    d.emplace_back("run.outputs", outs);
    if (cfg.scan) {
        d.emplace_back("scan.parameter", cfg.scan->parameter);
        std::string vals;
        for (double v : cfg.scan->values) {
            vals += (vals.empty() ? "" : ",") + fmt(v);
        }
        d.emplace_back("scan.values", vals);
    }
    if (cfg.verify) {
        const OracleConfig& v = *cfg.verify;
        d.emplace_back("verify.cutoff_k", std::to_string(v.cutoff_k));
        d.emplace_back("verify.cutoff_q", std::to_string(v.cutoff_q));
        d.emplace_back("verify.g_k", fmt(v.g_k));
        d.emplace_back("verify.g_q", fmt(v.g_q));
        d.emplace_back("verify.max_dim", std::to_string(v.max_dim));
        d.emplace_back("verify.leakage_tolerance", fmt(v.leakage_tolerance));
        d.emplace_back("verify.leakage_floor", fmt(v.leakage_floor));
        d.emplace_back("verify.rtol", fmt(v.ode.rtol));
        d.emplace_back("verify.atol", fmt(v.ode.atol));
    }
    return d;
}

std::string config_hash(const ScenarioConfig& cfg)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& [k, v] : describe(cfg)) {
        for (const char c : k + "=" + v + "\n") {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

ScenarioResult run_scenario(const ScenarioConfig& cfg)
{
    cfg.validate();
    ScenarioResult r;
    r.config = cfg;
    try {
        const DriftModel model(cfg.atom, cfg.drives);
        const TimeGrid grid(cfg.run.t_end, cfg.run.grid_points);
        PropagatorOptions popt;
        popt.quadrature = cfg.run.quadrature;
        popt.ode.rtol = cfg.run.rtol;
        popt.ode.atol = cfg.run.atol;
        const PropagatorGrid pg(model, grid, popt);
        r.moments = compute_moments(pg, cfg.atom, cfg.run.ordering, cfg.run.workers);
    }
    catch (const IntegrationError& e) {
        throw IntegrationError("scenario '" + cfg.name + "': " + e.what(), e.time());
    }
    r.observables = compute_observables(r.moments);
    r.summary = summarize(r.observables);
    return r;
}

ScanResult run_scan(const ScenarioConfig& cfg, int workers)
{
    if (!cfg.scan) {
        throw InputError("scan: configuration has no [scan] section");
    }
    cfg.validate();
    ScanResult out;
    out.base = cfg;
    out.values = cfg.scan->values;
    out.runs.resize(out.values.size());
    std::vector<ScenarioConfig> configs;
    for (double v : out.values) {
        ScenarioConfig c = cfg;
        c.scan.reset();
        c.run.workers = 1;
        for (const auto& p : cfg.scan->paths()) {
            set_parameter(c, p, v);
        }
        c.name = cfg.name + "[" + cfg.scan->parameter + "=" + fmt(v) + "]";
        configs.push_back(std::move(c));
    }
    parallel_for(static_cast<int>(configs.size()), workers, [&](int k) {
        out.runs[static_cast<std::size_t>(k)] = run_scenario(configs[static_cast<std::size_t>(k)]);
    });
    return out;
}

double max_relative_difference(const std::vector<double>& a, const std::vector<double>& b, double threshold)
{
    if (a.size() != b.size()) {
        throw InputError("max_relative_difference: length mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::max(std::abs(a[i]), std::abs(b[i])) > threshold) {
            worst = std::max(worst, std::abs(a[i] - b[i]) / std::abs(b[i]));
        }
    }
    return worst;
}

VerifyResult run_verify(const ScenarioConfig& cfg)
{
    ScenarioConfig c = cfg;
    if (!c.verify) {
        c.verify.emplace();
    }
    c.atom.g_k = c.verify->g_k;
    c.atom.g_q = c.verify->g_q;
    c.scan.reset();
    VerifyResult v;
    v.kernel = run_scenario(c).moments;
    const TimeGrid grid(c.run.t_end, c.run.grid_points);
    v.oracle = oracle_moments(*c.verify, c.atom, c.drives, grid);
    v.config = c;
    std::vector<double> kn, on, kq, oq, kx, ox;
    for (std::size_t i = 0; i < v.kernel.t.size(); ++i) {
        kn.push_back(v.kernel.nk.total(i).real());
        on.push_back(v.oracle.nk[i].real());
        kq.push_back(v.kernel.nq.total(i).real());
        oq.push_back(v.oracle.nq[i].real());
        kx.push_back(std::abs(v.kernel.qk.total(i)));
        ox.push_back(std::abs(v.oracle.qk[i]));
    }
    v.max_relative_n_k = max_relative_difference(kn, on, v.threshold);
    v.max_relative_n_q = max_relative_difference(kq, oq, v.threshold);
    v.max_relative_qk = max_relative_difference(kx, ox, v.threshold);
    return v;
}

} // namespace pairsim
