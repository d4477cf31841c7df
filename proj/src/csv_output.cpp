#include <charconv>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "pairsim/scenario.hpp"

namespace pairsim {

namespace {

std::string num(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return ec == std::errc() ? std::string(buf, ptr) : std::string("nan");
}

void header(std::ostream& out, const ScenarioConfig& cfg)
{
    out << "# pairsim " << kToolVersion << "\n";
    out << "# config_hash = " << config_hash(cfg) << "\n";
    for (const auto& [k, v] : describe(cfg)) {
        out << "# " << k << " = " << v << "\n";
    }
}

bool has(const ScenarioConfig& cfg, OutputKind k)
{
    return cfg.run.outputs.count(k) != 0;
}

} // namespace

void write_series_csv(std::ostream& out, const ScenarioResult& r)
{
    const ScenarioConfig& cfg = r.config;
    const MomentSeries& m = r.moments;
    const ObservableSeries& o = r.observables;
    header(out, cfg);

    std::vector<std::string> cols{"t", "n_k", "n_q"};
    if (has(cfg, OutputKind::noise_split)) {
        for (const char* c : {"n_k_boundary", "n_k_noise", "n_q_boundary", "n_q_noise", "noise_fraction_k",
                              "noise_fraction_q"}) {
            cols.emplace_back(c);
        }
    }
    if (has(cfg, OutputKind::moments)) {
        for (const char* name : {"aq_ak", "aq_akdag", "ak2", "aq2", "ak", "aq"}) {
            cols.emplace_back(std::string("re_") + name);
            cols.emplace_back(std::string("im_") + name);
        }
    }
    if (has(cfg, OutputKind::gcs)) {
        cols.emplace_back("g_cs");
        cols.emplace_back("cs_defined");
    }
    if (has(cfg, OutputKind::duan)) {
        cols.emplace_back("duan_d");
        cols.emplace_back("duan_d_optimized");
    }
    if (has(cfg, OutputKind::relate)) {
        for (const char* c : {"g2", "phi_kq", "relate_residual", "relate_certified"}) {
            cols.emplace_back(c);
        }
    }
    for (std::size_t c = 0; c < cols.size(); ++c) {
        out << (c ? "," : "") << cols[c];
    }
    out << "\n";

    for (std::size_t i = 0; i < m.t.size(); ++i) {
        std::vector<std::string> row{num(m.t[i]), num(o.n_k[i]), num(o.n_q[i])};
        if (has(cfg, OutputKind::noise_split)) {
            row.push_back(num(m.nk.boundary[i].real()));
            row.push_back(num(m.nk.noise[i].real()));
            row.push_back(num(m.nq.boundary[i].real()));
            row.push_back(num(m.nq.noise[i].real()));
            row.push_back(num(o.noise_fraction_k[i]));
            row.push_back(num(o.noise_fraction_q[i]));
        }
        if (has(cfg, OutputKind::moments)) {
            for (const Complex v : {m.qk.total(i), m.qk_dag.total(i), m.kk.total(i), m.qq.total(i), m.mean_k[i],
                                    m.mean_q[i]}) {
                row.push_back(num(v.real()));
                row.push_back(num(v.imag()));
            }
        }
        if (has(cfg, OutputKind::gcs)) {
            row.push_back(num(o.g_cs[i]));
            row.push_back(o.cs_defined[i] ? "1" : "0");
        }
        if (has(cfg, OutputKind::duan)) {
            row.push_back(num(o.duan_d[i]));
            row.push_back(num(o.duan_d_optimized[i]));
        }
        if (has(cfg, OutputKind::relate)) {
            row.push_back(num(o.g2[i]));
            row.push_back(num(o.phi_kq[i]));
            row.push_back(num(o.relate_residual[i]));
            row.push_back(o.relate_certified[i] ? "1" : "0");
        }
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << row[c];
        }
        out << "\n";
    }
}

void write_scan_csv(std::ostream& out, const ScanResult& r)
{
    header(out, r.base);
    out << "value,peak_g_cs,peak_g_cs_time,peak_g_cs_unmasked,longest_g_cs_above_one,min_duan_d,"
           "min_duan_d_optimized,peak_n_k,peak_n_q,peak_noise_fraction_k\n";
    for (std::size_t k = 0; k < r.runs.size(); ++k) {
        const SeriesSummary& s = r.runs[k].summary;
        out << num(r.values[k]) << "," << num(s.peak_g_cs) << "," << num(s.peak_g_cs_time) << ","
            << num(s.peak_g_cs_unmasked) << "," << num(s.longest_g_cs_above_one) << "," << num(s.min_duan_d) << ","
            << num(s.min_duan_d_optimized) << "," << num(s.peak_n_k) << "," << num(s.peak_n_q) << ","
            << num(s.peak_noise_fraction_k) << "\n";
    }
}

void write_verify_csv(std::ostream& out, const VerifyResult& r)
{
    header(out, r.config);
    out << "# max_relative_n_k = " << num(r.max_relative_n_k) << "\n";
    out << "# max_relative_n_q = " << num(r.max_relative_n_q) << "\n";
    out << "# max_relative_abs_aq_ak = " << num(r.max_relative_qk) << "\n";
    out << "# oracle_max_trace_error = " << num(r.oracle.max_trace_error) << "\n";
    out << "# oracle_max_leakage_ratio = " << num(r.oracle.max_leakage_ratio) << "\n";
    out << "t,n_k_kernel,n_k_oracle,n_q_kernel,n_q_oracle,abs_aq_ak_kernel,abs_aq_ak_oracle\n";
    for (std::size_t i = 0; i < r.kernel.t.size(); ++i) {
        out << num(r.kernel.t[i]) << "," << num(r.kernel.nk.total(i).real()) << "," << num(r.oracle.nk[i].real())
            << "," << num(r.kernel.nq.total(i).real()) << "," << num(r.oracle.nq[i].real()) << ","
            << num(std::abs(r.kernel.qk.total(i))) << "," << num(std::abs(r.oracle.qk[i])) << "\n";
    }
}

void write_manifest(std::ostream& out, const ScenarioConfig& cfg, const std::vector<std::string>& files)
{
    nlohmann::ordered_json j;
    j["tool"] = "pairsim";
    j["version"] = kToolVersion;
    j["name"] = cfg.name;
    j["config_hash"] = config_hash(cfg);
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : describe(cfg)) {
        params[k] = v;
    }
    j["parameters"] = params;
    nlohmann::ordered_json defaults = nlohmann::ordered_json::object();
    for (const auto& [k, v] : describe(ScenarioConfig{})) {
        defaults[k] = v;
    }
    j["defaults"] = defaults;
    j["files"] = files;
    out << j.dump(2) << "\n";
}

} // namespace pairsim
