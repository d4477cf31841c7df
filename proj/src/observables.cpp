#include "pairsim/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pairsim {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Centered {
    double n_k;
    double n_q;
    Complex qk;
    Complex qk_dag;
};

Centered centered(const MomentSeries& m, std::size_t i)
{
    const Complex ak = m.mean_k[i];
    const Complex aq = m.mean_q[i];
    return {m.nk.total(i).real() - std::norm(ak), m.nq.total(i).real() - std::norm(aq),
            m.qk.total(i) - aq * ak, m.qk_dag.total(i) - aq * std::conj(ak)};
}

double fraction(Complex boundary, Complex noise, double floor, bool& defined)
{
    const double total = (boundary + noise).real();
    defined = std::abs(total) >= floor;
    if (!defined) {
        return kNaN;
    }
    return std::clamp(noise.real() / total, 0.0, 1.0);
}

} // namespace

CauchySchwarz cauchy_schwarz(const MomentSeries& m, double floor)
{
    const std::size_t n = m.t.size();
    CauchySchwarz out{std::vector<double>(n, kNaN), std::vector<bool>(n, false)};
    for (std::size_t i = 0; i < n; ++i) {
        const double nk = m.nk.total(i).real();
        const double nq = m.nq.total(i).real();
        const double num = std::norm(m.qk.total(i)) + std::norm(m.qk_dag.total(i)) + nk * nq;
        const double den =
            std::sqrt((std::norm(m.kk.total(i)) + 2.0 * nk * nk) * (std::norm(m.qq.total(i)) + 2.0 * nq * nq));
        if (den >= floor) {
            out.g_cs[i] = num / den;
            out.defined[i] = true;
        }
    }
    return out;
}

Duan duan(const MomentSeries& m)
{
    const std::size_t n = m.t.size();
    Duan out{std::vector<double>(n), std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const Centered c = centered(m, i);
        const double base = 2.0 + 2.0 * c.n_k + 2.0 * c.n_q;
        out.d[i] = base + 4.0 * c.qk.real();
        out.d_optimized[i] = base - 4.0 * std::abs(c.qk);
    }
    return out;
}

double quadrature_variance_sum(Complex n_k, Complex n_q, Complex qk, Complex qk_dag, Complex kk, Complex qq)
{
    // x = (a + a^dag)/sqrt2, p = (a - a^dag)/(i sqrt2); modes k, q commute.
    const Complex k_dag2 = std::conj(kk);
    const Complex q_dag2 = std::conj(qq);
    const Complex qk_dd = std::conj(qk);   // <a_k^dag a_q^dag>
    const Complex kdq = std::conj(qk_dag); // <a_k a_q^dag>
    const Complex xk2 = 0.5 * (kk + k_dag2 + 2.0 * n_k + 1.0);
    const Complex xq2 = 0.5 * (qq + q_dag2 + 2.0 * n_q + 1.0);
    const Complex pk2 = -0.5 * (kk + k_dag2 - 2.0 * n_k - 1.0);
    const Complex pq2 = -0.5 * (qq + q_dag2 - 2.0 * n_q - 1.0);
    // <x_k x_q> = <(a_k + a_k^dag)(a_q + a_q^dag)>/2
    const Complex xkxq = 0.5 * (qk + qk_dag + kdq + qk_dd);
    // <p_k p_q> = -<(a_k - a_k^dag)(a_q - a_q^dag)>/2
    const Complex pkpq = -0.5 * (qk - qk_dag - kdq + qk_dd);
    return (xk2 + xq2 + 2.0 * xkxq + pk2 + pq2 - 2.0 * pkpq).real();
}

RelateCheck relate_check(const MomentSeries& m)
{
    const std::size_t n = m.t.size();
    RelateCheck out{std::vector<double>(n, kNaN), std::vector<double>(n), std::vector<double>(n),
                    std::vector<bool>(n, false)};
    const Duan d = duan(m);
    for (std::size_t i = 0; i < n; ++i) {
        const double nk = m.nk.total(i).real();
        const double nq = m.nq.total(i).real();
        const double nn = nk * nq;
        if (nn > 0.0) {
            out.g2[i] = (std::norm(m.qk.total(i)) + std::norm(m.qk_dag.total(i)) + nn) / nn;
        }
        const Centered c = centered(m, i);
        out.phi_kq[i] = std::arg(c.qk);
        // n_k n_q (g2 - 1) = |<a_q a_k>|^2 + |<a_q^dag a_k>|^2 for centered moments.
        const double excess = std::norm(c.qk) + std::norm(c.qk_dag);
        const double formula = 2.0 * (1.0 + c.n_k + c.n_q + 2.0 * std::sqrt(excess) * std::cos(out.phi_kq[i]));
        out.residual[i] = std::abs(formula - d.d[i]);
        const double cn = c.n_k * c.n_q;
        out.certified[i] = std::abs(c.qk_dag) < 1e-10 * std::sqrt(std::max(cn, 0.0)) || std::abs(c.qk_dag) == 0.0;
    }
    return out;
}

NoiseFractions noise_fractions(const MomentSeries& m, double floor)
{
    const std::size_t n = m.t.size();
    NoiseFractions out{std::vector<double>(n), std::vector<double>(n), std::vector<bool>(n), std::vector<bool>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        bool dk = false;
        bool dq = false;
        out.k[i] = fraction(m.nk.boundary[i], m.nk.noise[i], floor, dk);
        out.q[i] = fraction(m.nq.boundary[i], m.nq.noise[i], floor, dq);
        out.defined_k[i] = dk;
        out.defined_q[i] = dq;
    }
    return out;
}

ObservableSeries compute_observables(const MomentSeries& m, const ObservableOptions& options)
{
    ObservableSeries o;
    o.t = m.t;
    auto cs = cauchy_schwarz(m, options.cs_floor);
    o.g_cs = std::move(cs.g_cs);
    o.cs_defined = std::move(cs.defined);
    auto d = duan(m);
    o.duan_d = std::move(d.d);
    o.duan_d_optimized = std::move(d.d_optimized);
    auto rel = relate_check(m);
    o.g2 = std::move(rel.g2);
    o.phi_kq = std::move(rel.phi_kq);
    o.relate_residual = std::move(rel.residual);
    o.relate_certified = std::move(rel.certified);
    auto nf = noise_fractions(m, options.fraction_floor);
    o.noise_fraction_k = std::move(nf.k);
    o.noise_fraction_q = std::move(nf.q);
    o.fraction_defined_k = std::move(nf.defined_k);
    o.fraction_defined_q = std::move(nf.defined_q);
    o.n_k.resize(m.t.size());
    o.n_q.resize(m.t.size());
    for (std::size_t i = 0; i < m.t.size(); ++i) {
        o.n_k[i] = m.nk.total(i).real();
        o.n_q[i] = m.nq.total(i).real();
    }
    return o;
}

SeriesSummary summarize(const ObservableSeries& obs, const ObservableOptions& options)
{
    SeriesSummary s;
    const std::size_t n = obs.t.size();
    if (n == 0) {
        return s;
    }
    s.peak_n_k = *std::max_element(obs.n_k.begin(), obs.n_k.end());
    s.peak_n_q = *std::max_element(obs.n_q.begin(), obs.n_q.end());
    s.min_duan_d = *std::min_element(obs.duan_d.begin(), obs.duan_d.end());
    s.min_duan_d_optimized = *std::min_element(obs.duan_d_optimized.begin(), obs.duan_d_optimized.end());

    const double mask_k = options.significance * s.peak_n_k;
    const double mask_q = options.significance * s.peak_n_q;
    s.peak_g_cs = kNaN;
    s.peak_g_cs_unmasked = kNaN;
    s.peak_noise_fraction_k = kNaN;
    std::size_t peak_k_index = 0;
    double run_start = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (obs.n_k[i] > obs.n_k[peak_k_index]) {
            peak_k_index = i;
        }
        const bool significant = obs.n_k[i] > 0.0 && obs.n_k[i] >= mask_k && obs.n_q[i] > 0.0 && obs.n_q[i] >= mask_q;
        if (obs.cs_defined[i]) {
            if (!(obs.g_cs[i] <= s.peak_g_cs_unmasked)) {
                s.peak_g_cs_unmasked = obs.g_cs[i];
            }
            if (significant && !(obs.g_cs[i] <= s.peak_g_cs)) {
                s.peak_g_cs = obs.g_cs[i];
                s.peak_g_cs_time = obs.t[i];
            }
        }
        const bool above = obs.cs_defined[i] && significant && obs.g_cs[i] > 1.0;
        if (above) {
            if (run_start < 0.0) {
                run_start = obs.t[i];
            }
            s.longest_g_cs_above_one = std::max(s.longest_g_cs_above_one, obs.t[i] - run_start);
        }
        else {
            run_start = -1.0;
        }
        if (obs.fraction_defined_k[i] && obs.n_k[i] >= mask_k && obs.n_k[i] > 0.0 &&
            !(obs.noise_fraction_k[i] <= s.peak_noise_fraction_k)) {
            s.peak_noise_fraction_k = obs.noise_fraction_k[i];
        }
    }
    s.noise_fraction_k_at_peak = obs.noise_fraction_k[peak_k_index];
    return s;
}

} // namespace pairsim
