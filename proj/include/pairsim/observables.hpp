#pragma once

// Nonclassicality diagnostics built from a MomentSeries.

#include <vector>

#include "pairsim/moments.hpp"

namespace pairsim {

struct ObservableOptions {
    double cs_floor = 1e-24;       ///< minimum Cauchy-Schwarz denominator
    double fraction_floor = 1e-30; ///< minimum boundary + noise photon number
    double significance = 1e-2;    ///< summary mask: n >= significance * max n
};

struct ObservableSeries {
    std::vector<double> t;
    std::vector<double> g_cs;
    std::vector<bool> cs_defined;
    std::vector<double> duan_d;
    std::vector<double> duan_d_optimized;
    std::vector<double> g2;
    std::vector<double> phi_kq;
    std::vector<double> n_k;
    std::vector<double> n_q;
    std::vector<double> noise_fraction_k;
    std::vector<double> noise_fraction_q;
    std::vector<bool> fraction_defined_k;
    std::vector<bool> fraction_defined_q;
    std::vector<double> relate_residual;
    std::vector<bool> relate_certified;
};

struct CauchySchwarz {
    std::vector<double> g_cs;
    std::vector<bool> defined;
};

struct Duan {
    std::vector<double> d;
    std::vector<double> d_optimized;
};

struct RelateCheck {
    std::vector<double> g2;
    std::vector<double> phi_kq;
    std::vector<double> residual;
    std::vector<bool> certified;
};

struct NoiseFractions {
    std::vector<double> k;
    std::vector<double> q;
    std::vector<bool> defined_k;
    std::vector<bool> defined_q;
};

CauchySchwarz cauchy_schwarz(const MomentSeries& m, double floor = 1e-24);
Duan duan(const MomentSeries& m);
RelateCheck relate_check(const MomentSeries& m);
NoiseFractions noise_fractions(const MomentSeries& m, double floor = 1e-30);

/// <(Delta u)^2> + <(Delta v)^2> for u = x_k + x_q, v = p_k - p_q from the
/// complete set of centered second moments (including <a_k^2>, <a_q^2>).
double quadrature_variance_sum(Complex n_k, Complex n_q, Complex qk, Complex qk_dag, Complex kk, Complex qq);

ObservableSeries compute_observables(const MomentSeries& m, const ObservableOptions& options = {});

/// Scalar summaries used by scans and the acceptance checks.
struct SeriesSummary {
    double peak_g_cs = 0.0;           ///< max g_cs where defined and both n above the significance mask
    double peak_g_cs_time = 0.0;
    double peak_g_cs_unmasked = 0.0;  ///< max g_cs wherever defined
    double min_duan_d = 0.0;
    double min_duan_d_optimized = 0.0;
    double peak_n_k = 0.0;
    double peak_n_q = 0.0;
    double peak_noise_fraction_k = 0.0; ///< max noise fraction of n_k where n_k above the mask
    double noise_fraction_k_at_peak = 0.0;
    double longest_g_cs_above_one = 0.0; ///< longest contiguous masked stretch with g_cs > 1
};

SeriesSummary summarize(const ObservableSeries& obs, const ObservableOptions& options = {});

} // namespace pairsim
