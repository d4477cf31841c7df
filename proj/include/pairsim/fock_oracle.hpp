#pragma once

// Brute-force reference: master equation for the atom plus one quantized
// Stokes and one anti-Stokes mode on truncated Fock spaces.

#include <stdexcept>
#include <vector>

#include "pairsim/atom.hpp"
#include "pairsim/moments.hpp"
#include "pairsim/ode.hpp"

namespace pairsim {

/// Truncation too small for the requested accuracy.
class CutoffError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct OracleConfig {
    int cutoff_k = 3;
    int cutoff_q = 3;
    double g_k = 0.01;
    double g_q = 0.01;
    int max_dim = 256;
    double leakage_tolerance = 1e-4; ///< top-layer population / total photon number
    double leakage_floor = 1e-14;    ///< top-layer populations below this are round-off
    bool check_positivity = false;   ///< eigen-decompose the joint state at every grid time
    OdeOptions ode{1e-10, 1e-20};

    void validate() const;
};

struct OracleResult {
    std::vector<double> t;
    std::vector<Complex> qk;     ///< <a_q a_k>
    std::vector<Complex> qk_dag; ///< <a_q a_k^dag>
    std::vector<Complex> nk;
    std::vector<Complex> nq;
    std::vector<Complex> kk;
    std::vector<Complex> qq;
    std::vector<Complex> mean_k;
    std::vector<Complex> mean_q;
    std::vector<Vec16> atomic_state; ///< atomic marginal as <sigma_xy>
    double max_trace_error = 0.0;
    double max_hermiticity_error = 0.0;
    double min_eigenvalue = 0.0; ///< only when check_positivity
    double max_leakage_ratio = 0.0;

    /// Totals in the boundary slot; the other parts are zero.
    MomentSeries as_moment_series() const;
};

/// The atom's couplings are replaced by cfg.g_k, cfg.g_q; thermal occupations are honoured.
OracleResult oracle_moments(const OracleConfig& cfg, const AtomConfig& atom, const Drives& drives,
                            const TimeGrid& grid);

} // namespace pairsim
