#pragma once

// Equal-time field moments of the Stokes (k) and anti-Stokes (q) modes to
// second order in the couplings, split into boundary, noise, ordering and
// initial-field parts.

#include <vector>

#include "pairsim/atom.hpp"
#include "pairsim/index_algebra.hpp"
#include "pairsim/propagator.hpp"

namespace pairsim {

enum class Ladder { a_k, a_k_dag, a_q, a_q_dag };

struct LadderSpec {
    Ladder which;
    Complex coupling;
    OpIndex source_row;

    SourceRow row() const noexcept;
    bool creation() const noexcept { return which == Ladder::a_k_dag || which == Ladder::a_q_dag; }
    bool stokes() const noexcept { return which == Ladder::a_k || which == Ladder::a_k_dag; }
};

/// a_k_dag <-> (-i g_k, db), a_k <-> (+i g_k, bd), a_q <-> (+i g_q, ca), a_q_dag <-> (-i g_q, ac).
LadderSpec ladder(Ladder which, const AtomConfig& atom);

/// How products of non-commuting source operators at distinct times are treated.
enum class Ordering {
    causal,  ///< operator order fixed by the causal field solution
    literal, ///< boundary + noise contraction taken verbatim for every ordering
};

/// Coupling-free integrals at one grid time t, all over source rows (ac, bd, ca, db).
struct RowMoments {
    Mat4 boundary;             ///< K(t,0) X0pair K(t,0)^T
    Mat4 noise;                ///< int_0^t K(t,s) 2D(s) K(t,s)^T ds
    SourceRowIntegrals source; ///< int_0^t K(t,s) Y(s) ds
    Eigen::Matrix<Complex, 4, 1> mean; ///< K(t,0) X(0)
};

std::vector<RowMoments> row_moments(const PropagatorGrid& grid, int workers = 1);

/// <sigma_m(0) sigma_n(0)> in state rho0.
Complex initial_pair_expectation(OpIndex m, OpIndex n, const Mat4& rho0);

struct PairSeries {
    std::vector<Complex> boundary;
    std::vector<Complex> noise;
    std::vector<Complex> ordering;
    std::vector<Complex> field;

    std::size_t size() const noexcept { return boundary.size(); }
    Complex total(std::size_t i) const { return boundary[i] + noise[i] + ordering[i] + field[i]; }
    std::vector<Complex> totals() const;
};

PairSeries pair_moment(const LadderSpec& a, const LadderSpec& b, const std::vector<RowMoments>& rows,
                       const AtomConfig& atom, Ordering ordering);

/// Boundary + noise through the regression route c_A c_B int (K^A . X_c(p, r_B) + K^B . X_c(r_A, p)) ds.
std::vector<Complex> regression_route(const LadderSpec& a, const LadderSpec& b, const std::vector<RowMoments>& rows);

std::vector<Complex> single_moment(const LadderSpec& a, const std::vector<RowMoments>& rows);

struct MomentSeries {
    std::vector<double> t;
    PairSeries qk;       ///< <a_q a_k>
    PairSeries qk_dag;   ///< <a_q a_k^dag>
    PairSeries nk;       ///< <a_k^dag a_k>
    PairSeries nq;       ///< <a_q^dag a_q>
    PairSeries kk;       ///< <a_k^2>
    PairSeries qq;       ///< <a_q^2>
    std::vector<Complex> mean_k;
    std::vector<Complex> mean_q;
};

MomentSeries assemble_moments(const std::vector<double>& t, const std::vector<RowMoments>& rows,
                              const AtomConfig& atom, Ordering ordering);

MomentSeries compute_moments(const PropagatorGrid& grid, const AtomConfig& atom, Ordering ordering,
                             int workers = 1);

} // namespace pairsim
