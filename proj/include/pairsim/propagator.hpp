#pragma once

// Two-time propagator U(t, s) of dX/dt = M(t) X and the cumulative
// source-row kernels K_r(t, s) = int_s^t U_r(tau, s) dtau.

#include <array>
#include <cstddef>
#include <vector>

#include "pairsim/atom.hpp"
#include "pairsim/ode.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

/// Zero-based operator indices of the source rows, in order ac (3), bd (8), ca (9), db (14).
inline constexpr std::array<int, 4> kSourceOps{2, 7, 8, 13};

/// Position of a source row inside kSourceOps.
enum class SourceRow : int { ac = 0, bd = 1, ca = 2, db = 3 };

using KernelRows = Eigen::Matrix<Complex, 4, kNumOps, Eigen::RowMajor>;
using ColBlock = Eigen::Matrix<Complex, kNumOps, 4>;
using SourceIntegrals = Eigen::Matrix<Complex, kNumOps, 8>;
using SourceRowIntegrals = Eigen::Matrix<Complex, 4, 8, Eigen::RowMajor>;

enum class Quadrature {
    exact,     ///< s- and tau-integrals integrated as ODEs inside each grid interval
    trapezoid, ///< trapezoidal rule on the grid
};

/// Integrals over one grid interval [s_j, s_{j+1}], with Phi(s) = U(s_{j+1}, s),
/// w(s) = int_s^{s_{j+1}} E U(tau, s) dtau, E selecting the source rows, and
/// Y(s) = [X_c(p, r) | X_c(r, p)] for the four source rows r.
struct IntervalData {
    Mat16 p;              ///< U(s_{j+1}, s_j)
    KernelRows w;         ///< w(s_j)
    Mat16 g;              ///< int Phi 2D Phi^T ds
    ColBlock hb;          ///< int Phi 2D w^T ds
    KernelRows hf;        ///< int w 2D Phi^T ds
    Mat4 l;               ///< int w 2D w^T ds
    SourceIntegrals v;    ///< int Phi Y ds
    SourceRowIntegrals q; ///< int w Y ds
};

struct PropagatorOptions {
    Quadrature quadrature = Quadrature::exact;
    OdeOptions ode{1e-10, 1e-16};
};

/// State trajectory and per-interval integrals on a uniform grid.
class PropagatorGrid {
  public:
    PropagatorGrid(const DriftModel& model, const TimeGrid& grid, const PropagatorOptions& options = {});

    const TimeGrid& grid() const noexcept { return grid_; }
    Quadrature quadrature() const noexcept { return quadrature_; }
    const std::vector<Vec16>& states() const noexcept { return states_; }
    const std::vector<IntervalData>& intervals() const noexcept { return intervals_; }

    /// K(t_i, s_j) for j = 0..i (entry j), via K(t, s_j) = K(t, s_{j+1}) P_j + w_j.
    std::vector<KernelRows> kernel_column(int i) const;

  private:
    TimeGrid grid_;
    Quadrature quadrature_;
    std::vector<Vec16> states_;
    std::vector<IntervalData> intervals_;
};

/// Materialized kernels for all grid pairs i >= j (diagnostics; O(N^2) memory).
class KernelStore {
  public:
    static constexpr int kMaxPoints = 1200;

    explicit KernelStore(const PropagatorGrid& grid);

    int size() const noexcept { return points_; }
    const KernelRows& operator()(int i, int j) const;
    Complex kernel(SourceRow r, int m, int i, int j) const;

  private:
    int points_;
    std::vector<KernelRows> data_;
};

/// U(t_i, s_j) for i = j..N-1 (entry i - j) by direct integration of dU/dt = M U.
std::vector<Mat16> propagate_from(const DriftModel& model, const TimeGrid& grid, int s_index,
                                  const OdeOptions& options = {});

/// Integrals of one interval [s0, s1] starting from state x0. Returns the state at s1 through x1.
IntervalData integrate_interval(const DriftModel& model, double s0, double s1, const Vec16& x0, Vec16& x1,
                                const OdeOptions& options);

/// Source-term matrix Y(X) = [X_c(p, r) | X_c(r, p)], columns ordered as kSourceOps.
SourceIntegrals source_terms(const Vec16& x);

} // namespace pairsim
