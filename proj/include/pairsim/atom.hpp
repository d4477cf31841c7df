#pragma once

// Four-level double-Raman atom: c -> d (pump), d -> b (Stokes k),
// b -> a (control), a -> c (anti-Stokes q). Rotating-frame drift matrix of
// the Heisenberg-Langevin system dX/dt = M(t) X + F(t) with X_m = sigma_m.

#include <vector>

#include "pairsim/ode.hpp"
#include "pairsim/pulse.hpp"
#include "pairsim/types.hpp"

namespace pairsim {

struct AtomConfig {
    double gamma_ab = 1.0; ///< decay a -> b
    double gamma_ac = 1.0; ///< decay a -> c (rate unit)
    double gamma_db = 1.0; ///< decay d -> b
    double gamma_dc = 1.0; ///< decay d -> c
    double gamma_bc = 0.0; ///< ground-state dephasing
    double g_k = 0.1;      ///< Stokes coupling
    double g_q = 0.1;      ///< anti-Stokes coupling
    double n_th_k = 0.0;
    double n_th_q = 0.0;
    Mat4 rho0 = default_rho0(); ///< rows/cols ordered a, b, c, d

    static Mat4 default_rho0();
    static Mat4 diagonal_rho0(double rho_aa, double rho_bb, double rho_cc, double rho_dd);

    /// Throws InputError naming the offending field.
    void validate() const;
};

/// Pump and control drives.
struct Drives {
    PulseSpec pump;
    PulseSpec control;
};

/// Rotating-frame atomic Hamiltonian h(t) (4x4, levels a, b, c, d).
Mat4 hamiltonian(const Drives& drives, double t);

/// Time-dependent drift matrix with the dissipative part cached.
class DriftModel {
  public:
    DriftModel(AtomConfig atom, Drives drives);

    Mat16 operator()(double t) const;

    const AtomConfig& atom() const noexcept { return atom_; }
    const Drives& drives() const noexcept { return drives_; }
    const Mat16& dissipator() const noexcept { return dissipator_; }

  private:
    AtomConfig atom_;
    Drives drives_;
    Mat16 dissipator_;
};

Mat16 drift_matrix(const AtomConfig& atom, const Drives& drives, double t);

/// <sigma_xy> = rho_yx.
Vec16 state_vector(const Mat4& rho);
Mat4 density_matrix(const Vec16& x);

/// Uniform grid t_i = i h, i = 0..points-1, h = t_end / (points - 1).
class TimeGrid {
  public:
    TimeGrid(double t_end, int points);

    int size() const noexcept { return points_; }
    double step() const noexcept { return h_; }
    double t_end() const noexcept { return t_end_; }
    double operator[](int i) const noexcept { return i == points_ - 1 ? t_end_ : h_ * i; }
    std::vector<double> times() const;

  private:
    double t_end_;
    int points_;
    double h_;
};

struct StateTrajectory {
    std::vector<double> t;
    std::vector<Vec16> x;
};

StateTrajectory evolve_state(const DriftModel& model, const TimeGrid& grid, const OdeOptions& options = {});

} // namespace pairsim
