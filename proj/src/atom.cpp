#include "pairsim/atom.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>


namespace pairsim {

namespace {

constexpr int A = 0;
constexpr int B = 1;
constexpr int C = 2;
constexpr int D = 3;

constexpr int op(int x, int y) { return 4 * x + y; }

void require_rate(double value, const char* name)
{
    if (!std::isfinite(value) || value < 0.0) {
        throw InputError(std::string("atom.") + name + " must be finite and >= 0 (got " +
                         std::to_string(value) + ")");
    }
}

// sigma -> L^dag sigma L - (L^dag L sigma + sigma L^dag L)/2 for L = sqrt(rate) |lo><hi|.
void add_decay(Mat16& m, int hi, int lo, double rate)
{
    if (rate == 0.0) {
        return;
    }
    m(op(lo, lo), op(hi, hi)) += rate;
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            const int k = (x == hi) + (y == hi);
            if (k != 0) {
                m(op(x, y), op(x, y)) -= 0.5 * rate * k;
            }
        }
    }
}

// Same map for L = sqrt(rate) |l><l|.
void add_dephasing(Mat16& m, int l, double rate)
{
    if (rate == 0.0) {
        return;
    }
    m(op(l, l), op(l, l)) += rate;
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            const int k = (x == l) + (y == l);
            if (k != 0) {
                m(op(x, y), op(x, y)) -= 0.5 * rate * k;
            }
        }
    }
}

} // namespace

Mat4 AtomConfig::default_rho0()
{
    return diagonal_rho0(0.0, 0.0, 1.0, 0.0);
}

Mat4 AtomConfig::diagonal_rho0(double rho_aa, double rho_bb, double rho_cc, double rho_dd)
{
    Mat4 rho = Mat4::Zero();
    rho(A, A) = rho_aa;
    rho(B, B) = rho_bb;
    rho(C, C) = rho_cc;
    rho(D, D) = rho_dd;
    return rho;
}

void AtomConfig::validate() const
{
    require_rate(gamma_ab, "gamma_ab");
    require_rate(gamma_ac, "gamma_ac");
    require_rate(gamma_db, "gamma_db");
    require_rate(gamma_dc, "gamma_dc");
    require_rate(gamma_bc, "gamma_bc");
    require_rate(g_k, "g_k");
    require_rate(g_q, "g_q");
    require_rate(n_th_k, "n_th_k");
    require_rate(n_th_q, "n_th_q");
    if (!rho0.allFinite()) {
        throw InputError("atom.rho0 has non-finite entries");
    }
    const Complex tr = rho0.trace();
    if (std::abs(tr - 1.0) > 1e-12) {
        throw InputError("atom.rho0 must have unit trace (got " + std::to_string(tr.real()) + ")");
    }
    if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-12) {
        throw InputError("atom.rho0 must be Hermitian");
    }
    const Eigen::Matrix4cd hermitian = 0.5 * (rho0 + rho0.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> eig(hermitian);
    if (eig.eigenvalues().minCoeff() < -1e-10) {
        throw InputError("atom.rho0 must be positive semidefinite (min eigenvalue " +
                         std::to_string(eig.eigenvalues().minCoeff()) + ")");
    }
}

Mat4 hamiltonian(const Drives& drives, double t)
{
    Mat4 h = Mat4::Zero();
    // Loop closure: Stokes frame follows the pump, anti-Stokes frame the control.
    h(D, D) = -drives.pump.detuning;
    h(A, A) = -drives.control.detuning;
    const Complex op_p = rabi(drives.pump, t);
    const Complex op_c = rabi(drives.control, t);
    h(D, C) = -op_p;
    h(C, D) = -std::conj(op_p);
    h(A, B) = -op_c;
    h(B, A) = -std::conj(op_c);
    return h;
}

DriftModel::DriftModel(AtomConfig atom, Drives drives)
  : atom_(std::move(atom)), drives_(std::move(drives)), dissipator_(Mat16::Zero())
{
    atom_.validate();
    drives_.pump.validate("pump");
    drives_.control.validate("control");
    add_decay(dissipator_, A, B, atom_.gamma_ab);
    add_decay(dissipator_, A, C, atom_.gamma_ac);
    add_decay(dissipator_, D, B, atom_.gamma_db);
    add_decay(dissipator_, D, C, atom_.gamma_dc);
    add_dephasing(dissipator_, B, atom_.gamma_bc);
    add_dephasing(dissipator_, C, atom_.gamma_bc);
}

Mat16 DriftModel::operator()(double t) const
{
    const Mat4 h = hamiltonian(drives_, t);
    Mat16 m = dissipator_;
    // d sigma_xy/dt = i [h, sigma_xy]
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) {
            const int row = op(x, y);
            for (int u = 0; u < 4; ++u) {
                if (h(u, x) != 0.0) {
                    m(row, op(u, y)) += kI * h(u, x);
                }
                if (h(y, u) != 0.0) {
                    m(row, op(x, u)) -= kI * h(y, u);
                }
            }
        }
    }
    return m;
}

Mat16 drift_matrix(const AtomConfig& atom, const Drives& drives, double t)
{
    return DriftModel(atom, drives)(t);
}

Vec16 state_vector(const Mat4& rho)
{
    Vec16 x;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            x(op(a, b)) = rho(b, a);
        }
    }
    return x;
}

Mat4 density_matrix(const Vec16& x)
{
    Mat4 rho;
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            rho(b, a) = x(op(a, b));
        }
    }
    return rho;
}

TimeGrid::TimeGrid(double t_end, int points) : t_end_(t_end), points_(points), h_(0.0)
{
    if (!std::isfinite(t_end) || t_end <= 0.0) {
        throw InputError("run.t_end must be > 0");
    }
    if (points < 2) {
        throw InputError("run.grid_points must be >= 2");
    }
    h_ = t_end / (points - 1);
}

std::vector<double> TimeGrid::times() const
{
    std::vector<double> out(static_cast<std::size_t>(points_));
    for (int i = 0; i < points_; ++i) {
        out[static_cast<std::size_t>(i)] = (*this)[i];
    }
    return out;
}

StateTrajectory evolve_state(const DriftModel& model, const TimeGrid& grid, const OdeOptions& options)
{
    StateTrajectory traj;
    traj.t = grid.times();
    traj.x.resize(traj.t.size());
    Eigen::VectorXcd y = state_vector(model.atom().rho0);
    auto rhs = [&model](double t, const Eigen::VectorXcd& x, Eigen::VectorXcd& dx) {
        const Vec16 xs = x;
        dx = model(t) * xs;
    };
    auto ode = make_integrator(rhs, options);
    ode.integrate(0.0, y, grid.t_end(), traj.t, [&traj](std::size_t k, double, const Eigen::VectorXcd& x) {
        traj.x[k] = x;
    });
    return traj;
}

} // namespace pairsim
