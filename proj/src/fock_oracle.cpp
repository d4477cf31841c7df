#include "pairsim/fock_oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

namespace pairsim {

namespace {

using SpMat = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Dense = Eigen::MatrixXcd;
using Triplet = Eigen::Triplet<Complex>;

struct Space {
    int dk;
    int dq;
    int dim() const { return 4 * dk * dq; }
    int index(int atom, int nk, int nq) const { return (atom * dk + nk) * dq + nq; }
};

// Operator |x><y| (x) f_k (x) f_q, with f_* given as (row, col, value) lists.
SpMat build(const Space& s, int x, int y, int k_shift, int q_shift)
{
    std::vector<Triplet> t;
    for (int nk = 0; nk < s.dk; ++nk) {
        for (int nq = 0; nq < s.dq; ++nq) {
            const int mk = nk + k_shift;
            const int mq = nq + q_shift;
            if (mk < 0 || mk >= s.dk || mq < 0 || mq >= s.dq) {
                continue;
            }
            double amp = 1.0;
            // k_shift = -1: annihilation, sqrt(nk); +1: creation, sqrt(nk + 1)
            if (k_shift < 0) amp *= std::sqrt(static_cast<double>(nk));
            if (k_shift > 0) amp *= std::sqrt(static_cast<double>(nk + 1));
            if (q_shift < 0) amp *= std::sqrt(static_cast<double>(nq));
            if (q_shift > 0) amp *= std::sqrt(static_cast<double>(nq + 1));
            t.emplace_back(s.index(x, mk, mq), s.index(y, nk, nq), amp);
        }
    }
    SpMat m(s.dim(), s.dim());
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// Identity on the atom, ladder action on the modes.
SpMat field_op(const Space& s, int k_shift, int q_shift)
{
    SpMat m(s.dim(), s.dim());
    for (int a = 0; a < 4; ++a) {
        m += build(s, a, a, k_shift, q_shift);
    }
    return m;
}

Complex expect(const SpMat& op, const Dense& rho)
{
    // Tr(rho O) = sum_ij O_ij rho_ji
    Complex acc{};
    for (int i = 0; i < op.outerSize(); ++i) {
        for (SpMat::InnerIterator it(op, i); it; ++it) {
            acc += it.value() * rho(it.col(), it.row());
        }
    }
    return acc;
}

std::vector<double> thermal(double n_th, int d)
{
    std::vector<double> p(static_cast<std::size_t>(d));
    double sum = 0.0;
    for (int n = 0; n < d; ++n) {
        p[static_cast<std::size_t>(n)] = n_th == 0.0 ? (n == 0 ? 1.0 : 0.0)
                                                     : std::pow(n_th, n) / std::pow(1.0 + n_th, n + 1);
        sum += p[static_cast<std::size_t>(n)];
    }
    for (auto& v : p) {
        v /= sum;
    }
    return p;
}

} // namespace

void OracleConfig::validate() const
{
    if (cutoff_k < 1 || cutoff_q < 1) {
        throw InputError("verify.cutoff_k and verify.cutoff_q must be >= 1");
    }
    if (!(leakage_tolerance > 0.0) || !(leakage_floor >= 0.0)) {
        throw InputError("verify.leakage_tolerance must be > 0 and verify.leakage_floor >= 0");
    }
    if (!std::isfinite(g_k) || !std::isfinite(g_q) || g_k < 0.0 || g_q < 0.0) {
        throw InputError("verify.g must be finite and >= 0");
    }
    const int dim = 4 * (cutoff_k + 1) * (cutoff_q + 1);
    if (dim > max_dim) {
        throw InputError("verify: joint dimension " + std::to_string(dim) + " exceeds max_dim " +
                         std::to_string(max_dim));
    }
}

MomentSeries OracleResult::as_moment_series() const
{
    auto wrap = [](const std::vector<Complex>& v) {
        PairSeries p;
        p.boundary = v;
        p.noise.assign(v.size(), Complex{});
        p.ordering.assign(v.size(), Complex{});
        p.field.assign(v.size(), Complex{});
        return p;
    };
    MomentSeries m;
    m.t = t;
    m.qk = wrap(qk);
    m.qk_dag = wrap(qk_dag);
    m.nk = wrap(nk);
    m.nq = wrap(nq);
    m.kk = wrap(kk);
    m.qq = wrap(qq);
    m.mean_k = mean_k;
    m.mean_q = mean_q;
    return m;
}

OracleResult oracle_moments(const OracleConfig& cfg, const AtomConfig& atom, const Drives& drives,
                            const TimeGrid& grid)
{
    cfg.validate();
    atom.validate();
    constexpr int A = 0, B = 1, C = 2, D = 3;
    const Space s{cfg.cutoff_k + 1, cfg.cutoff_q + 1};
    const int dim = s.dim();

    // Quantized couplings: -g_k a_k^dag |b><d| - g_q a_q^dag |c><a| + h.c.
    SpMat h_field = -cfg.g_k * build(s, B, D, +1, 0) - cfg.g_q * build(s, C, A, 0, +1);
    h_field = SpMat(h_field + SpMat(h_field.adjoint()));

    const SpMat s_dd = build(s, D, D, 0, 0);
    const SpMat s_aa = build(s, A, A, 0, 0);
    const SpMat s_dc = build(s, D, C, 0, 0);
    const SpMat s_ab = build(s, A, B, 0, 0);

    struct Jump {
        SpMat op;
    };
    std::vector<Jump> jumps;
    auto add_jump = [&](int lo, int hi, double rate) {
        if (rate > 0.0) {
            jumps.push_back({std::sqrt(rate) * build(s, lo, hi, 0, 0)});
        }
    };
    add_jump(B, A, atom.gamma_ab);
    add_jump(C, A, atom.gamma_ac);
    add_jump(B, D, atom.gamma_db);
    add_jump(C, D, atom.gamma_dc);
    add_jump(B, B, atom.gamma_bc);
    add_jump(C, C, atom.gamma_bc);
    SpMat loss(dim, dim);
    for (const auto& j : jumps) {
        loss += SpMat(SpMat(j.op.adjoint()) * j.op);
    }
    loss *= 0.5;

    const PulseSpec pump = drives.pump;
    const PulseSpec control = drives.control;
    pump.validate("pump");
    control.validate("control");

    // Effective generator K(t) = -i H(t) - loss; d rho = K rho + (K rho)^dag + sum L rho L^dag.
    auto generator = [&](double t) {
        const Complex op = rabi(pump, t);
        const Complex oc = rabi(control, t);
        SpMat h = h_field;
        h += (-pump.detuning) * s_dd;
        h += (-control.detuning) * s_aa;
        h += (-op) * s_dc + (-std::conj(op)) * SpMat(s_dc.adjoint());
        h += (-oc) * s_ab + (-std::conj(oc)) * SpMat(s_ab.adjoint());
        SpMat k = (-kI) * h - loss;
        return k;
    };

    auto rhs = [&](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
        const Eigen::Map<const Dense> rho(y.data(), dim, dim);
        Eigen::Map<Dense> drho(dy.data(), dim, dim);
        const SpMat k = generator(t);
        const Dense kr = k * rho;
        drho = kr + kr.adjoint();
        for (const auto& j : jumps) {
            const Dense lr = j.op * rho;
            drho += j.op * Dense(lr.adjoint());
        }
    };

    // Initial state rho0 (x) thermal_k (x) thermal_q.
    const auto pk = thermal(atom.n_th_k, s.dk);
    const auto pq = thermal(atom.n_th_q, s.dq);
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim) * dim);
    {
        Eigen::Map<Dense> rho(y.data(), dim, dim);
        for (int x = 0; x < 4; ++x) {
            for (int z = 0; z < 4; ++z) {
                for (int nk = 0; nk < s.dk; ++nk) {
                    for (int nq = 0; nq < s.dq; ++nq) {
                        rho(s.index(x, nk, nq), s.index(z, nk, nq)) =
                            atom.rho0(x, z) * pk[static_cast<std::size_t>(nk)] * pq[static_cast<std::size_t>(nq)];
                    }
                }
            }
        }
    }

    const SpMat ak = field_op(s, -1, 0);
    const SpMat aq = field_op(s, 0, -1);
    const SpMat akd = SpMat(ak.adjoint());
    const SpMat aqd = SpMat(aq.adjoint());
    const SpMat o_nk = akd * ak;
    const SpMat o_nq = aqd * aq;
    const SpMat o_qk = aq * ak;
    const SpMat o_qkd = aq * akd;
    const SpMat o_kk = ak * ak;
    const SpMat o_qq = aq * aq;

    OracleResult out;
    out.t = grid.times();
    const std::size_t n = out.t.size();
    for (auto* v : {&out.qk, &out.qk_dag, &out.nk, &out.nq, &out.kk, &out.qq, &out.mean_k, &out.mean_q}) {
        v->resize(n);
    }
    out.atomic_state.resize(n);
    out.min_eigenvalue = 0.0;

    auto observe = [&](std::size_t i, double t, const Eigen::VectorXcd& state) {
        const Eigen::Map<const Dense> rho(state.data(), dim, dim);
        out.nk[i] = expect(o_nk, rho);
        out.nq[i] = expect(o_nq, rho);
        out.qk[i] = expect(o_qk, rho);
        out.qk_dag[i] = expect(o_qkd, rho);
        out.kk[i] = expect(o_kk, rho);
        out.qq[i] = expect(o_qq, rho);
        out.mean_k[i] = expect(ak, rho);
        out.mean_q[i] = expect(aq, rho);

        Mat4 marginal = Mat4::Zero();
        double top = 0.0;
        for (int x = 0; x < 4; ++x) {
            for (int nk = 0; nk < s.dk; ++nk) {
                for (int nq = 0; nq < s.dq; ++nq) {
                    for (int z = 0; z < 4; ++z) {
                        marginal(x, z) += rho(s.index(x, nk, nq), s.index(z, nk, nq));
                    }
                    if (nk == s.dk - 1 || nq == s.dq - 1) {
                        top += rho(s.index(x, nk, nq), s.index(x, nk, nq)).real();
                    }
                }
            }
        }
        out.atomic_state[i] = state_vector(marginal);
        out.max_trace_error = std::max(out.max_trace_error, std::abs(rho.trace() - 1.0));
        out.max_hermiticity_error = std::max(out.max_hermiticity_error, (rho - rho.adjoint()).cwiseAbs().maxCoeff());

        const double photons = out.nk[i].real() + out.nq[i].real();
        if (top > cfg.leakage_floor) {
            const double ratio = photons > 0.0 ? top / photons : std::numeric_limits<double>::infinity();
            out.max_leakage_ratio = std::max(out.max_leakage_ratio, ratio);
            if (ratio > cfg.leakage_tolerance) {
                throw CutoffError("Fock oracle: top-layer population " + std::to_string(top) + " exceeds " +
                                  std::to_string(cfg.leakage_tolerance) + " of the photon number at t = " +
                                  std::to_string(t) + "; increase cutoff_k / cutoff_q");
            }
        }
        if (cfg.check_positivity) {
            const Dense herm = 0.5 * (rho + rho.adjoint());
            const Eigen::SelfAdjointEigenSolver<Dense> eig(herm, Eigen::EigenvaluesOnly);
            out.min_eigenvalue = std::min(out.min_eigenvalue, eig.eigenvalues().minCoeff());
        }
    };

    auto ode = make_integrator(rhs, cfg.ode);
    ode.integrate(0.0, y, grid.t_end(), out.t, observe);
    return out;
}

} // namespace pairsim
