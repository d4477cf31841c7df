#include <cmath>

#include <doctest.h>
#include <unsupported/Eigen/MatrixFunctions>

#include "pairsim/index_algebra.hpp"
#include "pairsim/propagator.hpp"

using namespace pairsim;

namespace {

AtomConfig driven_atom()
{
    AtomConfig a;
    a.rho0 = AtomConfig::diagonal_rho0(0.0, 0.5, 0.5, 0.0);
    return a;
}

Drives pulsed()
{
    return {gaussian_pulse(10.0, 0.5, 0.25, 1.0, 20.0), gaussian_pulse(8.0, 0.6, 0.3, -2.0, -10.0)};
}

KernelRows selector()
{
    KernelRows e = KernelRows::Zero();
    for (int r = 0; r < 4; ++r) {
        e(r, kSourceOps[r]) = 1.0;
    }
    return e;
}

double max_abs(const auto& m)
{
    return m.cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("propagator starts at the identity and matches expm for constant drift")
{
    const DriftModel model(driven_atom(), Drives{cw_pulse(10.0, 2.0), cw_pulse(6.0, -3.0, 0.5)});
    const TimeGrid grid(2.0, 41);
    const auto u = propagate_from(model, grid, 5, OdeOptions{1e-11, 1e-15});
    CHECK(max_abs(u.front() - Mat16::Identity()) == 0.0);
    const Eigen::MatrixXcd m = model(0.0);
    for (std::size_t k = 0; k < u.size(); k += 7) {
        const double dt = grid[5 + static_cast<int>(k)] - grid[5];
        const Eigen::MatrixXcd ref = (m * dt).exp();
        CHECK(max_abs(Eigen::MatrixXcd(u[k]) - ref) < 1e-8);
    }
}

TEST_CASE("propagator composition and time translation")
{
    const DriftModel model(driven_atom(), pulsed());
    const TimeGrid grid(1.5, 31);
    const auto from0 = propagate_from(model, grid, 0);
    const auto from10 = propagate_from(model, grid, 10);
    for (int i = 10; i < grid.size(); i += 4) {
        const Mat16 composed = from10[static_cast<std::size_t>(i - 10)] * from0[10];
        CHECK(max_abs(composed - from0[static_cast<std::size_t>(i)]) < 1e-8);
    }

    const DriftModel cw(driven_atom(), Drives{cw_pulse(5.0, 1.0), cw_pulse(3.0)});
    const auto a = propagate_from(cw, grid, 0);
    const auto b = propagate_from(cw, grid, 12);
    for (std::size_t k = 0; k < b.size(); k += 3) {
        CHECK(max_abs(a[k] - b[k]) < 1e-8);
    }
}

TEST_CASE("conjugate-mirror symmetry of the propagator")
{
    const DriftModel model(driven_atom(), pulsed());
    const auto u = propagate_from(model, TimeGrid(1.0, 11), 0);
    const auto& dg = dagger_table();
    const Mat16& last = u.back();
    for (int r = 0; r < kNumOps; ++r) {
        for (int c = 0; c < kNumOps; ++c) {
            CHECK(std::abs(last(dg[r], dg[c]) - std::conj(last(r, c))) < 1e-12);
        }
    }
}

TEST_CASE("interval chain reproduces the state trajectory and the direct propagator")
{
    const DriftModel model(driven_atom(), pulsed());
    const TimeGrid grid(1.2, 61);
    const PropagatorGrid pg(model, grid);
    const auto traj = evolve_state(model, grid, OdeOptions{1e-11, 1e-15});
    for (int i = 0; i < grid.size(); ++i) {
        CHECK(max_abs(pg.states()[static_cast<std::size_t>(i)] - traj.x[static_cast<std::size_t>(i)]) < 1e-8);
    }
    const auto direct = propagate_from(model, grid, 0, OdeOptions{1e-11, 1e-15});
    Mat16 chained = Mat16::Identity();
    for (int j = 0; j < grid.size() - 1; ++j) {
        chained = pg.intervals()[static_cast<std::size_t>(j)].p * chained;
    }
    CHECK(max_abs(chained - direct.back()) < 1e-8);
}

TEST_CASE("kernel vanishes on the diagonal and is linear in time without drift")
{
    AtomConfig a;
    a.gamma_ab = a.gamma_ac = a.gamma_db = a.gamma_dc = 0.0;
    const DriftModel model(a, Drives{});
    const TimeGrid grid(2.0, 21);
    const PropagatorGrid pg(model, grid);
    const KernelStore store(pg);
    for (int i = 0; i < grid.size(); ++i) {
        CHECK(max_abs(store(i, i)) == 0.0);
        for (int j = 0; j < i; j += 3) {
            CHECK(max_abs(store(i, j) - (grid[i] - grid[j]) * selector()) < 1e-12);
        }
    }
    CHECK(std::abs(store.kernel(SourceRow::db, kSourceOps[3], 20, 0) - 2.0) < 1e-12);
}

TEST_CASE("kernel agrees with direct quadrature of the propagator")
{
    const DriftModel model(driven_atom(), pulsed());
    const TimeGrid grid(1.0, 41);
    const PropagatorGrid pg(model, grid);
    const KernelStore store(pg);
    // composite Simpson on a fine grid of U(tau, s_j)
    const int j = 8;
    const TimeGrid fine(1.0, 2001);
    const int start = 400; // fine index of s_8 = 0.2
    const auto u = propagate_from(model, fine, start, OdeOptions{1e-12, 1e-16});
    const int steps = static_cast<int>(u.size()) - 1;
    REQUIRE(steps % 2 == 0);
    KernelRows k = KernelRows::Zero();
    const KernelRows e = selector();
    for (int s = 0; s <= steps; ++s) {
        const double wgt = (s == 0 || s == steps) ? 1.0 : (s % 2 == 1 ? 4.0 : 2.0);
        k += wgt * fine.step() / 3.0 * (e * u[static_cast<std::size_t>(s)]);
    }
    CHECK(max_abs(store(grid.size() - 1, j) - k) < 1e-9);
}

TEST_CASE("trapezoid quadrature converges at second order")
{
    const DriftModel model(driven_atom(), pulsed());
    PropagatorOptions trap;
    trap.quadrature = Quadrature::trapezoid;
    auto error = [&](int points) {
        const TimeGrid grid(1.0, points);
        const auto exact = PropagatorGrid(model, grid).kernel_column(points - 1).front();
        const auto approx = PropagatorGrid(model, grid, trap).kernel_column(points - 1).front();
        return max_abs(exact - approx);
    };
    const double e1 = error(101);
    const double e2 = error(201);
    const double e3 = error(401);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(e2 / e3 == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("source terms pick the contracted state components")
{
    Vec16 x;
    for (int m = 0; m < kNumOps; ++m) {
        x(m) = Complex(m, 1.0);
    }
    const SourceIntegrals y = source_terms(x);
    const auto& ct = contract_table();
    for (int r = 0; r < 4; ++r) {
        for (int p = 0; p < kNumOps; ++p) {
            const int left = ct[p][kSourceOps[r]];
            const int right = ct[kSourceOps[r]][p];
            CHECK(y(p, r) == (left < 0 ? Complex{} : x(left)));
            CHECK(y(p, 4 + r) == (right < 0 ? Complex{} : x(right)));
        }
    }
}

TEST_CASE("store refuses oversized grids")
{
    const DriftModel model(driven_atom(), Drives{});
    const PropagatorGrid pg(model, TimeGrid(0.5, KernelStore::kMaxPoints + 1));
    CHECK_THROWS_AS(KernelStore{pg}, InputError);
}
