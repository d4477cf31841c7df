#include <cmath>

#include <doctest.h>

#include "pairsim/fock_oracle.hpp"
#include "pairsim/moments.hpp"
#include "pairsim/scenario.hpp"

using namespace pairsim;

namespace {

constexpr Ladder kAll[] = {Ladder::a_k, Ladder::a_k_dag, Ladder::a_q, Ladder::a_q_dag};

ScenarioConfig small_fig2b(int points = 200)
{
    ScenarioConfig c = preset("fig2b").front();
    c.run.grid_points = points;
    return c;
}

std::vector<RowMoments> rows_for(const ScenarioConfig& c)
{
    const PropagatorGrid pg(DriftModel(c.atom, c.drives), TimeGrid(c.run.t_end, c.run.grid_points));
    return row_moments(pg);
}

MomentSeries moments_for(const ScenarioConfig& c, Ordering o = Ordering::causal)
{
    const PropagatorGrid pg(DriftModel(c.atom, c.drives), TimeGrid(c.run.t_end, c.run.grid_points));
    return compute_moments(pg, c.atom, o);
}

double max_abs(const std::vector<Complex>& v)
{
    double m = 0.0;
    for (const auto& z : v) {
        m = std::max(m, std::abs(z));
    }
    return m;
}

} // namespace

TEST_CASE("initial pair expectations")
{
    Mat4 rho = AtomConfig::diagonal_rho0(0.1, 0.2, 0.3, 0.4);
    rho(1, 3) = Complex(0.05, 0.02);
    rho(3, 1) = std::conj(rho(1, 3));
    CHECK(initial_pair_expectation(idx('c', 'a'), idx('a', 'c'), rho) == Complex(0.3));
    CHECK(initial_pair_expectation(idx('a', 'c'), idx('c', 'a'), rho) == Complex(0.1));
    CHECK(initial_pair_expectation(idx('a', 'c'), idx('a', 'c'), rho) == Complex{});
    // sigma_db sigma_bb = sigma_db, <sigma_db> = rho_bd
    CHECK(initial_pair_expectation(idx('d', 'b'), idx('b', 'b'), rho) == rho(1, 3));
}

TEST_CASE("ladder table")
{
    const AtomConfig a;
    const auto kd = ladder(Ladder::a_k_dag, a);
    CHECK(kd.coupling == Complex(0.0, -a.g_k));
    CHECK(kd.source_row == idx('d', 'b'));
    CHECK(kd.creation());
    CHECK(kd.stokes());
    const auto q = ladder(Ladder::a_q, a);
    CHECK(q.coupling == Complex(0.0, a.g_q));
    CHECK(q.source_row == idx('c', 'a'));
    CHECK(!q.creation());
    CHECK(ladder(Ladder::a_k, a).source_row == idx('b', 'd'));
    CHECK(ladder(Ladder::a_q_dag, a).source_row == idx('a', 'c'));
}

TEST_CASE("moments vanish without coupling and at t = 0")
{
    ScenarioConfig c = small_fig2b(60);
    const auto m = moments_for(c);
    for (const PairSeries* p : {&m.qk, &m.qk_dag, &m.nk, &m.nq, &m.kk, &m.qq}) {
        CHECK(std::abs(p->total(0)) == 0.0);
    }
    c.atom.g_k = c.atom.g_q = 0.0;
    const auto z = moments_for(c);
    for (const PairSeries* p : {&z.qk, &z.qk_dag, &z.nk, &z.nq, &z.kk, &z.qq}) {
        CHECK(max_abs(p->totals()) == 0.0);
    }
}

TEST_CASE("pair moments scale with the square of the coupling")
{
    ScenarioConfig c = small_fig2b(80);
    const auto m1 = moments_for(c);
    c.atom.g_k *= 2.0;
    c.atom.g_q *= 2.0;
    const auto m2 = moments_for(c);
    for (std::size_t i = 0; i < m1.t.size(); ++i) {
        CHECK(std::abs(m2.nk.total(i) - 4.0 * m1.nk.total(i)) <= 1e-12 * std::abs(m2.nk.total(i)) + 1e-300);
        CHECK(std::abs(m2.qk.total(i) - 4.0 * m1.qk.total(i)) <= 1e-12 * std::abs(m2.qk.total(i)) + 1e-300);
    }
}

TEST_CASE("Hermitian conjugate pairs are complex conjugates")
{
    const ScenarioConfig c = small_fig2b(120);
    const auto rows = rows_for(c);
    const auto& a = c.atom;
    const auto nk = pair_moment(ladder(Ladder::a_k_dag, a), ladder(Ladder::a_k, a), rows, a, Ordering::causal);
    const auto qk = pair_moment(ladder(Ladder::a_q, a), ladder(Ladder::a_k, a), rows, a, Ordering::causal);
    const auto kq_dd =
        pair_moment(ladder(Ladder::a_k_dag, a), ladder(Ladder::a_q_dag, a), rows, a, Ordering::causal);
    const double scale = max_abs(nk.totals());
    REQUIRE(scale > 0.0);
    for (std::size_t i = 0; i < nk.size(); ++i) {
        CHECK(std::abs(nk.total(i).imag()) < 1e-9 * scale);
        CHECK(std::abs(kq_dd.total(i) - std::conj(qk.total(i))) < 1e-9 * scale);
    }
}

TEST_CASE("boundary plus noise equals the regression route for every ladder pair")
{
    const ScenarioConfig c = small_fig2b(150);
    const auto rows = rows_for(c);
    for (Ladder x : kAll) {
        for (Ladder y : kAll) {
            const auto lx = ladder(x, c.atom);
            const auto ly = ladder(y, c.atom);
            const auto direct = pair_moment(lx, ly, rows, c.atom, Ordering::literal);
            const auto reg = regression_route(lx, ly, rows);
            double scale = 1e-30;
            double worst = 0.0;
            for (std::size_t i = 0; i < reg.size(); ++i) {
                scale = std::max(scale, std::abs(reg[i]));
                worst = std::max(worst, std::abs(direct.boundary[i] + direct.noise[i] - reg[i]));
            }
            CHECK(worst <= 1e-7 * scale);
        }
    }
}

TEST_CASE("canonical commutator survives the second-order solution")
{
    const ScenarioConfig c = small_fig2b(150);
    const auto rows = rows_for(c);
    const auto& a = c.atom;
    for (auto [lo, hi] : {std::pair{Ladder::a_k, Ladder::a_k_dag}, std::pair{Ladder::a_q, Ladder::a_q_dag}}) {
        const auto anti = pair_moment(ladder(lo, a), ladder(hi, a), rows, a, Ordering::causal);
        const auto normal = pair_moment(ladder(hi, a), ladder(lo, a), rows, a, Ordering::causal);
        const double scale = max_abs(normal.totals());
        for (std::size_t i = 0; i < anti.size(); ++i) {
            CHECK(std::abs(anti.total(i) - normal.total(i) - 1.0) < 1e-8 * std::max(scale, 1e-12));
        }
    }
}

TEST_CASE("orderings agree on normally ordered moments")
{
    const ScenarioConfig c = small_fig2b(100);
    const auto causal = moments_for(c, Ordering::causal);
    const auto literal = moments_for(c, Ordering::literal);
    for (std::size_t i = 0; i < causal.t.size(); ++i) {
        CHECK(causal.nk.total(i) == literal.nk.total(i));
        CHECK(causal.nq.total(i) == literal.nq.total(i));
        CHECK(literal.qk.ordering[i] == Complex{});
    }
}

TEST_CASE("thermal modes add their occupation")
{
    ScenarioConfig c = small_fig2b(60);
    const auto cold = moments_for(c);
    c.atom.n_th_k = 0.3;
    c.atom.n_th_q = 0.2;
    const auto warm = moments_for(c);
    for (std::size_t i = 0; i < cold.t.size(); ++i) {
        CHECK(std::abs(warm.nk.total(i) - cold.nk.total(i) - 0.3) < 1e-14);
        CHECK(std::abs(warm.nq.total(i) - cold.nq.total(i) - 0.2) < 1e-14);
    }
}

TEST_CASE("coherent drive of the Stokes mode by an initial coherence")
{
    ScenarioConfig c;
    c.atom.g_k = c.atom.g_q = 0.05;
    c.atom.rho0 = AtomConfig::diagonal_rho0(0.0, 0.5, 0.4, 0.1);
    c.atom.rho0(1, 3) = 0.01;
    c.atom.rho0(3, 1) = 0.01;
    c.run.t_end = 2.0;
    c.run.grid_points = 81;
    const auto rows = rows_for(c);
    const auto mk = single_moment(ladder(Ladder::a_k, c.atom), rows);
    const TimeGrid grid(2.0, 81);
    for (int i = 0; i < grid.size(); ++i) {
        const Complex expected = kI * 0.05 * 0.01 * (1.0 - std::exp(-grid[i]));
        CHECK(std::abs(mk[static_cast<std::size_t>(i)] - expected) < 1e-12);
    }
    // diagonal states have no mean field
    c.atom.rho0 = AtomConfig::diagonal_rho0(0.0, 0.5, 0.4, 0.1);
    for (const auto& z : single_moment(ladder(Ladder::a_k, c.atom), rows_for(c))) {
        CHECK(std::abs(z) == 0.0);
    }
}

TEST_CASE("second-order moments agree with the truncated Fock-space solution")
{
    ScenarioConfig c = small_fig2b(200);
    c.atom.g_k = c.atom.g_q = 0.01;
    const auto m = moments_for(c);
    OracleConfig cfg;
    cfg.g_k = cfg.g_q = 0.01;
    const auto oracle = oracle_moments(cfg, c.atom, c.drives, TimeGrid(c.run.t_end, c.run.grid_points));
    auto rel = [](const PairSeries& p, const std::vector<Complex>& o) {
        double num = 0.0;
        double den = 0.0;
        for (std::size_t i = 0; i < o.size(); ++i) {
            num = std::max(num, std::abs(p.total(i) - o[i]));
            den = std::max(den, std::abs(o[i]));
        }
        return num / den;
    };
    CHECK(rel(m.nk, oracle.nk) < 1e-2);
    CHECK(rel(m.nq, oracle.nq) < 1e-2);
    CHECK(rel(m.qk, oracle.qk) < 1e-2);
    double dag_err = 0.0;
    double nk_scale = 0.0;
    for (std::size_t i = 0; i < oracle.nk.size(); ++i) {
        dag_err = std::max(dag_err, std::abs(m.qk_dag.total(i) - oracle.qk_dag[i]));
        nk_scale = std::max(nk_scale, std::abs(oracle.nk[i]));
    }
    CHECK(dag_err < 1e-2 * nk_scale);
}
