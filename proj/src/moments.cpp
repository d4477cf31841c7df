#include "pairsim/moments.hpp"

#include "pairsim/diffusion.hpp"
#include "pairsim/parallel.hpp"

namespace pairsim {

SourceRow LadderSpec::row() const noexcept
{
    switch (which) {
    case Ladder::a_k: return SourceRow::bd;
    case Ladder::a_k_dag: return SourceRow::db;
    case Ladder::a_q: return SourceRow::ca;
    case Ladder::a_q_dag: return SourceRow::ac;
    }
    return SourceRow::ac;
}

LadderSpec ladder(Ladder which, const AtomConfig& atom)
{
    switch (which) {
    case Ladder::a_k: return {which, kI * atom.g_k, ops::bd};
    case Ladder::a_k_dag: return {which, -kI * atom.g_k, ops::db};
    case Ladder::a_q: return {which, kI * atom.g_q, ops::ca};
    case Ladder::a_q_dag: return {which, -kI * atom.g_q, ops::ac};
    }
    throw InputError("unknown ladder operator");
}

std::vector<RowMoments> row_moments(const PropagatorGrid& grid, int workers)
{
    const int n = grid.grid().size();
    const auto& iv = grid.intervals();
    const Mat16 x0pair = pair_matrix(grid.states().front());
    const Vec16 x0 = grid.states().front();
    std::vector<RowMoments> out(static_cast<std::size_t>(n));

    parallel_for(n, workers, [&](int i) {
        KernelRows k = KernelRows::Zero();
        Mat4 noise = Mat4::Zero();
        SourceRowIntegrals source = SourceRowIntegrals::Zero();
        Eigen::Matrix<Complex, 4, kNumOps, Eigen::RowMajor> kg;
        KernelRows next;
        for (int j = i - 1; j >= 0; --j) {
            const IntervalData& d = iv[static_cast<std::size_t>(j)];
            kg.noalias() = k * d.g;
            noise.noalias() += kg * k.transpose();
            noise.noalias() += k * d.hb;
            noise.noalias() += d.hf * k.transpose();
            noise += d.l;
            source.noalias() += k * d.v;
            source += d.q;
            next.noalias() = k * d.p;
            k = next + d.w;
        }
        RowMoments& r = out[static_cast<std::size_t>(i)];
        r.boundary.noalias() = k * x0pair * k.transpose();
        r.noise = noise;
        r.source = source;
        r.mean.noalias() = k * x0;
    });
    return out;
}

Complex initial_pair_expectation(OpIndex m, OpIndex n, const Mat4& rho0)
{
    const auto p = contract(m, n);
    if (!p) {
        return {};
    }
    const auto [x, y] = levels(*p);
    return rho0(static_cast<int>(y), static_cast<int>(x));
}

std::vector<Complex> PairSeries::totals() const
{
    std::vector<Complex> out(size());
    for (std::size_t i = 0; i < size(); ++i) {
        out[i] = total(i);
    }
    return out;
}

namespace {

Complex ordering_term(const LadderSpec& a, const LadderSpec& b, const SourceRowIntegrals& s)
{
    const int ra = static_cast<int>(a.row());
    const int rb = static_cast<int>(b.row());
    if (!a.creation() && !b.creation()) {
        return s(rb, ra) - s(rb, 4 + ra);
    }
    if (a.creation() && b.creation()) {
        return s(ra, 4 + rb) - s(ra, rb);
    }
    if (!a.creation() && b.creation()) {
        return s(rb, ra) + s(ra, 4 + rb) - s(ra, rb) - s(rb, 4 + ra);
    }
    return {};
}

double field_term(const LadderSpec& a, const LadderSpec& b, const AtomConfig& atom)
{
    if (a.stokes() != b.stokes() || a.creation() == b.creation()) {
        return 0.0;
    }
    const double n_th = a.stokes() ? atom.n_th_k : atom.n_th_q;
    return a.creation() ? n_th : n_th + 1.0;
}

} // namespace

PairSeries pair_moment(const LadderSpec& a, const LadderSpec& b, const std::vector<RowMoments>& rows,
                       const AtomConfig& atom, Ordering ordering)
{
    const Complex c = a.coupling * b.coupling;
    const int ra = static_cast<int>(a.row());
    const int rb = static_cast<int>(b.row());
    const double field = field_term(a, b, atom);
    PairSeries out;
    const std::size_t n = rows.size();
    out.boundary.resize(n);
    out.noise.resize(n);
    out.ordering.resize(n);
    out.field.assign(n, Complex{field, 0.0});
    for (std::size_t i = 0; i < n; ++i) {
        out.boundary[i] = c * rows[i].boundary(ra, rb);
        out.noise[i] = c * rows[i].noise(ra, rb);
        out.ordering[i] = ordering == Ordering::causal ? c * ordering_term(a, b, rows[i].source) : Complex{};
    }
    return out;
}

std::vector<Complex> regression_route(const LadderSpec& a, const LadderSpec& b, const std::vector<RowMoments>& rows)
{
    const Complex c = a.coupling * b.coupling;
    const int ra = static_cast<int>(a.row());
    const int rb = static_cast<int>(b.row());
    std::vector<Complex> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out[i] = c * (rows[i].source(ra, rb) + rows[i].source(rb, 4 + ra));
    }
    return out;
}

std::vector<Complex> single_moment(const LadderSpec& a, const std::vector<RowMoments>& rows)
{
    const int ra = static_cast<int>(a.row());
    std::vector<Complex> out(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out[i] = a.coupling * rows[i].mean(ra);
    }
    return out;
}

MomentSeries assemble_moments(const std::vector<double>& t, const std::vector<RowMoments>& rows,
                              const AtomConfig& atom, Ordering ordering)
{
    if (t.size() != rows.size()) {
        throw InputError("assemble_moments: grid and kernel tables differ in length");
    }
    const LadderSpec ak = ladder(Ladder::a_k, atom);
    const LadderSpec akd = ladder(Ladder::a_k_dag, atom);
    const LadderSpec aq = ladder(Ladder::a_q, atom);
    const LadderSpec aqd = ladder(Ladder::a_q_dag, atom);
    MomentSeries m;
    m.t = t;
    m.qk = pair_moment(aq, ak, rows, atom, ordering);
    m.qk_dag = pair_moment(aq, akd, rows, atom, ordering);
    m.nk = pair_moment(akd, ak, rows, atom, ordering);
    m.nq = pair_moment(aqd, aq, rows, atom, ordering);
    m.kk = pair_moment(ak, ak, rows, atom, ordering);
    m.qq = pair_moment(aq, aq, rows, atom, ordering);
    m.mean_k = single_moment(ak, rows);
    m.mean_q = single_moment(aq, rows);
    return m;
}

MomentSeries compute_moments(const PropagatorGrid& grid, const AtomConfig& atom, Ordering ordering, int workers)
{
    return assemble_moments(grid.grid().times(), row_moments(grid, workers), atom, ordering);
}

} // namespace pairsim
