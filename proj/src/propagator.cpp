#include "pairsim/propagator.hpp"

#include <string>

#include "pairsim/diffusion.hpp"
#include "pairsim/index_algebra.hpp"

namespace pairsim {

namespace {

using Eigen::Map;
using CMat16 = Eigen::Matrix<Complex, 16, 16>;
using CMat4x16 = Eigen::Matrix<Complex, 4, 16>;
using CMat16x4 = Eigen::Matrix<Complex, 16, 4>;
using CMat4 = Eigen::Matrix<Complex, 4, 4>;
using CMat16x8 = Eigen::Matrix<Complex, 16, 8>;
using CMat4x8 = Eigen::Matrix<Complex, 4, 8>;

// Layout of the augmented interval state.
constexpr Eigen::Index kOffX = 0;
constexpr Eigen::Index kOffP = kOffX + 16;
constexpr Eigen::Index kOffW = kOffP + 256;
constexpr Eigen::Index kOffG = kOffW + 64;
constexpr Eigen::Index kOffHB = kOffG + 256;
constexpr Eigen::Index kOffHF = kOffHB + 64;
constexpr Eigen::Index kOffL = kOffHF + 64;
constexpr Eigen::Index kOffV = kOffL + 16;
constexpr Eigen::Index kOffQ = kOffV + 128;
constexpr Eigen::Index kAugmentedSize = kOffQ + 32;

template <class Derived>
KernelRows select_rows(const Eigen::MatrixBase<Derived>& m)
{
    KernelRows out;
    for (int r = 0; r < 4; ++r) {
        out.row(r) = m.row(kSourceOps[r]);
    }
    return out;
}

template <class Derived>
ColBlock select_cols(const Eigen::MatrixBase<Derived>& m)
{
    ColBlock out;
    for (int r = 0; r < 4; ++r) {
        out.col(r) = m.col(kSourceOps[r]);
    }
    return out;
}

template <class Derived>
Eigen::Matrix<Complex, 4, Derived::ColsAtCompileTime> select_source_rows(const Eigen::MatrixBase<Derived>& m)
{
    Eigen::Matrix<Complex, 4, Derived::ColsAtCompileTime> out(4, m.cols());
    for (int r = 0; r < 4; ++r) {
        out.row(r) = m.row(kSourceOps[r]);
    }
    return out;
}

KernelRows selector()
{
    KernelRows e = KernelRows::Zero();
    for (int r = 0; r < 4; ++r) {
        e(r, kSourceOps[r]) = 1.0;
    }
    return e;
}

void apply_trapezoid(IntervalData& d, const DriftModel& model, double s0, double s1, const Vec16& x0,
                     const Vec16& x1)
{
    const double half = 0.5 * (s1 - s0);
    const Mat16 d0 = diffusion_matrix(model(s0), x0);
    const Mat16 d1 = diffusion_matrix(model(s1), x1);
    const SourceIntegrals y0 = source_terms(x0);
    const SourceIntegrals y1 = source_terms(x1);
    const KernelRows w = half * (selector() + select_rows(d.p));
    d.w = w;
    d.g = half * (d.p * d0 * d.p.transpose() + d1);
    d.hb = half * (d.p * d0 * w.transpose());
    d.hf = half * (w * d0 * d.p.transpose());
    d.l = half * (w * d0 * w.transpose());
    d.v = half * (d.p * y0 + y1);
    d.q = half * (w * y0);
}

} // namespace

SourceIntegrals source_terms(const Vec16& x)
{
    const Mat16 xp = pair_matrix(x);
    SourceIntegrals y;
    for (int r = 0; r < 4; ++r) {
        y.col(r) = xp.col(kSourceOps[r]);
        y.col(4 + r) = xp.row(kSourceOps[r]).transpose();
    }
    return y;
}

IntervalData integrate_interval(const DriftModel& model, double s0, double s1, const Vec16& x0, Vec16& x1,
                                const OdeOptions& options)
{
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(kAugmentedSize);
    y.segment<16>(kOffX) = x0;
    Map<CMat16>(y.data() + kOffP).setIdentity();

    auto rhs = [&model](double t, const Eigen::VectorXcd& s, Eigen::VectorXcd& ds) {
        const Mat16 m = model(t);
        const Map<const Eigen::Matrix<Complex, 16, 1>> x(s.data() + kOffX);
        const Map<const CMat16> p(s.data() + kOffP);
        const Map<const CMat16> g(s.data() + kOffG);
        const Map<const CMat16x4> hb(s.data() + kOffHB);
        const Map<const CMat4x16> hf(s.data() + kOffHF);
        const Map<const CMat16x8> v(s.data() + kOffV);

        const Vec16 xv = x;
        const Mat16 dif = diffusion_matrix(m, xv);

        Map<Eigen::Matrix<Complex, 16, 1>>(ds.data() + kOffX).noalias() = m * x;
        Map<CMat16>(ds.data() + kOffP).noalias() = m * p;
        Map<CMat4x16>(ds.data() + kOffW) = select_rows(p);
        Map<CMat16> dg(ds.data() + kOffG);
        dg = dif;
        dg.noalias() += m * g;
        dg.noalias() += g * m.transpose();
        Map<CMat16x4> dhb(ds.data() + kOffHB);
        dhb = select_cols(g);
        dhb.noalias() += m * hb;
        Map<CMat4x16> dhf(ds.data() + kOffHF);
        dhf = select_rows(g);
        dhf.noalias() += hf * m.transpose();
        Map<CMat4> dl(ds.data() + kOffL);
        dl = select_source_rows(hb);
        for (int r = 0; r < 4; ++r) {
            dl.col(r) += hf.col(kSourceOps[r]);
        }
        Map<CMat16x8> dv(ds.data() + kOffV);
        dv = source_terms(xv);
        dv.noalias() += m * v;
        Map<CMat4x8>(ds.data() + kOffQ) = select_source_rows(v);
    };

    auto ode = make_integrator(rhs, options);
    ode.integrate(s0, y, s1);

    IntervalData d;
    x1 = y.segment<16>(kOffX);
    d.p = Map<const CMat16>(y.data() + kOffP);
    d.w = Map<const CMat4x16>(y.data() + kOffW);
    d.g = Map<const CMat16>(y.data() + kOffG);
    d.hb = Map<const CMat16x4>(y.data() + kOffHB);
    d.hf = Map<const CMat4x16>(y.data() + kOffHF);
    d.l = Map<const CMat4>(y.data() + kOffL);
    d.v = Map<const CMat16x8>(y.data() + kOffV);
    d.q = Map<const CMat4x8>(y.data() + kOffQ);
    return d;
}

PropagatorGrid::PropagatorGrid(const DriftModel& model, const TimeGrid& grid, const PropagatorOptions& options)
  : grid_(grid), quadrature_(options.quadrature)
{
    const int n = grid.size();
    states_.resize(static_cast<std::size_t>(n));
    intervals_.resize(static_cast<std::size_t>(n - 1));
    states_[0] = state_vector(model.atom().rho0);
    for (int j = 0; j + 1 < n; ++j) {
        const auto ju = static_cast<std::size_t>(j);
        Vec16 next;
        intervals_[ju] = integrate_interval(model, grid[j], grid[j + 1], states_[ju], next, options.ode);
        states_[ju + 1] = next;
        if (quadrature_ == Quadrature::trapezoid) {
            apply_trapezoid(intervals_[ju], model, grid[j], grid[j + 1], states_[ju], next);
        }
    }
}

std::vector<KernelRows> PropagatorGrid::kernel_column(int i) const
{
    if (i < 0 || i >= grid_.size()) {
        throw InputError("kernel_column: grid index out of range");
    }
    std::vector<KernelRows> out(static_cast<std::size_t>(i + 1));
    out[static_cast<std::size_t>(i)].setZero();
    for (int j = i - 1; j >= 0; --j) {
        const auto& iv = intervals_[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(j)].noalias() = out[static_cast<std::size_t>(j + 1)] * iv.p;
        out[static_cast<std::size_t>(j)] += iv.w;
    }
    return out;
}

KernelStore::KernelStore(const PropagatorGrid& grid) : points_(grid.grid().size())
{
    if (points_ > kMaxPoints) {
        throw InputError("KernelStore: grid too large for a materialized store (" + std::to_string(points_) +
                         " > " + std::to_string(kMaxPoints) + " points)");
    }
    data_.reserve(static_cast<std::size_t>(points_) * static_cast<std::size_t>(points_ + 1) / 2);
    for (int i = 0; i < points_; ++i) {
        auto col = grid.kernel_column(i);
        for (auto& k : col) {
            data_.push_back(k);
        }
    }
}

const KernelRows& KernelStore::operator()(int i, int j) const
{
    if (i < 0 || i >= points_ || j < 0 || j > i) {
        throw InputError("KernelStore: index pair out of range");
    }
    const auto base = static_cast<std::size_t>(i) * static_cast<std::size_t>(i + 1) / 2;
    return data_[base + static_cast<std::size_t>(j)];
}

Complex KernelStore::kernel(SourceRow r, int m, int i, int j) const
{
    return (*this)(i, j)(static_cast<int>(r), m);
}

std::vector<Mat16> propagate_from(const DriftModel& model, const TimeGrid& grid, int s_index,
                                  const OdeOptions& options)
{
    const int n = grid.size();
    if (s_index < 0 || s_index >= n) {
        throw InputError("propagate_from: start index out of range");
    }
    std::vector<Mat16> out(static_cast<std::size_t>(n - s_index));
    std::vector<double> times;
    for (int i = s_index; i < n; ++i) {
        times.push_back(grid[i]);
    }
    Eigen::VectorXcd y(256);
    Map<CMat16>(y.data()).setIdentity();
    auto rhs = [&model](double t, const Eigen::VectorXcd& u, Eigen::VectorXcd& du) {
        Map<CMat16>(du.data()).noalias() = model(t) * Map<const CMat16>(u.data());
    };
    auto ode = make_integrator(rhs, options);
    ode.integrate(grid[s_index], y, grid.t_end(), times, [&out](std::size_t k, double, const Eigen::VectorXcd& u) {
        out[k] = Map<const CMat16>(u.data());
    });
    return out;
}

} // namespace pairsim
