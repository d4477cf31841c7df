#pragma once

// Adaptive Dormand-Prince 5(4) integrator for complex linear-algebra states,
// with the 4th-order continuous extension used to sample a fixed output grid.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>

#include <Eigen/Dense>

#include "pairsim/types.hpp"

namespace pairsim {

struct OdeOptions {
    double rtol = 1e-9;
    double atol = 1e-12;
    double initial_step = 0.0; ///< 0 selects a step automatically
    double max_step = 0.0;     ///< 0 means unbounded
    std::size_t max_steps = 50'000'000;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t evaluations = 0;
};

template <class Rhs>
class DormandPrince {
  public:
    using State = Eigen::VectorXcd;

    DormandPrince(Rhs rhs, OdeOptions options)
      : rhs_(std::move(rhs)), opt_(options)
    {
    }

    const OdeStats& stats() const noexcept { return stats_; }

    /// Advances y from t0 to t1, reporting the state at every entry of
    /// `outputs` (ascending, inside [t0, t1]) through observer(k, t, y).
    template <class Observer>
    void integrate(double t0, State& y, double t1, std::span<const double> outputs, Observer&& observer)
    {
        const Eigen::Index n = y.size();
        k1_.resize(n);
        k2_.resize(n);
        k3_.resize(n);
        k4_.resize(n);
        k5_.resize(n);
        k6_.resize(n);
        k7_.resize(n);
        ynew_.resize(n);
        ytmp_.resize(n);
        err_.resize(n);

        std::size_t next_out = 0;
        while (next_out < outputs.size() && outputs[next_out] <= t0) {
            observer(next_out, outputs[next_out], y);
            ++next_out;
        }
        if (t1 <= t0) {
            return;
        }

        double t = t0;
        eval(t, y, k1_);
        double h = opt_.initial_step > 0.0 ? opt_.initial_step : initial_step(t, y, t1 - t0);
        double err_prev = 1e-4;
        std::size_t steps = 0;

        while (t < t1) {
            if (++steps > opt_.max_steps) {
                throw IntegrationError("ODE integrator: step budget exhausted", t);
            }
            if (opt_.max_step > 0.0) {
                h = std::min(h, opt_.max_step);
            }
            bool last = false;
            if (t + h >= t1 || t + 1.01 * h >= t1) {
                h = t1 - t;
                last = true;
            }
            const double h_floor = 1e-13 * std::max(1.0, std::abs(t));
            if (h < h_floor) {
                throw IntegrationError("ODE integrator: step size underflow", t);
            }

            stage(t, y, h);
            const double err = error_norm(y);
            if (!std::isfinite(err)) {
                if (h <= h_floor * 2) {
                    throw IntegrationError("ODE integrator: non-finite state", t);
                }
                h *= 0.1;
                ++stats_.rejected;
                continue;
            }
            if (err <= 1.0) {
                ++stats_.accepted;
                const double t_new = last ? t1 : t + h;
                // Dense output over (t, t_new].
                if (next_out < outputs.size() && outputs[next_out] <= t_new) {
                    prepare_dense(y, h);
                    while (next_out < outputs.size() && outputs[next_out] <= t_new) {
                        const double theta = (outputs[next_out] - t) / h;
                        dense(theta, ytmp_);
                        observer(next_out, outputs[next_out], ytmp_);
                        ++next_out;
                    }
                }
                y.swap(ynew_);
                k1_.swap(k7_); // FSAL
                t = t_new;
                // PI controller (Hairer's dopri5 constants).
                const double beta = 0.04;
                double fac = std::pow(err, 0.2 - 0.75 * beta) / std::pow(err_prev, beta) / 0.9;
                fac = std::clamp(fac, 0.1, 5.0);
                h /= fac;
                err_prev = std::max(err, 1e-4);
            }
            else {
                ++stats_.rejected;
                const double fac = std::clamp(std::pow(err, 0.2) / 0.9, 1.0, 5.0);
                h /= fac;
            }
        }
        while (next_out < outputs.size() && outputs[next_out] <= t1 + 1e-12 * std::max(1.0, std::abs(t1))) {
            observer(next_out, outputs[next_out], y);
            ++next_out;
        }
    }

    /// Advances y from t0 to t1 without intermediate output.
    void integrate(double t0, State& y, double t1)
    {
        integrate(t0, y, t1, std::span<const double>{}, [](std::size_t, double, const State&) {});
    }

  private:
    void eval(double t, const State& y, State& dy)
    {
        ++stats_.evaluations;
        rhs_(t, y, dy);
    }

    double initial_step(double t, const State& y, double span)
    {
        const double d0 = scaled_norm(y, y);
        const double d1 = scaled_norm(k1_, y);
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        ytmp_ = y + h0 * k1_;
        eval(t + h0, ytmp_, k2_);
        k2_ -= k1_;
        const double d2 = scaled_norm(k2_, y) / h0;
        const double dmax = std::max(d1, d2);
        const double h1 = dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
        return std::min({100.0 * h0, h1, span});
    }

    double scaled_norm(const State& v, const State& ref) const
    {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            const double sc = opt_.atol + opt_.rtol * std::abs(ref[i]);
            acc += std::norm(v[i]) / (sc * sc);
        }
        return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(1, v.size())));
    }

    void stage(double t, const State& y, double h)
    {
        constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        constexpr double a21 = 1.0 / 5;
        constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                         a54 = -212.0 / 729;
        constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                         a64 = 49.0 / 176, a65 = -5103.0 / 18656;
        constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                         a75 = -2187.0 / 6784, a76 = 11.0 / 84;
        constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                         e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        ytmp_ = y + h * a21 * k1_;
        eval(t + c2 * h, ytmp_, k2_);
        ytmp_ = y + h * (a31 * k1_ + a32 * k2_);
        eval(t + c3 * h, ytmp_, k3_);
        ytmp_ = y + h * (a41 * k1_ + a42 * k2_ + a43 * k3_);
        eval(t + c4 * h, ytmp_, k4_);
        ytmp_ = y + h * (a51 * k1_ + a52 * k2_ + a53 * k3_ + a54 * k4_);
        eval(t + c5 * h, ytmp_, k5_);
        ytmp_ = y + h * (a61 * k1_ + a62 * k2_ + a63 * k3_ + a64 * k4_ + a65 * k5_);
        eval(t + h, ytmp_, k6_);
        ynew_ = y + h * (a71 * k1_ + a73 * k3_ + a74 * k4_ + a75 * k5_ + a76 * k6_);
        eval(t + h, ynew_, k7_);
        err_ = h * (e1 * k1_ + e3 * k3_ + e4 * k4_ + e5 * k5_ + e6 * k6_ + e7 * k7_);
    }

    double error_norm(const State& y) const
    {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc = opt_.atol + opt_.rtol * std::max(std::abs(y[i]), std::abs(ynew_[i]));
            acc += std::norm(err_[i]) / (sc * sc);
        }
        return std::sqrt(acc / static_cast<double>(std::max<Eigen::Index>(1, y.size())));
    }

    void prepare_dense(const State& y, double h)
    {
        constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                         d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                         d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
        r1_ = y;
        r2_ = ynew_ - y;
        r3_ = h * k1_ - r2_;
        r4_ = r2_ - h * k7_ - r3_;
        r5_ = h * (d1 * k1_ + d3 * k3_ + d4 * k4_ + d5 * k5_ + d6 * k6_ + d7 * k7_);
    }

    void dense(double theta, State& out) const
    {
        const double omt = 1.0 - theta;
        out = r1_ + theta * (r2_ + omt * (r3_ + theta * (r4_ + omt * r5_)));
    }

    Rhs rhs_;
    OdeOptions opt_;
    OdeStats stats_;
    State k1_, k2_, k3_, k4_, k5_, k6_, k7_, ynew_, ytmp_, err_;
    State r1_, r2_, r3_, r4_, r5_;
};

template <class Rhs>
DormandPrince<Rhs> make_integrator(Rhs rhs, OdeOptions options)
{
    return DormandPrince<Rhs>(std::move(rhs), options);
}

} // namespace pairsim
