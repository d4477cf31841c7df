#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace pairsim {

using Complex = std::complex<double>;
inline constexpr Complex kI{0.0, 1.0};

// The 16 atomic transition operators sigma_xy, x,y in {a,b,c,d}.
inline constexpr int kNumOps = 16;
inline constexpr int kNumLevels = 4;

using Vec16 = Eigen::Matrix<Complex, kNumOps, 1>;
using Mat16 = Eigen::Matrix<Complex, kNumOps, kNumOps, Eigen::RowMajor>;
using Mat4 = Eigen::Matrix<Complex, kNumLevels, kNumLevels, Eigen::RowMajor>;

/// Rejected user input (configuration, out-of-range arguments).
class InputError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure of an integrator, carrying the time where it happened.
class IntegrationError : public std::runtime_error {
  public:
    IntegrationError(const std::string& what, double time)
      : std::runtime_error(what + " (t = " + std::to_string(time) + ")"), time_(time)
    {
    }
    double time() const noexcept { return time_; }

  private:
    double time_;
};

} // namespace pairsim
