#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace condtrack {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

/// Base class for all structured errors thrown by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Mismatched dimensions, degrees, or otherwise invalid arguments.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(what) {}
};

/// A restricted Jacobian was numerically rank deficient. Carries the
/// singular-value ratio sigma_min/sigma_max that failed the rank test.
class RankDeficientError : public Error {
 public:
  RankDeficientError(const std::string& what, double sigma_ratio)
      : Error(what), sigma_ratio(sigma_ratio) {}
  double sigma_ratio;
};

/// The comparison gauges u, v fall outside the admissible range of the
/// inequality being checked.
class GaugeOutOfRangeError : public Error {
 public:
  GaugeOutOfRangeError(const std::string& what, double u, double v)
      : Error(what), u(u), v(v) {}
  double u;
  double v;
};

/// The interpolated system vanished somewhere along a homotopy path.
class ZeroSystemError : public Error {
 public:
  explicit ZeroSystemError(const std::string& what) : Error(what) {}
};

/// Newton refinement failed to reach the requested residual. This signals a
/// broken test oracle or a genuinely singular target, not a property
/// violation.
class RefinementError : public Error {
 public:
  explicit RefinementError(const std::string& what) : Error(what) {}
};

}  // namespace condtrack
