#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aoi {

/// Base of every failure raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A model or network broke one of its structural invariants.
class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations);
  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  std::vector<std::string> violations_;
};

/// LU elimination met a pivot below the singularity threshold.
class SingularMatrixError : public Error {
 public:
  SingularMatrixError(std::size_t pivot, double magnitude);
  std::size_t pivot() const noexcept { return pivot_; }

 private:
  std::size_t pivot_;
};

/// The discrete-state chain has no strictly positive stationary law.
class NonErgodicError : public Error {
 public:
  NonErgodicError(std::size_t state, const std::string& detail);
  std::size_t state() const noexcept { return state_; }

 private:
  std::size_t state_;
};

/// Power iteration or refinement did not reach the residual target.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, std::vector<double> last_iterate);
  const std::vector<double>& last_iterate() const noexcept { return last_; }

 private:
  std::vector<double> last_;
};

/// No non-negative stationary first moment exists, so the age moments diverge.
class UnstableError : public Error {
 public:
  explicit UnstableError(const std::string& detail);
};

/// MGF argument outside the region of convergence.
class OutOfRegionError : public Error {
 public:
  OutOfRegionError(double s, double radius);
  double radius() const noexcept { return radius_; }
  double s() const noexcept { return s_; }

 private:
  double s_;
  double radius_;
};

/// Inconsistent run parameters (durations, steps, grids).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Density grid too short to hold the requested probability mass.
class TruncationError : public Error {
 public:
  TruncationError(double extent, double suggested);
  double suggested_extent() const noexcept { return suggested_; }

 private:
  double suggested_;
};

/// Malformed input document or unreadable file.
class InputError : public Error {
 public:
  using Error::Error;
};

}  // namespace aoi
