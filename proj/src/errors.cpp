#include "aoi/errors.hpp"

#include <sstream>
#include <utility>

namespace aoi {

namespace {

std::string join_violations(const std::vector<std::string>& v) {
  std::ostringstream os;
  os << "invalid model";
  for (const auto& s : v) os << "; " << s;
  return os.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

SingularMatrixError::SingularMatrixError(std::size_t pivot, double magnitude)
    : Error("matrix singular to working precision at pivot " + std::to_string(pivot) +
            " (|pivot| = " + std::to_string(magnitude) + ")"),
      pivot_(pivot) {}

NonErgodicError::NonErgodicError(std::size_t state, const std::string& detail)
    : Error("chain is not ergodic at state " + std::to_string(state) + ": " + detail),
      state_(state) {}

ConvergenceError::ConvergenceError(const std::string& what, std::vector<double> last_iterate)
    : Error(what), last_(std::move(last_iterate)) {}

UnstableError::UnstableError(const std::string& detail)
    : Error("no non-negative first moment: stability hypothesis fails (" + detail + ")") {}

namespace {

std::string region_message(double s, double radius) {
  std::ostringstream os;
  os.precision(17);
  os << "MGF argument s = " << s << " is outside the region of convergence s < s0 = " << radius;
  return os.str();
}

std::string truncation_message(double extent, double suggested) {
  std::ostringstream os;
  os.precision(17);
  os << "density grid extent " << extent << " truncates more than 1e-6 of the mass; use extent >= "
     << suggested;
  return os.str();
}

}  // namespace

OutOfRegionError::OutOfRegionError(double s, double radius)
    : Error(region_message(s, radius)), s_(s), radius_(radius) {}

TruncationError::TruncationError(double extent, double suggested)
    : Error(truncation_message(extent, suggested)), suggested_(suggested) {}

}  // namespace aoi
