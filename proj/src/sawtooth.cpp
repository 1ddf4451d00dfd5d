#include "aoi/sawtooth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aoi {

double power_integral(double a, double tau, int m) {
  if (m == 0) return tau;
  const double k = m + 1;
  return (std::pow(a + tau, k) - std::pow(a, k)) / k;
}

double exp_integral(double a, double tau, double s) {
  if (s == 0.0) return tau;
  // e^{sa} (e^{s tau} - 1) / s without cancellation for small s tau
  return std::exp(s * a) * std::expm1(s * tau) / s;
}

TimeHistogram::TimeHistogram(std::vector<double> edges) : edges_(std::move(edges)) {
  if (edges_.size() < 2) throw std::invalid_argument("histogram needs at least two edges");
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (!(edges_[i] > edges_[i - 1])) throw std::invalid_argument("histogram edges must be strictly increasing");
  }
  if (!std::isfinite(edges_.front())) throw std::invalid_argument("first histogram edge must be finite");
  time_.assign(edges_.size() - 1, 0.0);
}

void TimeHistogram::add_segment(double a, double tau) {
  if (tau <= 0.0) return;
  total_ += tau;
  const double b = a + tau;
  if (a < edges_.front()) under_ += std::min(b, edges_.front()) - a;
  if (b > edges_.back()) over_ += b - std::max(a, edges_.back());

  // first bin whose upper edge exceeds a
  auto it = std::upper_bound(edges_.begin(), edges_.end(), a);
  std::size_t k = it == edges_.begin() ? 0 : static_cast<std::size_t>(it - edges_.begin()) - 1;
  for (; k + 1 < edges_.size(); ++k) {
    const double lo = std::max(a, edges_[k]);
    const double hi = std::min(b, edges_[k + 1]);
    if (hi > lo) time_[k] += hi - lo;
    if (edges_[k + 1] >= b) break;
  }
}

void TimeHistogram::merge(const TimeHistogram& other) {
  if (other.edges_ != edges_) throw std::invalid_argument("histogram merge: edge mismatch");
  for (std::size_t k = 0; k < time_.size(); ++k) time_[k] += other.time_[k];
  under_ += other.under_;
  over_ += other.over_;
  total_ += other.total_;
}

std::vector<double> TimeHistogram::masses() const {
  std::vector<double> out(time_.size(), 0.0);
  if (total_ <= 0.0) return out;
  for (std::size_t k = 0; k < time_.size(); ++k) out[k] = time_[k] / total_;
  return out;
}

std::vector<double> TimeHistogram::densities() const {
  auto out = masses();
  for (std::size_t k = 0; k < out.size(); ++k) {
    const double w = edges_[k + 1] - edges_[k];
    out[k] = std::isfinite(w) ? out[k] / w : 0.0;
  }
  return out;
}

SawtoothAccumulator::SawtoothAccumulator(std::size_t components, std::vector<int> orders,
                                         std::vector<double> s_values)
    : components_(components),
      orders_(std::move(orders)),
      s_values_(std::move(s_values)),
      elapsed_(components, 0.0),
      moment_sum_(orders_.size() * components, 0.0),
      mgf_sum_(s_values_.size() * components, 0.0) {}

void SawtoothAccumulator::add(std::size_t j, double a, double tau) {
  if (tau <= 0.0) return;
  elapsed_[j] += tau;
  for (std::size_t k = 0; k < orders_.size(); ++k) moment_sum_[k * components_ + j] += power_integral(a, tau, orders_[k]);
  for (std::size_t k = 0; k < s_values_.size(); ++k) mgf_sum_[k * components_ + j] += exp_integral(a, tau, s_values_[k]);
}

void SawtoothAccumulator::add_all(std::span<const double> ages, double tau) {
  for (std::size_t j = 0; j < components_; ++j) add(j, ages[j], tau);
}

double SawtoothAccumulator::moment_average(std::size_t k, std::size_t j) const {
  return moment_sum_[k * components_ + j] / elapsed_[j];
}

double SawtoothAccumulator::mgf_average(std::size_t k, std::size_t j) const {
  return mgf_sum_[k * components_ + j] / elapsed_[j];
}

MeanStderr mean_and_stderr(std::span<const double> values) {
  MeanStderr out;
  const auto r = values.size();
  if (r == 0) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(r);
  if (r < 2) return out;
  double ss = 0.0;
  for (double v : values) ss += (v - out.mean) * (v - out.mean);
  out.stderr_ = std::sqrt(ss / static_cast<double>(r - 1) / static_cast<double>(r));
  return out;
}

}  // namespace aoi
