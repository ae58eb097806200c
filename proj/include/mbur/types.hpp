#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mbur {

// Values this close to the interval ends are rejected rather than clamped.
inline constexpr double kUnitLow = 1e-300;
inline constexpr double kUnitHigh = 1.0 - 1e-16;

/// Shape parameter of the MBUR distribution (alpha > 0).
class Alpha {
 public:
  explicit Alpha(double value) : value_(value) {
    if (!std::isfinite(value) || value <= 0.0) {
      throw std::invalid_argument("Alpha: shape parameter must be finite and > 0, got " +
                                  std::to_string(value));
    }
  }
  double value() const { return value_; }
  double sq() const { return value_ * value_; }

 private:
  double value_;
};

/// A point strictly inside the unit interval.
class UnitValue {
 public:
  explicit UnitValue(double value) : value_(value) {
    if (!std::isfinite(value) || value < kUnitLow || value > kUnitHigh) {
      throw std::invalid_argument("UnitValue: expected value strictly inside (0,1), got " +
                                  std::to_string(value));
    }
  }
  double value() const { return value_; }

 private:
  double value_;
};

/// A probability in the closed interval [0,1].
class Probability {
 public:
  explicit Probability(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
      throw std::invalid_argument("Probability: expected value in [0,1], got " +
                                  std::to_string(value));
    }
  }
  double value() const { return value_; }

 private:
  double value_;
};

struct MomentSummary {
  double mean = 0.0;
  double variance = 0.0;
  double skewness = 0.0;
  double kurtosis = 0.0;  // Pearson kurtosis, not excess
  double cv = 0.0;
};

struct OrderStatSpec {
  int n = 1;
  int j = 1;
  OrderStatSpec(int n_, int j_) : n(n_), j(j_) {
    if (n < 1 || j < 1 || j > n) {
      throw std::invalid_argument("OrderStatSpec: need 1 <= j <= n");
    }
  }
};

/// Sorted sample of observations strictly inside (0,1). Duplicates are
/// permitted but flagged so the MPS tie handling can engage.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) throw std::invalid_argument("Sample: need at least one observation");
    for (double v : values_) {
      if (!std::isfinite(v) || v < kUnitLow || v > kUnitHigh) {
        throw std::invalid_argument("Sample: observation outside (0,1): " + std::to_string(v));
      }
    }
    std::sort(values_.begin(), values_.end());
    has_ties_ = std::adjacent_find(values_.begin(), values_.end()) != values_.end();
  }

  const std::vector<double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool has_ties() const { return has_ties_; }
  double mean() const {
    double s = 0.0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
  }

 private:
  std::vector<double> values_;
  bool has_ties_ = false;
};

}  // namespace mbur
