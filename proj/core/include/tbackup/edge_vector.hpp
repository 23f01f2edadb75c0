#pragma once

#include <vector>

#include "tbackup/rational.hpp"

namespace tbackup {

/// Exact values indexed by edge id.
class EdgeVector {
 public:
  EdgeVector() = default;
  explicit EdgeVector(int num_edges, const Rational& fill = 0)
      : values_(static_cast<size_t>(num_edges), fill) {}
  explicit EdgeVector(std::vector<Rational> values) : values_(std::move(values)) {}

  int size() const { return static_cast<int>(values_.size()); }
  Rational& operator[](int e) { return values_[static_cast<size_t>(e)]; }
  const Rational& operator[](int e) const { return values_[static_cast<size_t>(e)]; }
  const std::vector<Rational>& values() const { return values_; }

  bool is_half_integral() const {
    for (const auto& v : values_) {
      if (!tbackup::is_half_integral(v)) return false;
    }
    return true;
  }
  bool is_integral() const {
    for (const auto& v : values_) {
      if (!tbackup::is_integer(v)) return false;
    }
    return true;
  }
  bool non_negative() const {
    for (const auto& v : values_) {
      if (v < 0) return false;
    }
    return true;
  }

  Rational dot(const std::vector<Rational>& c) const {
    Rational s = 0;
    for (size_t i = 0; i < values_.size(); ++i) s += values_[i] * c[i];
    return s;
  }

  friend EdgeVector operator+(const EdgeVector& a, const EdgeVector& b) {
    EdgeVector out = a;
    for (size_t i = 0; i < out.values_.size(); ++i) out.values_[i] += b.values_[i];
    return out;
  }

  friend bool operator==(const EdgeVector&, const EdgeVector&) = default;

 private:
  std::vector<Rational> values_;
};

}  // namespace tbackup
