#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace revsim {

// Append-only log of (buyer type, ex-post value) reviews, with O(1) per-type
// count and running sum so confidence bounds cost O(1) per lookup.
class ReviewLog {
 public:
  explicit ReviewLog(int num_types)
      : per_type_values_(static_cast<std::size_t>(num_types)),
        per_type_sum_(static_cast<std::size_t>(num_types), 0.0) {}

  void append(int type, double value) {
    check_type(type);
    entries_.emplace_back(type, value);
    per_type_values_[static_cast<std::size_t>(type)].push_back(value);
    per_type_sum_[static_cast<std::size_t>(type)] += value;
  }

  int num_types() const { return static_cast<int>(per_type_values_.size()); }
  std::size_t size() const { return entries_.size(); }

  std::size_t count(int type) const {
    check_type(type);
    return per_type_values_[static_cast<std::size_t>(type)].size();
  }

  double sum(int type) const {
    check_type(type);
    return per_type_sum_[static_cast<std::size_t>(type)];
  }

  const std::vector<double>& values_of(int type) const {
    check_type(type);
    return per_type_values_[static_cast<std::size_t>(type)];
  }

  const std::vector<std::pair<int, double>>& entries() const { return entries_; }

 private:
  void check_type(int type) const {
    if (type < 0 || type >= num_types())
      throw std::out_of_range("review type index out of range");
  }

  std::vector<std::pair<int, double>> entries_;
  std::vector<std::vector<double>> per_type_values_;
  std::vector<double> per_type_sum_;
};

}  // namespace revsim
