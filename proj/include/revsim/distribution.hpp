#pragma once

#include <random>
#include <stdexcept>
#include <string>

#include "revsim/rng.hpp"

namespace revsim {

// Ex-post value distribution with support inside [0,1] and an exact analytic
// mean. Restricted to three closed-form kinds so the mean-matches-theta
// instance invariant can be checked exactly.
class ExPostDistribution {
 public:
  enum class Kind { kBernoulli, kUniform, kPoint };

  static ExPostDistribution bernoulli(double mean) {
    if (mean < 0.0 || mean > 1.0)
      throw std::invalid_argument("bernoulli mean must lie in [0,1]");
    return ExPostDistribution(Kind::kBernoulli, mean, 0.0);
  }

  static ExPostDistribution uniform(double lo, double hi) {
    if (!(0.0 <= lo && lo <= hi && hi <= 1.0))
      throw std::invalid_argument("uniform bounds must satisfy 0 <= lo <= hi <= 1");
    return ExPostDistribution(Kind::kUniform, lo, hi);
  }

  static ExPostDistribution point(double mass) {
    if (mass < 0.0 || mass > 1.0)
      throw std::invalid_argument("point mass must lie in [0,1]");
    return ExPostDistribution(Kind::kPoint, mass, 0.0);
  }

  Kind kind() const { return kind_; }

  double mean() const {
    switch (kind_) {
      case Kind::kBernoulli: return a_;
      case Kind::kUniform: return (a_ + b_) / 2.0;
      case Kind::kPoint: return a_;
    }
    return 0.0;  // unreachable
  }

  double support_lo() const { return kind_ == Kind::kUniform ? a_ : (kind_ == Kind::kBernoulli ? 0.0 : a_); }
  double support_hi() const { return kind_ == Kind::kUniform ? b_ : (kind_ == Kind::kBernoulli ? 1.0 : a_); }

  // Every call consumes exactly one draw, so the value-stream position does
  // not depend on the mix of distribution kinds in an instance.
  double sample(std::mt19937_64& rng) const {
    const double u = uniform01(rng);
    switch (kind_) {
      case Kind::kBernoulli: return u < a_ ? 1.0 : 0.0;
      case Kind::kUniform: return a_ + u * (b_ - a_);
      case Kind::kPoint: return a_;
    }
    return 0.0;  // unreachable
  }

  // Raw parameters: bernoulli(mean) and point(mass) use param0 only;
  // uniform(lo,hi) uses both.
  double param0() const { return a_; }
  double param1() const { return b_; }

  std::string kind_name() const {
    switch (kind_) {
      case Kind::kBernoulli: return "bernoulli";
      case Kind::kUniform: return "uniform";
      case Kind::kPoint: return "point";
    }
    return "?";
  }

 private:
  ExPostDistribution(Kind kind, double a, double b) : kind_(kind), a_(a), b_(b) {}

  Kind kind_;
  double a_;
  double b_;
};

}  // namespace revsim
