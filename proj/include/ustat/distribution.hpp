#pragma once

#include <Eigen/Core>

namespace ustat {

// Probability mass function on a small finite alphabet of real points.
// The alphabet is what kernels index into; values carry the actual sample
// magnitudes. Distinctness of values is part of the contract so that a
// sample's count vector identifies it up to reordering.
class FiniteDistribution {
 public:
  FiniteDistribution(Eigen::VectorXd values, Eigen::VectorXd probs);

  int size() const { return static_cast<int>(values_.size()); }
  const Eigen::VectorXd& values() const { return values_; }
  const Eigen::VectorXd& probs() const { return probs_; }
  double value(int i) const { return values_(i); }
  double prob(int i) const { return probs_(i); }

  // E X^r. Non-integer exponents require a nonnegative alphabet.
  double moment(double r) const;

  bool nonnegative_values() const { return values_.minCoeff() >= 0.0; }

 private:
  Eigen::VectorXd values_;
  Eigen::VectorXd probs_;
};

}  // namespace ustat
