#include "ustat/distribution.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

#include "ustat/tolerances.hpp"

namespace ustat {

FiniteDistribution::FiniteDistribution(Eigen::VectorXd values, Eigen::VectorXd probs)
    : values_(std::move(values)), probs_(std::move(probs)) {
  if (values_.size() < 1) throw std::invalid_argument("distribution: empty alphabet");
  if (values_.size() != probs_.size())
    throw std::invalid_argument("distribution: values/probs length mismatch");
  if (probs_.minCoeff() < 0.0) throw std::invalid_argument("distribution: negative probability");
  if (std::abs(probs_.sum() - 1.0) > tol::equality)
    throw std::invalid_argument("distribution: probabilities do not sum to 1");
  std::set<double> distinct(values_.begin(), values_.end());
  if (static_cast<int>(distinct.size()) != values_.size())
    throw std::invalid_argument("distribution: alphabet values must be distinct");
}

double FiniteDistribution::moment(double r) const {
  const bool integer_r = (r == std::floor(r));
  if (!integer_r && values_.minCoeff() < 0.0)
    throw std::domain_error("distribution: non-integer moment of a signed alphabet");
  double s = 0.0;
  for (int i = 0; i < size(); ++i) s += probs_(i) * std::pow(values_(i), r);
  return s;
}

}  // namespace ustat
