#pragma once

#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Core>

#include "ustat/combinatorics.hpp"
#include "ustat/distribution.hpp"

namespace ustat {

// What gets averaged inside a conditional expectation: the kernel itself or
// its square. The squared variant feeds the degenerate-kernel bound and the
// sum-of-squares comparison.
enum class Inner { identity, square };

// Symmetric kernel of order m on a finite alphabet, stored once per sorted
// index multiset. Symmetry holds by construction: evaluation at any ordered
// tuple routes through the sorted representative.
class KernelTable {
 public:
  using OrderedFn = std::function<double(const std::vector<int>&)>;

  KernelTable(int order, std::shared_ptr<const MultisetIndexer> index, Eigen::VectorXd entries);

  // Evaluates f at the sorted representative of each multiset. f sees sorted
  // tuples only, so an asymmetric f is silently symmetrized; use
  // check_symmetry first when f's symmetry is in question.
  static KernelTable from_function(int order, int alphabet, const OrderedFn& f);

  int order() const { return order_; }
  int alphabet() const { return index_->alphabet(); }
  const MultisetIndexer& index() const { return *index_; }
  std::shared_ptr<const MultisetIndexer> index_ptr() const { return index_; }
  const Eigen::VectorXd& entries() const { return entries_; }

  double value_at(std::int64_t rank) const { return entries_(rank); }
  double value_by_counts(const std::vector<int>& counts) const;
  double eval_sorted(const std::vector<int>& sorted_tuple) const;
  double eval_ordered(std::vector<int> tuple) const;  // sorts a copy

  KernelTable squared() const;
  KernelTable scaled(double c) const;

  double min_entry() const { return entries_.minCoeff(); }
  double max_abs_entry() const { return entries_.cwiseAbs().maxCoeff(); }
  bool is_zero() const { return max_abs_entry() == 0.0; }
  bool is_nonnegative() const { return min_entry() >= 0.0; }
  bool is_constant() const;

 private:
  int order_;
  std::shared_ptr<const MultisetIndexer> index_;
  Eigen::VectorXd entries_;
};

// Max over ordered tuples and permutations of |f(x) - f(pi x)| for a raw
// function on ordered tuples; 0 certifies symmetry. Tables need no check.
double check_symmetry(const std::function<double(const std::vector<int>&)>& f, int m, int s);

// E Y(X_1..X_m): multiset entries weighted by multiplicity * prob products.
double kernel_mean(const KernelTable& kernel, const FiniteDistribution& dist);

// E |Y(X_1..X_m)|^p, p >= 1.
double kernel_abs_moment(const KernelTable& kernel, const FiniteDistribution& dist, double p);

// Conditional mean over the last argument: an order m-1 table with entries
// h(y_1..y_{m-1}) = sum_j probs[j] * Y(y, v_j). For m = 1 the result is the
// plain mean, returned through the scalar overload below.
KernelTable conditional_mean_table(const KernelTable& kernel, const FiniteDistribution& dist);

// Max over ordered (m-1)-tuples of |E(Y | first m-1 args fixed)|. A value
// within tolerance certifies the kernel as degenerate under this law.
double check_degeneracy(const KernelTable& kernel, const FiniteDistribution& dist);

// Probability of drawing a given multiset of alphabet indices in one i.i.d.
// sample of its size: multiplicity * prod probs^counts.
double multiset_weight(const MultisetIndexer& index, std::int64_t rank,
                       const FiniteDistribution& dist);

}  // namespace ustat
