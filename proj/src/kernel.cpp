#include "ustat/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace ustat {

KernelTable::KernelTable(int order, std::shared_ptr<const MultisetIndexer> index,
                         Eigen::VectorXd entries)
    : order_(order), index_(std::move(index)), entries_(std::move(entries)) {
  if (order_ < 1) throw std::invalid_argument("kernel: order must be >= 1");
  if (index_->size() != order_) throw std::invalid_argument("kernel: indexer size mismatch");
  if (entries_.size() != index_->count())
    throw std::invalid_argument("kernel: entry count does not cover all multisets");
}

KernelTable KernelTable::from_function(int order, int alphabet, const OrderedFn& f) {
  auto index = std::make_shared<const MultisetIndexer>(order, alphabet);
  Eigen::VectorXd entries(index->count());
  for (std::int64_t r = 0; r < index->count(); ++r) entries(r) = f(index->sorted_tuple_at(r));
  return KernelTable(order, std::move(index), std::move(entries));
}

double KernelTable::value_by_counts(const std::vector<int>& counts) const {
  return entries_(index_->rank_of_counts(counts));
}

double KernelTable::eval_sorted(const std::vector<int>& sorted_tuple) const {
  return entries_(index_->rank_of_sorted(sorted_tuple));
}

double KernelTable::eval_ordered(std::vector<int> tuple) const {
  std::sort(tuple.begin(), tuple.end());
  return eval_sorted(tuple);
}

KernelTable KernelTable::squared() const {
  return KernelTable(order_, index_, entries_.cwiseProduct(entries_));
}

KernelTable KernelTable::scaled(double c) const { return KernelTable(order_, index_, c * entries_); }

bool KernelTable::is_constant() const {
  return entries_.maxCoeff() == entries_.minCoeff();
}

double check_symmetry(const std::function<double(const std::vector<int>&)>& f, int m, int s) {
  // Group ordered tuples by sorted representative; the residual per group is
  // the spread of f over the orbit, and the overall residual is the max.
  std::map<std::vector<int>, std::pair<double, double>> spread;  // multiset -> (min, max)
  for_each_ordered_tuple(s, m, [&](const std::vector<int>& t) {
    std::vector<int> key = t;
    std::sort(key.begin(), key.end());
    const double v = f(t);
    auto it = spread.find(key);
    if (it == spread.end()) {
      spread.emplace(std::move(key), std::make_pair(v, v));
    } else {
      it->second.first = std::min(it->second.first, v);
      it->second.second = std::max(it->second.second, v);
    }
  });
  double residual = 0.0;
  for (const auto& [key, mm] : spread) residual = std::max(residual, mm.second - mm.first);
  return residual;
}

double multiset_weight(const MultisetIndexer& index, std::int64_t rank,
                       const FiniteDistribution& dist) {
  const std::vector<int>& counts = index.counts_at(rank);
  double w = index.multiplicity(rank);
  for (int j = 0; j < static_cast<int>(counts.size()); ++j)
    for (int r = 0; r < counts[j]; ++r) w *= dist.prob(j);
  return w;
}

double kernel_mean(const KernelTable& kernel, const FiniteDistribution& dist) {
  const MultisetIndexer& index = kernel.index();
  if (index.alphabet() != dist.size())
    throw std::invalid_argument("kernel_mean: alphabet size mismatch");
  double s = 0.0;
  for (std::int64_t r = 0; r < index.count(); ++r)
    s += multiset_weight(index, r, dist) * kernel.value_at(r);
  return s;
}

double kernel_abs_moment(const KernelTable& kernel, const FiniteDistribution& dist, double p) {
  if (p < 1.0) throw std::invalid_argument("kernel_abs_moment: p must be >= 1");
  const MultisetIndexer& index = kernel.index();
  if (index.alphabet() != dist.size())
    throw std::invalid_argument("kernel_abs_moment: alphabet size mismatch");
  double s = 0.0;
  for (std::int64_t r = 0; r < index.count(); ++r)
    s += multiset_weight(index, r, dist) * std::pow(std::abs(kernel.value_at(r)), p);
  return s;
}

KernelTable conditional_mean_table(const KernelTable& kernel, const FiniteDistribution& dist) {
  const int m = kernel.order();
  if (m < 2)
    throw std::invalid_argument("conditional_mean_table: order 1 conditions on nothing");
  if (kernel.alphabet() != dist.size())
    throw std::invalid_argument("conditional_mean_table: alphabet size mismatch");
  const int s = dist.size();
  return KernelTable::from_function(m - 1, s, [&](const std::vector<int>& prefix) {
    std::vector<int> counts(s, 0);
    for (int v : prefix) ++counts[v];
    double acc = 0.0;
    for (int j = 0; j < s; ++j) {
      ++counts[j];
      acc += dist.prob(j) * kernel.value_by_counts(counts);
      --counts[j];
    }
    return acc;
  });
}

double check_degeneracy(const KernelTable& kernel, const FiniteDistribution& dist) {
  if (kernel.order() == 1) return std::abs(kernel_mean(kernel, dist));
  return conditional_mean_table(kernel, dist).max_abs_entry();
}

}  // namespace ustat
