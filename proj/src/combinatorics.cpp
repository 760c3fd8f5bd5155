#include "ustat/combinatorics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ustat {

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::int64_t i = 1; i <= k; ++i) {
    // r stays integer-valued at every step: it equals C(n - k + i, i).
    r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return r;
}

double log_factorial(std::int64_t n) {
  if (n < 0) throw std::invalid_argument("log_factorial: negative argument");
  return std::lgamma(static_cast<double>(n) + 1.0);
}

double multinomial(std::int64_t n, const std::vector<std::int64_t>& counts) {
  std::int64_t total = 0;
  double r = 1.0;
  for (std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("multinomial: negative count");
    total += c;
    r *= binomial(total, c);
  }
  if (total != n) throw std::invalid_argument("multinomial: counts do not sum to n");
  return r;
}

double log_multinomial(std::int64_t n, const std::vector<std::int64_t>& counts) {
  std::int64_t total = 0;
  double r = log_factorial(n);
  for (std::int64_t c : counts) {
    if (c < 0) throw std::invalid_argument("log_multinomial: negative count");
    total += c;
    r -= log_factorial(c);
  }
  if (total != n) throw std::invalid_argument("log_multinomial: counts do not sum to n");
  return r;
}

double pairwise_sum(const double* data, std::size_t size) {
  if (size == 0) return 0.0;
  if (size <= 8) {
    double s = data[0];
    for (std::size_t i = 1; i < size; ++i) s += data[i];
    return s;
  }
  const std::size_t half = size / 2;
  return pairwise_sum(data, half) + pairwise_sum(data + half, size - half);
}

double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

ChunkedAccumulator::ChunkedAccumulator(std::size_t chunk_size) : chunk_size_(chunk_size) {
  if (chunk_size_ == 0) throw std::invalid_argument("ChunkedAccumulator: chunk_size must be positive");
  tail_.reserve(chunk_size_);
}

void ChunkedAccumulator::push(double value) {
  tail_.push_back(value);
  ++count_;
  if (tail_.size() == chunk_size_) {
    partials_.push_back(pairwise_sum(tail_));
    tail_.clear();
  }
}

double ChunkedAccumulator::total() const {
  if (tail_.empty()) return pairwise_sum(partials_);
  std::vector<double> partials = partials_;
  partials.push_back(pairwise_sum(tail_));
  return pairwise_sum(partials);
}

double ChunkedAccumulator::reduce_chunks(const std::vector<double>& chunk_partials) {
  return pairwise_sum(chunk_partials);
}

namespace {

std::vector<int> counts_from_sorted(const std::vector<int>& sorted_tuple, int alphabet) {
  std::vector<int> counts(alphabet, 0);
  for (int v : sorted_tuple) {
    if (v < 0 || v >= alphabet) throw std::out_of_range("multiset value outside alphabet");
    ++counts[v];
  }
  return counts;
}

}  // namespace

MultisetIndexer::MultisetIndexer(int size, int alphabet) : size_(size), alphabet_(alphabet) {
  if (size < 0 || alphabet < 1) throw std::invalid_argument("MultisetIndexer: bad dimensions");
  // Enumerate nondecreasing tuples in lexicographic order with an odometer.
  std::vector<int> t(size, 0);
  while (true) {
    std::vector<int> counts = counts_from_sorted(t, alphabet);
    std::vector<std::int64_t> wide(counts.begin(), counts.end());
    multiplicities_.push_back(multinomial(size, wide));
    rank_by_counts_[counts] = static_cast<std::int64_t>(counts_.size());
    counts_.push_back(std::move(counts));
    if (size == 0) break;
    int i = size - 1;
    while (i >= 0 && t[i] == alphabet - 1) --i;
    if (i < 0) break;
    const int v = t[i] + 1;
    for (int j = i; j < size; ++j) t[j] = v;
  }
}

std::int64_t MultisetIndexer::rank_of_counts(const std::vector<int>& count_vec) const {
  auto it = rank_by_counts_.find(count_vec);
  if (it == rank_by_counts_.end()) throw std::out_of_range("MultisetIndexer: unknown multiset");
  return it->second;
}

std::int64_t MultisetIndexer::rank_of_sorted(const std::vector<int>& sorted_tuple) const {
  return rank_of_counts(counts_from_sorted(sorted_tuple, alphabet_));
}

std::vector<int> MultisetIndexer::sorted_tuple_at(std::int64_t rank) const {
  std::vector<int> t;
  t.reserve(size_);
  const std::vector<int>& c = counts_[rank];
  for (int v = 0; v < alphabet_; ++v)
    for (int r = 0; r < c[v]; ++r) t.push_back(v);
  return t;
}

void for_each_ordered_tuple(int alphabet, int size,
                            const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> t(size, 0);
  while (true) {
    fn(t);
    int i = size - 1;
    while (i >= 0 && t[i] == alphabet - 1) t[i--] = 0;
    if (i < 0) return;
    ++t[i];
  }
}

void for_each_submultiset(const std::vector<int>& counts, int size,
                          const std::function<void(const std::vector<int>&, double)>& fn) {
  const int s = static_cast<int>(counts.size());
  std::vector<int> sub(s, 0);
  std::function<void(int, int, double)> rec = [&](int pos, int remaining, double ways) {
    if (pos == s) {
      if (remaining == 0) fn(sub, ways);
      return;
    }
    const int cap = std::min(counts[pos], remaining);
    for (int take = 0; take <= cap; ++take) {
      sub[pos] = take;
      rec(pos + 1, remaining - take, ways * binomial(counts[pos], take));
    }
    sub[pos] = 0;
  };
  rec(0, size, 1.0);
}

void first_composition(std::int64_t n, int s, std::vector<std::int64_t>& c) {
  if (s < 1 || n < 0) throw std::invalid_argument("first_composition: bad arguments");
  c.assign(s, 0);
  c[s - 1] = n;
}

bool next_composition(std::vector<std::int64_t>& c) {
  const int s = static_cast<int>(c.size());
  // Rightmost position with mass strictly to its right gains one unit; the
  // mass to its right (minus that unit) collapses onto the final slot.
  std::int64_t right = 0;
  for (int j = s - 2; j >= 0; --j) {
    right += c[j + 1];
    if (right > 0) {
      ++c[j];
      for (int i = j + 1; i < s; ++i) c[i] = 0;
      c[s - 1] = right - 1;
      return true;
    }
  }
  return false;
}

double composition_count(std::int64_t n, int s) { return binomial(n + s - 1, s - 1); }

}  // namespace ustat
