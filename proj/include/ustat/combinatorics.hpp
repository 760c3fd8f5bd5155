#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace ustat {

// Exact while the result fits in the 53-bit integer range of a double;
// callers that need larger values go through the log-space variants.
double binomial(std::int64_t n, std::int64_t k);

// lgamma(n + 1)
double log_factorial(std::int64_t n);

// n! / (c_0! c_1! ... ), with sum(counts) == n required.
double multinomial(std::int64_t n, const std::vector<std::int64_t>& counts);
double log_multinomial(std::int64_t n, const std::vector<std::int64_t>& counts);

// Fixed-shape binary-tree summation: the association order depends only on
// `size`, never on chunking or thread layout. Every reduction that must be
// bit-identical across worker counts funnels through this.
double pairwise_sum(const double* data, std::size_t size);
double pairwise_sum(const std::vector<double>& v);

// Two-level deterministic accumulator: values arrive in a fixed logical
// order, are folded into fixed-size chunks (pairwise within each chunk),
// and the chunk partials are pairwise-summed at the end. Workers may fill
// disjoint chunks concurrently as long as each value lands at its logical
// index; the final total is a pure function of (values, chunk_size).
class ChunkedAccumulator {
 public:
  explicit ChunkedAccumulator(std::size_t chunk_size);

  void push(double value);               // sequential fill
  double total() const;                  // pairwise over closed chunks + tail
  std::size_t count() const { return count_; }

  static double reduce_chunks(const std::vector<double>& chunk_partials);

 private:
  std::size_t chunk_size_;
  std::size_t count_ = 0;
  std::vector<double> partials_;         // closed chunks
  std::vector<double> tail_;             // current open chunk
};

// Multisets of fixed size over a small alphabet {0..alphabet-1}, stored as
// count vectors in the lexicographic order of their sorted representative
// tuples. Ranks are stable, so kernel tables indexed by rank are canonical.
class MultisetIndexer {
 public:
  MultisetIndexer(int size, int alphabet);

  int size() const { return size_; }
  int alphabet() const { return alphabet_; }
  std::int64_t count() const { return static_cast<std::int64_t>(counts_.size()); }
  const std::vector<std::vector<int>>& counts() const { return counts_; }
  const std::vector<int>& counts_at(std::int64_t rank) const { return counts_[rank]; }

  std::int64_t rank_of_counts(const std::vector<int>& count_vec) const;
  std::int64_t rank_of_sorted(const std::vector<int>& sorted_tuple) const;

  // Number of ordered arrangements of the multiset: multinomial(size; counts).
  double multiplicity(std::int64_t rank) const { return multiplicities_[rank]; }

  std::vector<int> sorted_tuple_at(std::int64_t rank) const;

 private:
  int size_;
  int alphabet_;
  std::vector<std::vector<int>> counts_;
  std::vector<double> multiplicities_;
  std::map<std::vector<int>, std::int64_t> rank_by_counts_;
};

// All ordered tuples in {0..alphabet-1}^size, lexicographic. The callback
// receives the tuple; return normally to continue.
void for_each_ordered_tuple(int alphabet, int size,
                            const std::function<void(const std::vector<int>&)>& fn);

// All sub-multisets of `counts` with the given size, as count vectors,
// together with the number of ways to pick them: prod_j C(counts[j], sub[j]).
void for_each_submultiset(const std::vector<int>& counts, int size,
                          const std::function<void(const std::vector<int>&, double)>& fn);

// Compositions of n into s ordered nonnegative parts, lexicographic order:
// (0,...,0,n) first, (n,0,...,0) last. next_composition returns false once
// the last composition has been consumed.
void first_composition(std::int64_t n, int s, std::vector<std::int64_t>& c);
bool next_composition(std::vector<std::int64_t>& c);
double composition_count(std::int64_t n, int s);   // C(n+s-1, s-1)

}  // namespace ustat
