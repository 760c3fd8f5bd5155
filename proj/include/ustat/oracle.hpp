#pragma once

#include <cstdint>

#include "ustat/distribution.hpp"
#include "ustat/errors.hpp"
#include "ustat/kernel.hpp"
#include "ustat/montecarlo.hpp"

namespace ustat {

struct OracleOptions {
  double class_budget = 5e7;        // max count classes to enumerate
  int workers = 1;
  std::int64_t chunk_size = 4096;   // classes per accumulation chunk; part of the result identity
};

struct ExactMomentResult {
  double value = 0.0;
  std::int64_t n = 0;
  int m = 0;
  double p = 0.0;
  bool absolute = true;
  double num_classes = 0.0;
  double elapsed_seconds = 0.0;
};

// E|T_n|^p (or signed E T_n^p for integer p) by exact enumeration of count
// classes: compositions of n over the alphabet, visited in lexicographic
// order, each contributing weight * power(T on that class). The reduction is
// a fixed-shape pairwise tree over fixed-size chunks, so any worker count
// produces bit-identical values.
ExactMomentResult exact_Tn_moment(const KernelTable& kernel, const FiniteDistribution& dist,
                                  std::int64_t n, double p, bool absolute,
                                  const OracleOptions& opt = {});

// E[(E(h(Y) | X_1..X_k))^r] with h selected by `inner`; k = 0 is the plain
// mean, k = m the unconditioned moment of h(Y). Signed kernels under the
// identity inner require an integer r; a negative conditional mean then
// contributes its absolute value.
double cond_moment(const KernelTable& kernel, const FiniteDistribution& dist, int k, Inner inner,
                   double r);

// E(sum over m-subsets of Y^2)^{p/2}, p >= 2: the entrywise-squared kernel
// is itself a nonnegative kernel, so this delegates to exact_Tn_moment at
// exponent p/2.
double exact_sumsq_moment(const KernelTable& kernel, const FiniteDistribution& dist,
                          std::int64_t n, double p, const OracleOptions& opt = {});

// Total probability mass over all count classes; 1 up to rounding. Exposed
// because it is the cheapest end-to-end audit of the weight computation.
double count_class_weight_sum(const FiniteDistribution& dist, std::int64_t n,
                              const OracleOptions& opt = {});

// z-score between an exact value and a Monte Carlo estimate; a zero standard
// error with disagreement has no defensible z and throws instead.
double mc_crosscheck(const ExactMomentResult& exact, const McEstimate& mc);

}  // namespace ustat
