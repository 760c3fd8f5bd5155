#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ustat/bounds.hpp"
#include "ustat/distribution.hpp"
#include "ustat/kernel.hpp"

namespace ustat {

struct CorpusMember {
  std::string id;
  KernelTable kernel;
  FiniteDistribution dist;
};

struct ConstantsWitness {
  std::string kernel_id;
  std::int64_t n = 0;
  double ratio = 0.0;
};

// Empirical envelope of exact-moment-over-bound ratios across a corpus: any
// valid lower constant is at most ratio_inf, any valid upper constant at
// least ratio_sup, certified on this corpus and grid.
struct ConstantsResult {
  int theorem = 0;
  double p = 0.0;
  int m = 0;
  double ratio_inf = 0.0;
  double ratio_sup = 0.0;
  ConstantsWitness witness_inf, witness_sup;
};

// Evaluates every (kernel, n) ratio for the chosen bound. Preconditions:
// nonempty corpus of a single order m, every kernel meeting the theorem's
// hypothesis (nonnegative for 1, degenerate for 2 and 3), and no
// almost-surely-zero kernel (its ratio is undefined).
ConstantsResult estimate_constants(const std::vector<CorpusMember>& corpus, int theorem, double p,
                                   const std::vector<std::int64_t>& n_grid,
                                   const OracleOptions& opt = {});

}  // namespace ustat
