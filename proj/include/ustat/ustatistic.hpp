#pragma once

#include <cstdint>
#include <vector>

#include "ustat/distribution.hpp"
#include "ustat/kernel.hpp"

namespace ustat {

// T over one sample, given the sample's alphabet count vector: the sum over
// all m-subsets reduces to sum over kernel multisets kappa of
// prod_j C(counts[j], kappa_j) * Y(kappa). Never iterates combinations.
double evaluate_U_counts(const KernelTable& kernel, const std::vector<std::int64_t>& counts);

// Convenience overload: sample as a list of alphabet indices, n >= m.
double evaluate_U(const KernelTable& kernel, const std::vector<int>& sample);

// Martingale-difference residual at level i_m for a degenerate kernel: with
// Y_{i_m} = sum over (m-1)-subsets of {1..i_m-1} of Y(..., X_{i_m}), returns
// the max over assignments of the first i_m - 1 variables of
// |E(Y_{i_m} | X_1..X_{i_m-1})|. Requires m <= i_m <= n and a kernel that
// passes the degeneracy check; throws otherwise, reporting the residual.
double martingale_term(const KernelTable& kernel, const FiniteDistribution& dist, int n, int i_m);

}  // namespace ustat
