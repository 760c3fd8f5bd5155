#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "ustat/distribution.hpp"
#include "ustat/kernel.hpp"
#include "ustat/oracle.hpp"

namespace ustat {

// The per-level pieces n^{exponent(k)} * M_k of a max-type moment bound at
// one (n, p), with the max and its smallest attaining level.
struct BoundTerms {
  Eigen::VectorXd terms;       // m + 1 entries, level k = 0..m
  Eigen::VectorXd exponents;   // exponent of n at each level
  int argmax_k = 0;            // smallest level attaining the max
  double max_value = 0.0;
  std::int64_t n = 0;
  double p = 0.0;
};

// Bound expression for nonnegative kernels: terms n^{p(m-k)+k} * M_k with
// M_k = E(E(Y | X_1..X_k))^p. Throws on a kernel with negative entries.
BoundTerms nonnegative_bound_terms(const KernelTable& kernel, const FiniteDistribution& dist,
                                   std::int64_t n, double p);

// Bound expression for degenerate kernels, p >= 2: terms n^{(p/2)(m-k)+k} *
// E(E(Y^2 | X_1..X_k))^{p/2}. Throws when the degeneracy residual exceeds
// the equality tolerance.
BoundTerms degenerate_bound_terms(const KernelTable& kernel, const FiniteDistribution& dist,
                                  std::int64_t n, double p);

struct BoundRow {
  std::int64_t n = 0;
  double exact_moment = 0.0;
  double bound_value = 0.0;
  double ratio = 0.0;
  // Constant-free lower bounds of the nonnegative-kernel theorem; slacks are
  // (exact - bound) / max(1, bound).
  std::optional<double> lower_mean_power, slack_mean_power;
  std::optional<double> lower_moment_sum, slack_moment_sum;
  // Sum-of-squares comparison extras: the level-wise bound value and the
  // ratio of the two bound expressions.
  std::optional<double> levelwise_bound, sumsq_over_levelwise;
};

struct FitResult {
  double slope = std::numeric_limits<double>::quiet_NaN();
  double intercept = std::numeric_limits<double>::quiet_NaN();
  double r2 = std::numeric_limits<double>::quiet_NaN();
};

// Least-squares fit of log(y) against log(x); entries must be positive.
FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Two-sided verification record over an n-grid. The theorems' unspecified
// constants appear empirically as the ratio envelope; slope of log(ratio)
// near 0 indicates the bound captures the growth order.
struct BoundReport {
  int theorem = 0;  // 1 nonnegative, 2 degenerate, 3 sum-of-squares
  int m = 0;
  double p = 0.0;
  std::vector<BoundRow> rows;
  double ratio_min = 0.0;
  double ratio_max = 0.0;
  double slope_of_log_ratio = 0.0;
  double fit_r2 = 0.0;
  bool trivial_zero = false;  // zero kernel: ratios undefined, rows omitted
  std::optional<double> min_slack_mean_power;     // theorem 1
  std::optional<double> min_slack_moment_sum;     // theorem 1
  std::optional<double> orthogonality_max_rel_dev;  // p == 2: |ET^2 - C(n,m) EY^2| relative
  std::optional<double> sumsq_ratio_min, sumsq_ratio_max;  // theorem 3: envelope of the bound pair
};

BoundReport verify_theorem1(const KernelTable& kernel, const FiniteDistribution& dist,
                            const std::vector<std::int64_t>& n_grid, double p,
                            const OracleOptions& opt = {});

BoundReport verify_theorem2(const KernelTable& kernel, const FiniteDistribution& dist,
                            const std::vector<std::int64_t>& n_grid, double p,
                            const OracleOptions& opt = {});

BoundReport verify_theorem3(const KernelTable& kernel, const FiniteDistribution& dist,
                            const std::vector<std::int64_t>& n_grid, double p,
                            const OracleOptions& opt = {});

// Finite nonnegative laws standing in for an independent sequence; the
// sequence-moment checks below evaluate A_r = sum_i E X_i^r exactly.
struct SequenceFamily {
  std::vector<FiniteDistribution> members;
};

// Slacks (RHS - LHS, >= 0 when the inequality holds) of the three
// sequence-moment inequalities. The interpolation and max-power parts apply
// only for gamma < s < p and are absent otherwise; the product bound applies
// whenever s >= 0.
struct Lemma2Slacks {
  std::optional<double> interpolation;  // A_s vs interpolated A_p, B_gamma
  std::optional<double> product_bound;  // A_p B^s vs max(A_{p+s}, B^{p+s})
  std::optional<double> max_power;      // max(A_s, B^s) vs max(A_p, B^p)^{s/p}
};

Lemma2Slacks lemma2_check(const SequenceFamily& seq, double gamma, double s, double p);

// Cross-level product bound: returns LHS / RHS for
//   LHS = n^{k+l+s(2m-k-l)} M_k(s) M_l(s)
//   RHS = max(n^{k+2s(m-k)} M_k(2s), n^{l+2s(m-l)} M_l(2s), n^{2sm} (EY)^{2s})
// on a nonnegative kernel. The ratio is an empirical witness for the
// inequality's constant; it is provably <= 1 when k = l or the kernel is
// constant.
double ineq7_check(const KernelTable& kernel, const FiniteDistribution& dist, std::int64_t n,
                   int k, int l, double s);

}  // namespace ustat
