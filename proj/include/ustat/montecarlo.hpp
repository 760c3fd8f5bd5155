#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "ustat/distribution.hpp"
#include "ustat/errors.hpp"
#include "ustat/kernel.hpp"
#include "ustat/rng.hpp"

namespace ustat {

// Source of i.i.d. draws. Finite draws produce alphabet indices mapped to
// their values; the continuous kind is the unit-rate exponential law the
// counterexample kernel lives on.
class Sampler {
 public:
  enum class Kind { finite, exponential_rate1 };

  static Sampler finite(FiniteDistribution dist);
  static Sampler exponential_rate1();

  Kind kind() const { return kind_; }
  const FiniteDistribution& dist() const;

  // Value and (for finite) alphabet index of one draw addressed by stream
  // position. Pure in (stream, index).
  double draw_value(const PhiloxStream& stream, std::uint64_t index) const;
  int draw_index(const PhiloxStream& stream, std::uint64_t index) const;

 private:
  explicit Sampler(Kind kind) : kind_(kind) {}
  Kind kind_;
  std::optional<FiniteDistribution> dist_;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(n_samples)
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
  double elapsed_seconds = 0.0;
  std::int64_t chunk_size = 0;
};

struct McOptions {
  int workers = 1;
  std::int64_t chunk_size = 1024;   // fixed logical chunking; part of the result's identity
  double eval_budget = 1e8;         // total kernel evaluations allowed
};

// Symmetric kernel for continuous sampling. `eval` sees `order` arguments.
// When the kernel is a sum over plus_count-subsets of products of two scalar
// factors, `factorized` unlocks an O(n * order^2) per-sample evaluation of
// the full subset sum; black-box kernels pay the C(n, order) loop instead.
struct SymmetricKernelEvaluator {
  int order = 1;
  std::function<double(const double*)> eval;

  struct Factorized {
    int plus_count = 0;
    std::function<double(double)> f_plus;
    std::function<double(double)> f_minus;
  };
  std::optional<Factorized> factorized;
};

// Deterministic chunked engine: value i of the logical sample sequence is a
// pure function of (seed, i), chunks of opt.chunk_size are reduced pairwise,
// and chunk partials are reduced pairwise in chunk order. Any worker count
// yields bit-identical results.
McEstimate chunked_mc_estimate(std::int64_t n_samples, std::uint64_t seed,
                               const McOptions& opt,
                               const std::function<double(std::uint64_t)>& sample_value);

// E|T_n|^p (or signed T_n^p for integer p) by direct simulation on a finite
// law; per-sample cost is one count-vector evaluation.
McEstimate mc_Tn_moment(const KernelTable& kernel, const FiniteDistribution& dist, int n,
                        double p, bool absolute, std::int64_t n_samples, std::uint64_t seed,
                        const McOptions& opt = {});

// Same moment for a continuous-sampler evaluator kernel.
McEstimate mc_Tn_moment(const SymmetricKernelEvaluator& kernel, const Sampler& sampler, int n,
                        double p, bool absolute, std::int64_t n_samples, std::uint64_t seed,
                        const McOptions& opt = {});

struct McCondEstimate {
  McEstimate estimate;
  std::int64_t n_inner = 0;
  std::string bias_note;  // nonempty when the nested power carries O(1/n_inner) bias
};

// Nested estimator of E[(E(h(Y) | X_1..X_k))^r]: the outer loop draws the
// conditioning block, the inner loop averages h(Y) over fresh draws of the
// remaining arguments, and the r-th power of the inner mean is averaged.
// k = m skips the inner loop (no remaining randomness).
McCondEstimate mc_cond_moment(const SymmetricKernelEvaluator& kernel, const Sampler& sampler,
                              int k, Inner inner, double r, std::int64_t n_outer,
                              std::int64_t n_inner, std::uint64_t seed,
                              const McOptions& opt = {});

}  // namespace ustat
