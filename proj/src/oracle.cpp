#include "ustat/oracle.hpp"

#include <chrono>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "ustat/combinatorics.hpp"
#include "ustat/ustatistic.hpp"

namespace ustat {

namespace {

bool is_integer(double x) { return x == std::floor(x); }

// Direct multinomial * prob products: safe while n is small enough that the
// multinomial stays well inside double range.
double class_weight_direct(std::int64_t n, const std::vector<std::int64_t>& counts,
                           const FiniteDistribution& dist) {
  double w = multinomial(n, counts);
  for (std::size_t j = 0; j < counts.size(); ++j)
    w *= std::pow(dist.prob(j), static_cast<double>(counts[j]));
  return w;
}

// Log-space variant for large n where the multinomial coefficient would
// overflow; exponentiated per class.
double class_weight_log(std::int64_t n, const std::vector<std::int64_t>& counts,
                        const FiniteDistribution& dist) {
  double lw = log_multinomial(n, counts);
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] == 0) continue;
    const double pj = dist.prob(j);
    if (pj == 0.0) return 0.0;
    lw += static_cast<double>(counts[j]) * std::log(pj);
  }
  return std::exp(lw);
}

constexpr std::int64_t kDirectWeightMaxN = 50;

// Composition at a given lexicographic rank: peels off leading coordinates
// by block counts. Used only to seek worker ranges to chunk boundaries.
std::vector<std::int64_t> unrank_composition(std::int64_t n, int s, std::int64_t rank) {
  std::vector<std::int64_t> c(s, 0);
  std::int64_t remaining = n;
  for (int j = 0; j + 1 < s; ++j) {
    const int parts_right = s - j - 1;
    if (parts_right == 1) {
      c[j] = rank;
      remaining -= rank;
      rank = 0;
      continue;
    }
    std::int64_t v = 0;
    while (true) {
      const auto block = static_cast<std::int64_t>(composition_count(remaining - v, parts_right));
      if (rank < block) break;
      rank -= block;
      ++v;
    }
    c[j] = v;
    remaining -= v;
  }
  c[s - 1] = remaining;
  return c;
}

// Enumerates all count classes of size n, applying `value_of_class` to each
// (counts, weight) pair, and reduces contributions with the two-level
// fixed-shape pairwise scheme. Workers take contiguous chunk ranges.
double reduce_over_classes(
    const FiniteDistribution& dist, std::int64_t n, const OracleOptions& opt, const char* who,
    const std::function<double(const std::vector<std::int64_t>&, double)>& value_of_class,
    double* out_num_classes) {
  if (opt.workers < 1) throw std::invalid_argument("oracle: need at least 1 worker");
  if (opt.chunk_size < 1) throw std::invalid_argument("oracle: chunk_size must be positive");
  const int s = dist.size();
  const double num_classes = composition_count(n, s);
  if (out_num_classes) *out_num_classes = num_classes;
  if (num_classes > opt.class_budget) {
    std::ostringstream os;
    os << who << ": " << num_classes << " count classes exceed the budget of " << opt.class_budget
       << "; use the mc command for a sampled estimate";
    throw BudgetExceeded(os.str(), num_classes, opt.class_budget);
  }

  const auto total_classes = static_cast<std::int64_t>(num_classes);
  const std::int64_t chunk = opt.chunk_size;
  const std::int64_t n_chunks = (total_classes + chunk - 1) / chunk;
  const bool log_weights = n > kDirectWeightMaxN;
  std::vector<double> partials(n_chunks, 0.0);

  auto run_range = [&](std::int64_t chunk_begin, std::int64_t chunk_end,
                       std::exception_ptr& error) {
    try {
      std::vector<double> buf;
      buf.reserve(chunk);
      std::vector<std::int64_t> c =
          unrank_composition(n, s, chunk_begin * chunk);
      std::int64_t rank = chunk_begin * chunk;
      for (std::int64_t ci = chunk_begin; ci < chunk_end; ++ci) {
        const std::int64_t end_rank = std::min(total_classes, (ci + 1) * chunk);
        buf.clear();
        for (; rank < end_rank; ++rank) {
          const double w = log_weights ? class_weight_log(n, c, dist)
                                       : class_weight_direct(n, c, dist);
          buf.push_back(value_of_class(c, w));
          next_composition(c);
        }
        partials[ci] = pairwise_sum(buf);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  const int workers = static_cast<int>(std::min<std::int64_t>(opt.workers, n_chunks));
  std::vector<std::exception_ptr> errors(std::max(workers, 1));
  if (workers <= 1) {
    run_range(0, n_chunks, errors[0]);
  } else {
    const std::int64_t per_worker = (n_chunks + workers - 1) / workers;
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      const std::int64_t begin = w * per_worker;
      const std::int64_t end = std::min(n_chunks, begin + per_worker);
      if (begin >= end) break;
      pool.emplace_back(run_range, begin, end, std::ref(errors[w]));
    }
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  return pairwise_sum(partials);
}

}  // namespace

ExactMomentResult exact_Tn_moment(const KernelTable& kernel, const FiniteDistribution& dist,
                                  std::int64_t n, double p, bool absolute,
                                  const OracleOptions& opt) {
  const int m = kernel.order();
  if (n < m) throw std::invalid_argument("exact_Tn_moment: n must be >= kernel order");
  if (p < 1.0) throw std::invalid_argument("exact_Tn_moment: p must be >= 1");
  if (!absolute && !is_integer(p))
    throw std::invalid_argument("exact_Tn_moment: signed moment requires an integer p");
  if (kernel.alphabet() != dist.size())
    throw std::invalid_argument("exact_Tn_moment: alphabet size mismatch");

  const auto start = std::chrono::steady_clock::now();
  ExactMomentResult res;
  res.n = n;
  res.m = m;
  res.p = p;
  res.absolute = absolute;

  res.value = reduce_over_classes(
      dist, n, opt, "exact_Tn_moment",
      [&](const std::vector<std::int64_t>& counts, double w) {
        const double t = evaluate_U_counts(kernel, counts);
        return w * (absolute ? std::pow(std::abs(t), p) : std::pow(t, p));
      },
      &res.num_classes);

  res.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return res;
}

double cond_moment(const KernelTable& kernel, const FiniteDistribution& dist, int k, Inner inner,
                   double r) {
  const int m = kernel.order();
  if (k < 0 || k > m) throw std::invalid_argument("cond_moment: need 0 <= k <= m");
  if (r < 1.0) throw std::invalid_argument("cond_moment: need r >= 1");
  if (kernel.alphabet() != dist.size())
    throw std::invalid_argument("cond_moment: alphabet size mismatch");
  if (inner == Inner::identity && kernel.min_entry() < 0.0 && !is_integer(r))
    throw std::domain_error(
        "cond_moment: non-integer exponent of a signed kernel's conditional mean; "
        "the identity inner requires a nonnegative kernel here");

  // A negative conditional mean (reachable only for signed kernels under the
  // identity inner, where r is integer by the guard above) contributes its
  // absolute value.
  auto outer_power = [r](double v) { return std::pow(std::abs(v), r); };

  KernelTable h = (inner == Inner::square) ? kernel.squared() : kernel;
  for (int level = m; level > std::max(k, 1); --level) h = conditional_mean_table(h, dist);
  if (k == 0) return outer_power(kernel_mean(h, dist));

  const MultisetIndexer& index = h.index();
  double acc = 0.0;
  for (std::int64_t rank = 0; rank < index.count(); ++rank)
    acc += multiset_weight(index, rank, dist) * outer_power(h.value_at(rank));
  return acc;
}

double exact_sumsq_moment(const KernelTable& kernel, const FiniteDistribution& dist,
                          std::int64_t n, double p, const OracleOptions& opt) {
  if (p < 2.0) throw std::invalid_argument("exact_sumsq_moment: p must be >= 2");
  return exact_Tn_moment(kernel.squared(), dist, n, p / 2.0, /*absolute=*/true, opt).value;
}

double count_class_weight_sum(const FiniteDistribution& dist, std::int64_t n,
                              const OracleOptions& opt) {
  return reduce_over_classes(
      dist, n, opt, "count_class_weight_sum",
      [](const std::vector<std::int64_t>&, double w) { return w; }, nullptr);
}

double mc_crosscheck(const ExactMomentResult& exact, const McEstimate& mc) {
  const double diff = std::abs(exact.value - mc.mean);
  if (mc.std_error == 0.0) {
    if (diff == 0.0) return 0.0;
    throw std::domain_error("mc_crosscheck: zero standard error with disagreement");
  }
  return diff / mc.std_error;
}

}  // namespace ustat
