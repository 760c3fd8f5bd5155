#include "ustat/montecarlo.hpp"

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

// Power rule shared with the exact route: nonnegative bases take the power
// directly, signed bases contribute their absolute value, and a signed base
// under a non-integer exponent has no defined value here.
double conditional_power(double base, double r, const char* who) {
  if (base >= 0.0) return std::pow(base, r);
  if (!is_integer(r))
    throw std::domain_error(std::string(who) + ": negative conditional mean under non-integer exponent");
  return std::pow(-base, r);
}

[[noreturn]] void throw_overflow(const char* who, std::uint64_t index) {
  std::ostringstream os;
  os << who << ": per-sample value overflowed to infinity at sample " << index
     << "; reduce p or rescale the kernel";
  throw std::overflow_error(os.str());
}

void check_eval_budget(double per_sample, std::int64_t n_samples, const McOptions& opt,
                       const char* who) {
  const double required = per_sample * static_cast<double>(n_samples);
  if (required > opt.eval_budget) {
    std::ostringstream os;
    os << who << ": requires about " << required << " kernel evaluations, budget is "
       << opt.eval_budget;
    throw BudgetExceeded(os.str(), required, opt.eval_budget);
  }
}

}  // namespace

Sampler Sampler::finite(FiniteDistribution dist) {
  Sampler s(Kind::finite);
  s.dist_ = std::move(dist);
  return s;
}

Sampler Sampler::exponential_rate1() { return Sampler(Kind::exponential_rate1); }

const FiniteDistribution& Sampler::dist() const {
  if (!dist_) throw std::logic_error("Sampler: no finite law attached");
  return *dist_;
}

int Sampler::draw_index(const PhiloxStream& stream, std::uint64_t index) const {
  if (kind_ != Kind::finite) throw std::logic_error("Sampler: draw_index needs a finite law");
  const double u = stream.uniform01(index);
  double cum = 0.0;
  const int s = dist_->size();
  for (int j = 0; j < s; ++j) {
    cum += dist_->prob(j);
    if (u < cum) return j;
  }
  return s - 1;
}

double Sampler::draw_value(const PhiloxStream& stream, std::uint64_t index) const {
  if (kind_ == Kind::exponential_rate1) return stream.exponential(index);
  return dist_->value(draw_index(stream, index));
}

McEstimate chunked_mc_estimate(std::int64_t n_samples, std::uint64_t seed, const McOptions& opt,
                               const std::function<double(std::uint64_t)>& sample_value) {
  if (n_samples < 2) throw std::invalid_argument("mc: need at least 2 samples");
  if (opt.workers < 1) throw std::invalid_argument("mc: need at least 1 worker");
  if (opt.chunk_size < 1) throw std::invalid_argument("mc: chunk_size must be positive");
  const auto start = std::chrono::steady_clock::now();

  const std::int64_t chunk = opt.chunk_size;
  const std::int64_t n_chunks = (n_samples + chunk - 1) / chunk;
  std::vector<double> partial_sum(n_chunks), partial_sumsq(n_chunks);

  auto run_chunks = [&](int worker, std::exception_ptr& error) {
    try {
      std::vector<double> g, g2;
      g.reserve(chunk);
      g2.reserve(chunk);
      for (std::int64_t c = worker; c < n_chunks; c += opt.workers) {
        const std::int64_t begin = c * chunk;
        const std::int64_t end = std::min(n_samples, begin + chunk);
        g.clear();
        g2.clear();
        for (std::int64_t i = begin; i < end; ++i) {
          const double v = sample_value(static_cast<std::uint64_t>(i));
          g.push_back(v);
          g2.push_back(v * v);
        }
        partial_sum[c] = pairwise_sum(g);
        partial_sumsq[c] = pairwise_sum(g2);
      }
    } catch (...) {
      error = std::current_exception();
    }
  };

  std::vector<std::exception_ptr> errors(opt.workers);
  if (opt.workers == 1) {
    run_chunks(0, errors[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(opt.workers);
    for (int w = 0; w < opt.workers; ++w)
      pool.emplace_back(run_chunks, w, std::ref(errors[w]));
    for (std::thread& t : pool) t.join();
  }
  for (const std::exception_ptr& e : errors)
    if (e) std::rethrow_exception(e);

  const double s1 = pairwise_sum(partial_sum);
  const double s2 = pairwise_sum(partial_sumsq);
  const double n = static_cast<double>(n_samples);
  const double mean = s1 / n;
  const double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1.0));

  McEstimate est;
  est.mean = mean;
  est.std_error = std::sqrt(var / n);
  est.n_samples = n_samples;
  est.seed = seed;
  est.chunk_size = chunk;
  est.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return est;
}

McEstimate mc_Tn_moment(const KernelTable& kernel, const FiniteDistribution& dist, int n,
                        double p, bool absolute, std::int64_t n_samples, std::uint64_t seed,
                        const McOptions& opt) {
  if (n < kernel.order()) throw std::invalid_argument("mc: n must be >= kernel order");
  if (p < 1.0) throw std::invalid_argument("mc: p must be >= 1");
  if (!absolute && !is_integer(p))
    throw std::invalid_argument("mc: signed moment requires an integer p");
  if (kernel.alphabet() != dist.size()) throw std::invalid_argument("mc: alphabet size mismatch");
  check_eval_budget(static_cast<double>(kernel.index().count()), n_samples, opt, "mc_Tn_moment");

  const PhiloxStream stream(seed, 0);
  const Sampler sampler = Sampler::finite(dist);
  const int s = dist.size();
  const auto draws_per_sample = static_cast<std::uint64_t>(n);
  auto sample_value = [&, n, p, absolute](std::uint64_t i) {
    std::vector<std::int64_t> counts(s, 0);
    const std::uint64_t base = i * draws_per_sample;
    for (int t = 0; t < n; ++t) ++counts[sampler.draw_index(stream, base + t)];
    const double tn = evaluate_U_counts(kernel, counts);
    const double g = absolute ? std::pow(std::abs(tn), p) : std::pow(tn, p);
    if (!std::isfinite(g)) throw_overflow("mc_Tn_moment", i);
    return g;
  };
  return chunked_mc_estimate(n_samples, seed, opt, sample_value);
}

namespace {

// [z^a w^b] prod_i (1 + z f_plus(x_i) + w f_minus(x_i)) at (a, b) =
// (plus_count, order - plus_count): the subset-sum kernel total over all
// order-subsets of the sample, in O(n * order^2) per sample.
double factorized_subset_sum(const SymmetricKernelEvaluator::Factorized& f, int order,
                             const std::vector<double>& xs) {
  const int a = f.plus_count;
  const int b = order - a;
  std::vector<double> dp((a + 1) * (b + 1), 0.0);
  auto at = [&](int i, int j) -> double& { return dp[i * (b + 1) + j]; };
  at(0, 0) = 1.0;
  for (std::size_t t = 0; t < xs.size(); ++t) {
    const double fp = f.f_plus(xs[t]);
    const double fm = f.f_minus(xs[t]);
    const int seen = static_cast<int>(t) + 1;
    // Descending sweep so the (i-1, j) and (i, j-1) reads see the previous
    // point's coefficients, not this round's.
    for (int i = std::min(a, seen); i >= 0; --i)
      for (int j = std::min(b, seen - i); j >= 0; --j) {
        double v = at(i, j);
        if (i > 0) v += fp * at(i - 1, j);
        if (j > 0) v += fm * at(i, j - 1);
        at(i, j) = v;
      }
  }
  return at(a, b);
}

double blackbox_subset_sum(const SymmetricKernelEvaluator& kernel, const std::vector<double>& xs) {
  const int m = kernel.order;
  const int n = static_cast<int>(xs.size());
  std::vector<int> idx(m);
  for (int t = 0; t < m; ++t) idx[t] = t;
  std::vector<double> args(m);
  double total = 0.0;
  while (true) {
    for (int t = 0; t < m; ++t) args[t] = xs[idx[t]];
    total += kernel.eval(args.data());
    int t = m - 1;
    while (t >= 0 && idx[t] == n - m + t) --t;
    if (t < 0) break;
    ++idx[t];
    for (int u = t + 1; u < m; ++u) idx[u] = idx[u - 1] + 1;
  }
  return total;
}

}  // namespace

McEstimate mc_Tn_moment(const SymmetricKernelEvaluator& kernel, const Sampler& sampler, int n,
                        double p, bool absolute, std::int64_t n_samples, std::uint64_t seed,
                        const McOptions& opt) {
  const int m = kernel.order;
  if (n < m) throw std::invalid_argument("mc: n must be >= kernel order");
  if (p < 1.0) throw std::invalid_argument("mc: p must be >= 1");
  if (!absolute && !is_integer(p))
    throw std::invalid_argument("mc: signed moment requires an integer p");
  const double per_sample = kernel.factorized
                                ? static_cast<double>(n) * (m + 1) * (m + 1)
                                : binomial(n, m) * m;
  check_eval_budget(per_sample, n_samples, opt, "mc_Tn_moment");

  const PhiloxStream stream(seed, 0);
  const auto draws_per_sample = static_cast<std::uint64_t>(n);
  auto sample_value = [&, n, p, absolute](std::uint64_t i) {
    std::vector<double> xs(n);
    const std::uint64_t base = i * draws_per_sample;
    for (int t = 0; t < n; ++t) xs[t] = sampler.draw_value(stream, base + t);
    const double tn = kernel.factorized ? factorized_subset_sum(*kernel.factorized, m, xs)
                                        : blackbox_subset_sum(kernel, xs);
    const double g = absolute ? std::pow(std::abs(tn), p) : std::pow(tn, p);
    if (!std::isfinite(g)) throw_overflow("mc_Tn_moment", i);
    return g;
  };
  return chunked_mc_estimate(n_samples, seed, opt, sample_value);
}

McCondEstimate mc_cond_moment(const SymmetricKernelEvaluator& kernel, const Sampler& sampler,
                              int k, Inner inner, double r, std::int64_t n_outer,
                              std::int64_t n_inner, std::uint64_t seed, const McOptions& opt) {
  const int m = kernel.order;
  if (k < 0 || k > m) throw std::invalid_argument("mc_cond_moment: need 0 <= k <= m");
  if (n_inner < 2) throw std::invalid_argument("mc_cond_moment: need n_inner >= 2");
  if (r < 1.0) throw std::invalid_argument("mc_cond_moment: need r >= 1");
  const double inner_draws = (k == m) ? 1.0 : static_cast<double>(n_inner);
  check_eval_budget(inner_draws, n_outer, opt, "mc_cond_moment");

  const PhiloxStream stream(seed, 0);
  const std::uint64_t draws_per_outer =
      (k == m) ? static_cast<std::uint64_t>(m)
               : static_cast<std::uint64_t>(k) +
                     static_cast<std::uint64_t>(n_inner) * static_cast<std::uint64_t>(m - k);

  auto sample_value = [&, k, m, r, inner](std::uint64_t j) {
    std::vector<double> args(m);
    const std::uint64_t base = j * draws_per_outer;
    for (int t = 0; t < k; ++t) args[t] = sampler.draw_value(stream, base + t);
    double est = 0.0;
    if (k == m) {
      const double y = kernel.eval(args.data());
      est = (inner == Inner::square) ? y * y : y;
    } else {
      double acc = 0.0;
      for (std::int64_t rep = 0; rep < n_inner; ++rep) {
        const std::uint64_t inner_base = base + k + static_cast<std::uint64_t>(rep) * (m - k);
        for (int t = k; t < m; ++t)
          args[t] = sampler.draw_value(stream, inner_base + (t - k));
        const double y = kernel.eval(args.data());
        acc += (inner == Inner::square) ? y * y : y;
      }
      est = acc / static_cast<double>(n_inner);
    }
    const double g = conditional_power(est, r, "mc_cond_moment");
    if (!std::isfinite(g)) throw_overflow("mc_cond_moment", j);
    return g;
  };

  McCondEstimate out;
  out.estimate = chunked_mc_estimate(n_outer, seed, opt, sample_value);
  out.n_inner = n_inner;
  if (r > 1.0 && k < m)
    out.bias_note = "inner mean raised to r > 1 carries O(1/n_inner) bias; grow n_inner to shrink it";
  return out;
}

}  // namespace ustat
