#include "ustat/remark.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "ustat/bounds.hpp"
#include "ustat/rng.hpp"
#include "ustat/tolerances.hpp"

namespace ustat {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Cross-moments of the two factors under exponential(1), in cancellation-free
// form (each is O(a^2) for small tilt):
//   E f+^2  = a^2 / ((1-2a)(1-a)^2)
//   E f-^2  = a^2 / ((1+2a)(1+a)^2)
//   E f+ f- = -a^2 / (1-a^2)
struct FactorMoments {
  double pp, mm, pm;
  double operator()(int s1, int s2) const {
    if (s1 == 1 && s2 == 1) return pp;
    if (s1 == 0 && s2 == 0) return mm;
    return pm;
  }
};

FactorMoments factor_moments(double a) {
  if (2.0 * a >= 1.0) {
    throw std::domain_error("second factor moment diverges: tilt " + std::to_string(a) +
                            " is at or above 1/2");
  }
  FactorMoments mu;
  mu.pp = a * a / ((1.0 - 2.0 * a) * (1.0 - a) * (1.0 - a));
  mu.mm = a * a / ((1.0 + 2.0 * a) * (1.0 + a) * (1.0 + a));
  mu.pm = -a * a / (1.0 - a * a);
  return mu;
}

// Sum over pairs of plus-subsets of t coordinates (i pluses in the first
// pattern, j in the second) of the product of per-coordinate cross-moments.
// This is the fully-integrated part of E(Y^2 | head); with t = m it equals
// E Y^2 itself.
double tail_weight(int t, int i, int j, const FactorMoments& mu) {
  if (i < 0 || j < 0 || i > t || j > t) return 0.0;
  std::vector<std::vector<double>> w(i + 1, std::vector<double>(j + 1, 0.0));
  w[0][0] = 1.0;
  for (int c = 0; c < t; ++c) {
    for (int x = std::min(i, c + 1); x >= 0; --x) {
      for (int y = std::min(j, c + 1); y >= 0; --y) {
        double acc = w[x][y] * mu(0, 0);
        if (x > 0) acc += w[x - 1][y] * mu(1, 0);
        if (y > 0) acc += w[x][y - 1] * mu(0, 1);
        if (x > 0 && y > 0) acc += w[x - 1][y - 1] * mu(1, 1);
        w[x][y] = acc;
      }
    }
  }
  return w[i][j];
}

struct SignedLog {
  double logmag = -kInf;
  int sign = 0;
};

SignedLog signed_log_sum(const std::vector<SignedLog>& terms) {
  double top = -kInf;
  for (const SignedLog& t : terms) {
    if (t.sign != 0) top = std::max(top, t.logmag);
  }
  if (top == -kInf) return {};
  double s = 0.0;
  for (const SignedLog& t : terms) {
    if (t.sign != 0) s += t.sign * std::exp(t.logmag - top);
  }
  if (s == 0.0) return {};
  SignedLog out;
  out.sign = s > 0.0 ? 1 : -1;
  out.logmag = top + std::log(std::abs(s));
  return out;
}

// Adaptive Simpson with the usual 1/15 correction; tol is absolute for the
// segment.
double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                            double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

struct SegmentEval {
  double a, b, fa, fm, fb, coarse;
};

// Integral of a nonnegative integrand over [0, T]: dyadic segments capture
// the slowly-decaying tails (the effective range stretches like 1/(1 - p a)),
// extra marks pin known kinks such as factor zero crossings, and each
// segment gets an absolute budget proportional to its coarse share.
double integrate_nonneg(const std::function<double(double)>& f, double T,
                        std::vector<double> marks, double rel_tol) {
  if (!(T > 0.0)) throw std::invalid_argument("integration range must be positive");
  std::vector<double> breaks{0.0};
  for (double b = 1.0; b < T; b *= 2.0) breaks.push_back(b);
  breaks.push_back(T);
  for (double m : marks) {
    if (m > 0.0 && m < T) breaks.push_back(m);
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return y - x < 1e-12 * (1.0 + y); }),
               breaks.end());

  std::vector<SegmentEval> segs;
  segs.reserve(breaks.size());
  double coarse_total = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    SegmentEval s;
    s.a = breaks[i];
    s.b = breaks[i + 1];
    s.fa = f(s.a);
    s.fb = f(s.b);
    s.fm = f(0.5 * (s.a + s.b));
    s.coarse = (s.b - s.a) / 6.0 * (s.fa + 4.0 * s.fm + s.fb);
    coarse_total += std::abs(s.coarse);
    segs.push_back(s);
  }
  if (coarse_total <= 0.0) return 0.0;
  const double tol_total = rel_tol * coarse_total;
  const double nseg = static_cast<double>(segs.size());
  double total = 0.0;
  for (const SegmentEval& s : segs) {
    const double share = 0.5 * (std::abs(s.coarse) / coarse_total + 1.0 / nseg);
    total += adaptive_simpson_rec(f, s.a, s.b, s.fa, s.fm, s.fb, s.coarse, tol_total * share, 48);
  }
  return total;
}

}  // namespace

double RemarkKernelParams::a() const {
  return (1.0 - std::pow(static_cast<double>(n), -p / 2.0)) / p;
}

void RemarkKernelParams::validate() const {
  if (m < 1) throw std::invalid_argument("kernel order must be at least 1");
  if (k < 0 || k > m) throw std::invalid_argument("distinguished level must lie in 0..m");
  if (!(p > 2.0)) throw std::invalid_argument("moment order must exceed 2");
  if (n < 2) throw std::invalid_argument("n must be at least 2");
  const double tilt = a();
  if (!(tilt < 1.0)) {
    throw std::invalid_argument("tilt " + std::to_string(tilt) +
                                " leaves no exponential moment (needs a < 1)");
  }
}

RemarkKernel::RemarkKernel(int m, int k, double a)
    : m_(m), k_(k), a_(a), c_plus_(1.0 / (1.0 - a)), c_minus_(1.0 / (1.0 + a)) {}

RemarkKernel::RemarkKernel(const RemarkKernelParams& params)
    : RemarkKernel(params.m, params.k, (params.validate(), params.a())) {}

RemarkKernel RemarkKernel::with_tilt(int m, int k, double a) {
  if (m < 1) throw std::invalid_argument("kernel order must be at least 1");
  if (k < 0 || k > m) throw std::invalid_argument("distinguished level must lie in 0..m");
  if (!(a >= 0.0 && a < 1.0)) {
    throw std::invalid_argument("tilt must lie in [0, 1) for the factor means to exist");
  }
  return RemarkKernel(m, k, a);
}

double RemarkKernel::f_plus(double x) const { return std::exp(a_ * x) - c_plus_; }

double RemarkKernel::f_minus(double x) const { return std::exp(-a_ * x) - c_minus_; }

double RemarkKernel::log_abs_f_plus(double x) const {
  if (a_ == 0.0) return -kInf;
  const double u = c_plus_ * std::exp(-a_ * x);
  return a_ * x + std::log(std::abs(1.0 - u));
}

int RemarkKernel::sign_f_plus(double x) const {
  if (a_ == 0.0) return 0;
  const double u = c_plus_ * std::exp(-a_ * x);
  if (u == 1.0) return 0;
  return u < 1.0 ? 1 : -1;
}

double RemarkKernel::log_abs_f_minus(double x) const {
  const double v = f_minus(x);
  if (v == 0.0) return -kInf;
  return std::log(std::abs(v));
}

int RemarkKernel::sign_f_minus(double x) const {
  const double v = f_minus(x);
  if (v == 0.0) return 0;
  return v > 0.0 ? 1 : -1;
}

double RemarkKernel::value(const double* xs) const {
  // Coefficient of z^k in prod_i (f-(x_i) + z f+(x_i)), swept in place.
  std::vector<double> coef(k_ + 1, 0.0);
  coef[0] = 1.0;
  for (int i = 0; i < m_; ++i) {
    const double fp = f_plus(xs[i]);
    const double fm = f_minus(xs[i]);
    for (int j = std::min(k_, i + 1); j >= 1; --j) {
      coef[j] = coef[j] * fm + coef[j - 1] * fp;
    }
    coef[0] *= fm;
  }
  return coef[k_];
}

double RemarkKernel::value(const std::vector<double>& xs) const {
  if (static_cast<int>(xs.size()) != m_) {
    throw std::invalid_argument("argument count does not match the kernel order");
  }
  return value(xs.data());
}

SymmetricKernelEvaluator RemarkKernel::evaluator() const {
  SymmetricKernelEvaluator ev;
  ev.order = m_;
  RemarkKernel self = *this;
  ev.eval = [self](const double* xs) { return self.value(xs); };
  SymmetricKernelEvaluator::Factorized fac;
  fac.plus_count = k_;
  fac.f_plus = [self](double x) { return self.f_plus(x); };
  fac.f_minus = [self](double x) { return self.f_minus(x); };
  ev.factorized = fac;
  return ev;
}

DegeneracyProbe remark_degeneracy_probe(const RemarkKernel& kernel, std::uint64_t seed,
                                        std::int64_t n_samples, const McOptions& opt) {
  const int m = kernel.order();
  DegeneracyProbe probe;
  probe.n_samples = n_samples;
  probe.seed = seed;
  const Sampler sampler = Sampler::exponential_rate1();
  // Five pinned points on the diagonal at exponential quantiles; with m = 1
  // nothing can be pinned, so the five become independent replications of
  // the unconditional mean check.
  const double quantiles[] = {0.2, 0.4, 0.6, 0.8, 0.95};
  for (int pt = 0; pt < 5; ++pt) {
    ProbePoint point;
    if (m >= 2) {
      point.fixed.assign(m - 1, -std::log1p(-quantiles[pt]));
    }
    const PhiloxStream stream(seed, static_cast<std::uint64_t>(pt));
    const std::vector<double>& fixed = point.fixed;
    const RemarkKernel& k = kernel;
    McEstimate est = chunked_mc_estimate(
        n_samples, seed, opt, [&stream, &fixed, &k, &sampler](std::uint64_t i) {
          std::vector<double> args = fixed;
          args.push_back(sampler.draw_value(stream, i));
          return k.value(args.data());
        });
    point.mean = est.mean;
    point.std_error = est.std_error;
    if (est.std_error > 0.0) {
      point.z = std::abs(est.mean) / est.std_error;
    } else {
      point.z = est.mean == 0.0 ? 0.0 : kInf;
    }
    probe.max_z = std::max(probe.max_z, point.z);
    probe.points.push_back(std::move(point));
  }
  probe.pass = probe.max_z <= tol::mc_z;
  return probe;
}

RemarkKernel make_remark_kernel(const RemarkKernelParams& params, std::uint64_t probe_seed,
                                std::int64_t probe_samples) {
  RemarkKernel kernel(params);
  DegeneracyProbe probe = remark_degeneracy_probe(kernel, probe_seed, probe_samples);
  if (!probe.pass) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "degeneracy probe rejected the construction: worst |z| = %.3f "
                  "(conditional mean %.6g, std error %.6g)",
                  probe.max_z, probe.points.empty() ? 0.0 : probe.points[0].mean,
                  probe.points.empty() ? 0.0 : probe.points[0].std_error);
    throw std::runtime_error(buf);
  }
  return kernel;
}

namespace {

// log |f_sigma| and sign, sigma = 1 for the growing factor.
SignedLog factor_log(const RemarkKernel& k, int sigma, double x) {
  SignedLog out;
  if (sigma == 1) {
    out.logmag = k.log_abs_f_plus(x);
    out.sign = k.sign_f_plus(x);
  } else {
    out.logmag = k.log_abs_f_minus(x);
    out.sign = k.sign_f_minus(x);
  }
  return out;
}

// Conditional second moment given one pinned argument, as a signed log:
// V_1(x) = sum over head patterns (s, s') of f_s(x) f_s'(x) W(k-s, k-s')
// with W the tail weight over the remaining m-1 coordinates.
SignedLog log_v1(const RemarkKernel& k, const FactorMoments& mu, double x) {
  const int m = k.order();
  const int kk = k.plus_count();
  std::vector<SignedLog> terms;
  for (int s1 = 0; s1 <= 1; ++s1) {
    for (int s2 = 0; s2 <= 1; ++s2) {
      const double w = tail_weight(m - 1, kk - s1, kk - s2, mu);
      if (w == 0.0) continue;
      const SignedLog a = factor_log(k, s1, x);
      const SignedLog b = factor_log(k, s2, x);
      if (a.sign == 0 || b.sign == 0) continue;
      SignedLog t;
      t.logmag = a.logmag + b.logmag + std::log(std::abs(w));
      t.sign = a.sign * b.sign * (w > 0.0 ? 1 : -1);
      terms.push_back(t);
    }
  }
  return signed_log_sum(terms);
}

// Marks for the integrators: zero crossings of the factors.
std::vector<double> crossing_marks(const RemarkKernel& k) {
  std::vector<double> marks;
  const double a = k.tilt();
  if (a > 0.0) {
    marks.push_back(std::log1p(a / (1.0 - a)) / a);  // f+ crossing, log(c+)/a
    marks.push_back(std::log1p(a) / a);              // f- crossing
  }
  return marks;
}

double integration_range(const RemarkKernel& k, double p) {
  // The heaviest integrands decay like e^{-(1 - p a) x}; 40 e-foldings of
  // that rate bound the truncated tail far below the quadrature tolerance.
  const double a = k.tilt();
  double decay = 1.0 - p * a;
  if (!(decay > 0.0)) {
    throw std::domain_error("p-th factor moment diverges: p * tilt = " +
                            std::to_string(p * a) + " is at or above 1");
  }
  return std::max(40.0, 40.0 / decay);
}

// E |f_sigma|^p by 1-d quadrature.
double factor_abs_moment(const RemarkKernel& k, int sigma, double p, double rel_tol) {
  const double T = integration_range(k, p);
  auto f = [&k, sigma, p](double x) {
    const SignedLog fl = factor_log(k, sigma, x);
    if (fl.sign == 0) return 0.0;
    return std::exp(p * fl.logmag - x);
  };
  return integrate_nonneg(f, T, crossing_marks(k), rel_tol);
}

// M_l for m = 2, l = 2, k = 1: genuinely two-dimensional, E |f+(x1) f-(x2)
// + f-(x1) f+(x2)|^p. Inner integral in x2 for pinned x1, adaptive in both.
double cross_abs_moment_2d(const RemarkKernel& k, double p, double rel_tol) {
  const double T = integration_range(k, p);
  const std::vector<double> marks = crossing_marks(k);
  auto inner = [&](double x1) {
    const SignedLog p1 = factor_log(k, 1, x1);
    const SignedLog m1 = factor_log(k, 0, x1);
    auto f2 = [&](double x2) {
      const SignedLog p2 = factor_log(k, 1, x2);
      const SignedLog m2 = factor_log(k, 0, x2);
      std::vector<SignedLog> terms;
      if (p1.sign != 0 && m2.sign != 0) {
        terms.push_back({p1.logmag + m2.logmag, p1.sign * m2.sign});
      }
      if (m1.sign != 0 && p2.sign != 0) {
        terms.push_back({m1.logmag + p2.logmag, m1.sign * p2.sign});
      }
      const SignedLog y = signed_log_sum(terms);
      if (y.sign == 0) return 0.0;
      return std::exp(p * y.logmag - x2);
    };
    return integrate_nonneg(f2, T, marks, rel_tol * 0.05);
  };
  auto outer = [&](double x1) { return inner(x1) * std::exp(-x1); };
  return integrate_nonneg(outer, T, marks, rel_tol * 0.3);
}

}  // namespace

double remark_cond_moment(const RemarkKernel& kernel, int l, double p,
                          const RemarkMomentOptions& opt) {
  const int m = kernel.order();
  const int k = kernel.plus_count();
  if (l < 0 || l > m) throw std::invalid_argument("conditioning level must lie in 0..m");
  if (!(p >= 2.0)) throw std::invalid_argument("moment order must be at least 2");
  const double a = kernel.tilt();
  if (a == 0.0) return 0.0;  // zero kernel

  if (m >= 3) {
    McOptions mco;
    mco.workers = opt.workers;
    mco.eval_budget = 1e12;
    return mc_cond_moment(kernel.evaluator(), Sampler::exponential_rate1(), l, Inner::square,
                          p / 2.0, opt.mc_outer, opt.mc_inner, opt.seed, mco)
        .estimate.mean;
  }

  const FactorMoments mu = factor_moments(a);
  const double half_p = p / 2.0;
  if (l == 0) {
    const double v0 = tail_weight(m, k, k, mu);
    return std::pow(std::max(v0, 0.0), half_p);
  }
  if (l == 1 && m == 2) {
    const double T = integration_range(kernel, p);
    auto f = [&](double x) {
      const SignedLog v = log_v1(kernel, mu, x);
      if (v.sign <= 0) return 0.0;  // conditional second moments are >= 0
      return std::exp(half_p * v.logmag - x);
    };
    return integrate_nonneg(f, T, crossing_marks(kernel), opt.quadrature_tol * 0.25);
  }
  // l == m: the full absolute moment E |Y|^p.
  if (m == 1) {
    return factor_abs_moment(kernel, k == 1 ? 1 : 0, p, opt.quadrature_tol * 0.25);
  }
  // m == 2. Pure-plus and pure-minus kernels factor into 1-d integrals.
  if (k == 0 || k == 2) {
    const double one = factor_abs_moment(kernel, k == 2 ? 1 : 0, p, opt.quadrature_tol * 0.1);
    return one * one;
  }
  return cross_abs_moment_2d(kernel, p, opt.quadrature_tol * 0.25);
}

GrowthResult growth_study(const RemarkKernelParams& base, const std::vector<std::int64_t>& n_grid,
                          const GrowthOptions& opt) {
  if (n_grid.size() < 4) throw std::invalid_argument("growth study needs at least 4 grid points");
  for (std::size_t i = 1; i < n_grid.size(); ++i) {
    if (n_grid[i] <= n_grid[i - 1]) {
      throw std::invalid_argument("n grid must be strictly increasing");
    }
  }
  if (n_grid.front() < 2) throw std::invalid_argument("n grid entries must be at least 2");
  if (n_grid.back() < 10 * n_grid.front()) {
    throw std::invalid_argument("n grid must span at least one decade");
  }
  {
    RemarkKernelParams probe_params = base;
    probe_params.n = n_grid.front();
    probe_params.validate();
  }

  const int m = base.m;
  const int k = base.k;
  const double p = base.p;
  GrowthResult result;
  result.m = m;
  result.k = k;
  result.p = p;
  result.n_grid = n_grid;
  result.exponent_note =
      "levels l <= k are fitted on the n^{(p/2)(m-l)+1} display family (claimed order "
      "p*m/2 + 1); levels l > k on the bound family n^{(p/2)(m-l)+l}; dominance is "
      "judged on the bound family at the largest n";

  const std::size_t grid_size = n_grid.size();
  // moments[l][i] = M_l at n_grid[i]
  std::vector<std::vector<double>> moments(m + 1, std::vector<double>(grid_size, 0.0));

  // Grid points are independent; workers stride over them and write to
  // disjoint slots, so assembly order is fixed regardless of schedule.
  const int workers = std::max(1, std::min<int>(opt.workers, static_cast<int>(grid_size)));
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  auto run_point = [&](std::size_t idx) {
    RemarkKernel kernel = opt.tilt_override
                              ? RemarkKernel::with_tilt(m, k, *opt.tilt_override)
                              : [&] {
                                  RemarkKernelParams params = base;
                                  params.n = n_grid[idx];
                                  return RemarkKernel(params);
                                }();
    DegeneracyProbe probe = remark_degeneracy_probe(
        kernel, opt.seed ^ (0x517cc1b727220a95ULL + idx), opt.probe_samples);
    if (!probe.pass) {
      throw std::runtime_error("degeneracy probe failed at n = " + std::to_string(n_grid[idx]) +
                               ": worst |z| = " + std::to_string(probe.max_z));
    }
    for (int l = 0; l <= m; ++l) {
      RemarkMomentOptions mopt;
      mopt.quadrature_tol = opt.quadrature_tol;
      mopt.mc_outer = opt.mc_outer;
      mopt.mc_inner = opt.mc_inner;
      mopt.seed = opt.seed + 1000003ULL * static_cast<std::uint64_t>(l) + 17ULL * idx;
      mopt.workers = 1;
      moments[l][idx] = remark_cond_moment(kernel, l, p, mopt);
    }
  };
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t idx = w; idx < grid_size; idx += workers) run_point(idx);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  if (moments[0][0] <= 0.0) {
    // M_0 = (E Y^2)^{p/2} vanishes only for the almost-surely-zero kernel;
    // there is no growth order to fit.
    result.degenerate_zero = true;
    return result;
  }

  std::vector<double> ns(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) ns[i] = static_cast<double>(n_grid[i]);
  result.fit_r2 = 1.0;
  for (int l = 0; l <= m; ++l) {
    GrowthTermFit fit;
    fit.l = l;
    fit.m_values = moments[l];
    fit.term.resize(grid_size);
    fit.term_display.resize(grid_size);
    const double bound_expo = (p / 2.0) * (m - l) + l;
    const double display_expo = (p / 2.0) * (m - l) + 1.0;
    for (std::size_t i = 0; i < grid_size; ++i) {
      fit.term[i] = std::pow(ns[i], bound_expo) * moments[l][i];
      fit.term_display[i] = std::pow(ns[i], display_expo) * moments[l][i];
    }
    FitResult bound_fit = fit_loglog(ns, fit.term);
    fit.fitted_slope_bound = bound_fit.slope;
    if (l <= k) {
      FitResult display_fit = fit_loglog(ns, fit.term_display);
      fit.fitted_slope = display_fit.slope;
      fit.r2 = display_fit.r2;
      fit.predicted_exponent = p * m / 2.0 + 1.0;
    } else {
      fit.fitted_slope = bound_fit.slope;
      fit.r2 = bound_fit.r2;
      fit.predicted_exponent = (p / 2.0) * (m + k) - (p / 2.0 - 1.0) * l;
    }
    fit.residual = std::abs(fit.fitted_slope - fit.predicted_exponent);
    result.fit_r2 = std::min(result.fit_r2, fit.r2);
    result.per_l.push_back(std::move(fit));
  }

  result.dominant_l = 0;
  double top = result.per_l[0].term.back();
  for (int l = 1; l <= m; ++l) {
    if (result.per_l[l].term.back() > top) {
      top = result.per_l[l].term.back();
      result.dominant_l = l;
    }
  }
  result.dominant_is_k = result.dominant_l == k;
  return result;
}

void write_growth_csv(const GrowthResult& result, std::ostream& out) {
  out << "l,n,term,log_term\n";
  char buf[96];
  for (const GrowthTermFit& fit : result.per_l) {
    for (std::size_t i = 0; i < result.n_grid.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%d,%lld,%.17g,%.17g\n", fit.l,
                    static_cast<long long>(result.n_grid[i]), fit.term[i],
                    std::log(fit.term[i]));
      out << buf;
    }
  }
}

}  // namespace ustat
