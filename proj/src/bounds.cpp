#include "ustat/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

#include "ustat/combinatorics.hpp"
#include "ustat/tolerances.hpp"

namespace ustat {

namespace {

void check_grid(const std::vector<std::int64_t>& n_grid, int m) {
  if (n_grid.empty()) throw std::invalid_argument("n grid is empty");
  std::int64_t prev = 0;
  for (std::int64_t n : n_grid) {
    if (n < m) {
      throw std::invalid_argument("n grid entry " + std::to_string(n) +
                                  " is below the kernel order " + std::to_string(m));
    }
    if (n <= prev) throw std::invalid_argument("n grid must be strictly increasing");
    prev = n;
  }
}

BoundTerms assemble_terms(const KernelTable& kernel, const FiniteDistribution& dist,
                          std::int64_t n, double p, Inner inner, double inner_power,
                          double level_weight) {
  const int m = kernel.order();
  BoundTerms out;
  out.n = n;
  out.p = p;
  out.terms.resize(m + 1);
  out.exponents.resize(m + 1);
  for (int k = 0; k <= m; ++k) {
    const double expo = level_weight * static_cast<double>(m - k) + static_cast<double>(k);
    out.exponents[k] = expo;
    out.terms[k] = std::pow(static_cast<double>(n), expo) *
                   cond_moment(kernel, dist, k, inner, inner_power);
  }
  out.argmax_k = 0;
  out.max_value = out.terms[0];
  for (int k = 1; k <= m; ++k) {
    if (out.terms[k] > out.max_value) {
      out.max_value = out.terms[k];
      out.argmax_k = k;
    }
  }
  return out;
}

void fill_ratio_stats(BoundReport& rep) {
  std::vector<double> ns, ratios;
  rep.ratio_min = std::numeric_limits<double>::infinity();
  rep.ratio_max = -std::numeric_limits<double>::infinity();
  for (const BoundRow& row : rep.rows) {
    rep.ratio_min = std::min(rep.ratio_min, row.ratio);
    rep.ratio_max = std::max(rep.ratio_max, row.ratio);
    if (row.ratio > 0.0) {
      ns.push_back(static_cast<double>(row.n));
      ratios.push_back(row.ratio);
    }
  }
  if (ns.size() >= 2) {
    FitResult fit = fit_loglog(ns, ratios);
    rep.slope_of_log_ratio = fit.slope;
    rep.fit_r2 = fit.r2;
  } else {
    rep.slope_of_log_ratio = 0.0;
    rep.fit_r2 = std::numeric_limits<double>::quiet_NaN();
  }
}

double normalized_slack(double exact, double bound) {
  return (exact - bound) / std::max(1.0, std::abs(bound));
}

}  // namespace

BoundTerms nonnegative_bound_terms(const KernelTable& kernel, const FiniteDistribution& dist,
                                   std::int64_t n, double p) {
  if (kernel.min_entry() < 0.0) {
    throw std::invalid_argument("nonnegative bound needs a nonnegative kernel; min entry is " +
                                std::to_string(kernel.min_entry()));
  }
  if (p < 1.0) throw std::invalid_argument("nonnegative bound needs p >= 1");
  if (n < kernel.order()) throw std::invalid_argument("n is below the kernel order");
  return assemble_terms(kernel, dist, n, p, Inner::identity, p, p);
}

BoundTerms degenerate_bound_terms(const KernelTable& kernel, const FiniteDistribution& dist,
                                  std::int64_t n, double p) {
  if (p < 2.0) throw std::invalid_argument("degenerate bound needs p >= 2");
  if (n < kernel.order()) throw std::invalid_argument("n is below the kernel order");
  const double resid = check_degeneracy(kernel, dist);
  if (resid > tol::equality) {
    throw std::invalid_argument("degenerate bound needs a degenerate kernel; residual " +
                                std::to_string(resid));
  }
  return assemble_terms(kernel, dist, n, p, Inner::square, p / 2.0, p / 2.0);
}

FitResult fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("log-log fit needs two matching samples or more");
  }
  const auto n = static_cast<Eigen::Index>(x.size());
  Eigen::MatrixXd design(n, 2);
  Eigen::VectorXd rhs(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (x[i] <= 0.0 || y[i] <= 0.0) {
      throw std::invalid_argument("log-log fit needs positive samples");
    }
    design(i, 0) = 1.0;
    design(i, 1) = std::log(x[i]);
    rhs[i] = std::log(y[i]);
  }
  Eigen::Vector2d coef = design.colPivHouseholderQr().solve(rhs);
  FitResult fit;
  fit.intercept = coef[0];
  fit.slope = coef[1];
  const double mean = rhs.mean();
  const double ss_tot = (rhs.array() - mean).square().sum();
  const double ss_res = (rhs - design * coef).squaredNorm();
  fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

BoundReport verify_theorem1(const KernelTable& kernel, const FiniteDistribution& dist,
                            const std::vector<std::int64_t>& n_grid, double p,
                            const OracleOptions& opt) {
  const int m = kernel.order();
  check_grid(n_grid, m);
  if (p < 1.0) throw std::invalid_argument("nonnegative bound needs p >= 1");
  if (kernel.min_entry() < 0.0) {
    throw std::invalid_argument("nonnegative bound needs a nonnegative kernel");
  }
  BoundReport rep;
  rep.theorem = 1;
  rep.m = m;
  rep.p = p;
  if (kernel.is_zero()) {
    rep.trivial_zero = true;
    return rep;
  }
  const double mean_y = kernel_mean(kernel, dist);
  const double abs_p = kernel_abs_moment(kernel, dist, p);
  double min_slack_mean = std::numeric_limits<double>::infinity();
  double min_slack_sum = std::numeric_limits<double>::infinity();
  for (std::int64_t n : n_grid) {
    BoundRow row;
    row.n = n;
    row.exact_moment = exact_Tn_moment(kernel, dist, n, p, true, opt).value;
    row.bound_value = nonnegative_bound_terms(kernel, dist, n, p).max_value;
    row.ratio = row.exact_moment / row.bound_value;
    const double combos = binomial(n, m);
    row.lower_mean_power = std::pow(combos * mean_y, p);
    row.lower_moment_sum = combos * abs_p;
    row.slack_mean_power = normalized_slack(row.exact_moment, *row.lower_mean_power);
    row.slack_moment_sum = normalized_slack(row.exact_moment, *row.lower_moment_sum);
    min_slack_mean = std::min(min_slack_mean, *row.slack_mean_power);
    min_slack_sum = std::min(min_slack_sum, *row.slack_moment_sum);
    rep.rows.push_back(row);
  }
  rep.min_slack_mean_power = min_slack_mean;
  rep.min_slack_moment_sum = min_slack_sum;
  fill_ratio_stats(rep);
  return rep;
}

namespace {

// Shared implementation for the two degenerate-kernel reports; theorem 3
// swaps the max-type bound for the sum-of-squares expression and records the
// max-type value per row for the envelope of the pair.
BoundReport verify_degenerate(const KernelTable& kernel, const FiniteDistribution& dist,
                              const std::vector<std::int64_t>& n_grid, double p,
                              const OracleOptions& opt, bool sum_of_squares) {
  const int m = kernel.order();
  check_grid(n_grid, m);
  if (p < 2.0) throw std::invalid_argument("degenerate bound needs p >= 2");
  const double resid = check_degeneracy(kernel, dist);
  if (resid > tol::equality) {
    throw std::invalid_argument("degenerate bound needs a degenerate kernel; residual " +
                                std::to_string(resid));
  }
  BoundReport rep;
  rep.theorem = sum_of_squares ? 3 : 2;
  rep.m = m;
  rep.p = p;
  if (kernel.is_zero()) {
    rep.trivial_zero = true;
    return rep;
  }
  const double mean_sq = kernel_abs_moment(kernel, dist, 2.0);
  double orth_dev = 0.0;
  double pair_min = std::numeric_limits<double>::infinity();
  double pair_max = -std::numeric_limits<double>::infinity();
  for (std::int64_t n : n_grid) {
    BoundRow row;
    row.n = n;
    row.exact_moment = exact_Tn_moment(kernel, dist, n, p, true, opt).value;
    const double levelwise = degenerate_bound_terms(kernel, dist, n, p).max_value;
    if (sum_of_squares) {
      row.bound_value = exact_sumsq_moment(kernel, dist, n, p, opt);
      row.levelwise_bound = levelwise;
      row.sumsq_over_levelwise = row.bound_value / levelwise;
      pair_min = std::min(pair_min, *row.sumsq_over_levelwise);
      pair_max = std::max(pair_max, *row.sumsq_over_levelwise);
    } else {
      row.bound_value = levelwise;
    }
    row.ratio = row.exact_moment / row.bound_value;
    if (p == 2.0) {
      const double expect = binomial(n, m) * mean_sq;
      const double second = exact_Tn_moment(kernel, dist, n, 2.0, true, opt).value;
      orth_dev = std::max(orth_dev, std::abs(second - expect) / expect);
    }
    rep.rows.push_back(row);
  }
  if (p == 2.0) rep.orthogonality_max_rel_dev = orth_dev;
  if (sum_of_squares) {
    rep.sumsq_ratio_min = pair_min;
    rep.sumsq_ratio_max = pair_max;
  }
  fill_ratio_stats(rep);
  return rep;
}

}  // namespace

BoundReport verify_theorem2(const KernelTable& kernel, const FiniteDistribution& dist,
                            const std::vector<std::int64_t>& n_grid, double p,
                            const OracleOptions& opt) {
  return verify_degenerate(kernel, dist, n_grid, p, opt, false);
}

BoundReport verify_theorem3(const KernelTable& kernel, const FiniteDistribution& dist,
                            const std::vector<std::int64_t>& n_grid, double p,
                            const OracleOptions& opt) {
  return verify_degenerate(kernel, dist, n_grid, p, opt, true);
}

Lemma2Slacks lemma2_check(const SequenceFamily& seq, double gamma, double s, double p) {
  if (seq.members.empty()) throw std::invalid_argument("sequence family is empty");
  if (gamma < 1.0) throw std::invalid_argument("sequence-moment check needs gamma >= 1");
  if (p <= gamma) throw std::invalid_argument("sequence-moment check needs p > gamma");
  if (s < 0.0) throw std::invalid_argument("sequence-moment check needs s >= 0");
  for (const FiniteDistribution& d : seq.members) {
    if (!d.nonnegative_values()) {
      throw std::invalid_argument("sequence family members must have nonnegative values");
    }
  }
  const auto moment_sum = [&seq](double r) {
    std::vector<double> vals;
    vals.reserve(seq.members.size());
    for (const FiniteDistribution& d : seq.members) vals.push_back(d.moment(r));
    return pairwise_sum(vals);
  };
  const double a_p = moment_sum(p);
  const double b = std::pow(moment_sum(gamma), 1.0 / gamma);
  Lemma2Slacks out;
  if (gamma < s && s < p) {
    const double a_s = moment_sum(s);
    const double interp =
        std::pow(std::pow(a_p, s - gamma) * std::pow(b, gamma * (p - s)), 1.0 / (p - gamma));
    out.interpolation = interp - a_s;
    const double lhs3 = std::max(a_s, std::pow(b, s));
    const double rhs3 = std::pow(std::max(a_p, std::pow(b, p)), s / p);
    out.max_power = rhs3 - lhs3;
  }
  const double rhs2 = std::max(moment_sum(p + s), std::pow(b, p + s));
  out.product_bound = rhs2 - a_p * std::pow(b, s);
  return out;
}

double ineq7_check(const KernelTable& kernel, const FiniteDistribution& dist, std::int64_t n,
                   int k, int l, double s) {
  const int m = kernel.order();
  if (kernel.min_entry() < 0.0) {
    throw std::invalid_argument("cross-level bound needs a nonnegative kernel");
  }
  if (k < 0 || k > m || l < 0 || l > m) {
    throw std::invalid_argument("conditioning levels must lie in 0..m");
  }
  if (s < 1.0) throw std::invalid_argument("cross-level bound needs s >= 1");
  if (n < m) throw std::invalid_argument("n is below the kernel order");
  const double dn = static_cast<double>(n);
  const double mk_s = cond_moment(kernel, dist, k, Inner::identity, s);
  const double ml_s = cond_moment(kernel, dist, l, Inner::identity, s);
  const double lhs =
      std::pow(dn, k + l + s * (2.0 * m - k - l)) * mk_s * ml_s;
  const double mean_y = kernel_mean(kernel, dist);
  const double rhs = std::max({
      std::pow(dn, k + 2.0 * s * (m - k)) * cond_moment(kernel, dist, k, Inner::identity, 2.0 * s),
      std::pow(dn, l + 2.0 * s * (m - l)) * cond_moment(kernel, dist, l, Inner::identity, 2.0 * s),
      std::pow(dn, 2.0 * s * m) * std::pow(mean_y, 2.0 * s),
  });
  if (rhs == 0.0) return 0.0;
  return lhs / rhs;
}

}  // namespace ustat
