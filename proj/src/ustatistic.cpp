#include "ustat/ustatistic.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "ustat/tolerances.hpp"

namespace ustat {

double evaluate_U_counts(const KernelTable& kernel, const std::vector<std::int64_t>& counts) {
  const MultisetIndexer& index = kernel.index();
  if (static_cast<int>(counts.size()) != index.alphabet())
    throw std::invalid_argument("evaluate_U: count vector does not match alphabet");
  const std::int64_t n = std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
  if (n < kernel.order()) throw std::invalid_argument("evaluate_U: sample shorter than kernel order");
  double total = 0.0;
  for (std::int64_t rank = 0; rank < index.count(); ++rank) {
    const std::vector<int>& kappa = index.counts_at(rank);
    double ways = 1.0;
    for (std::size_t j = 0; j < counts.size() && ways != 0.0; ++j)
      ways *= binomial(counts[j], kappa[j]);
    if (ways != 0.0) total += ways * kernel.value_at(rank);
  }
  return total;
}

double evaluate_U(const KernelTable& kernel, const std::vector<int>& sample) {
  std::vector<std::int64_t> counts(kernel.alphabet(), 0);
  for (int v : sample) {
    if (v < 0 || v >= kernel.alphabet())
      throw std::invalid_argument("evaluate_U: sample index outside alphabet");
    ++counts[v];
  }
  return evaluate_U_counts(kernel, counts);
}

double martingale_term(const KernelTable& kernel, const FiniteDistribution& dist, int n, int i_m) {
  const int m = kernel.order();
  if (i_m < m || i_m > n)
    throw std::invalid_argument("martingale_term: need m <= i_m <= n");
  const double degeneracy = check_degeneracy(kernel, dist);
  if (degeneracy > tol::equality) {
    std::ostringstream os;
    os << "martingale_term: kernel is not degenerate (residual " << degeneracy << ")";
    throw std::invalid_argument(os.str());
  }
  if (m == 1) return std::abs(kernel_mean(kernel, dist));

  // Conditioning on all of X_1..X_{i_m-1} and integrating out X_{i_m} turns
  // each summand into the conditional-mean kernel of order m-1; the sum over
  // (m-1)-subsets of a fixed assignment depends only on its count vector.
  const KernelTable h = conditional_mean_table(kernel, dist);
  const int s = dist.size();
  double residual = 0.0;
  std::vector<std::int64_t> c;
  first_composition(i_m - 1, s, c);
  do {
    residual = std::max(residual, std::abs(evaluate_U_counts(h, c)));
  } while (next_composition(c));
  return residual;
}

}  // namespace ustat
