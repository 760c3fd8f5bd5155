#include "ustat/hoeffding.hpp"

#include <algorithm>
#include <cmath>

namespace ustat {

ProjectionSet hoeffding_project(const KernelTable& kernel, const FiniteDistribution& dist) {
  const int m = kernel.order();
  const int s = dist.size();

  // h[j](y_1..y_j) = E Y(y_1..y_j, X_{j+1}..X_m): integrate out one argument
  // at a time from the full kernel down to the grand mean.
  std::vector<KernelTable> h;  // orders m, m-1, ..., 1 (reversed below)
  h.push_back(kernel);
  for (int order = m; order >= 2; --order)
    h.push_back(conditional_mean_table(h.back(), dist));
  std::reverse(h.begin(), h.end());  // h[j-1] now has order j
  const double h0 = kernel_mean(h.front(), dist);

  std::vector<KernelTable> components;
  components.reserve(m);
  for (int k = 1; k <= m; ++k) {
    components.push_back(KernelTable::from_function(k, s, [&](const std::vector<int>& tuple) {
      std::vector<int> counts(s, 0);
      for (int v : tuple) ++counts[v];
      double acc = (k % 2 == 0 ? 1.0 : -1.0) * h0;  // j = 0 term
      for (int j = 1; j <= k; ++j) {
        const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
        const KernelTable& hj = h[j - 1];
        for_each_submultiset(counts, j, [&](const std::vector<int>& sub, double ways) {
          acc += sign * ways * hj.value_by_counts(sub);
        });
      }
      return acc;
    }));
  }
  return ProjectionSet{h0, std::move(components), kernel, dist};
}

double reconstruction_residual(const ProjectionSet& proj) {
  const int m = proj.base.order();
  const int s = proj.base.alphabet();
  double residual = 0.0;
  for_each_ordered_tuple(s, m, [&](const std::vector<int>& t) {
    double sum = proj.g0;
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      std::vector<int> sub;
      for (int i = 0; i < m; ++i)
        if (mask & (1u << i)) sub.push_back(t[i]);
      std::sort(sub.begin(), sub.end());
      sum += proj.component(static_cast<int>(sub.size())).eval_sorted(sub);
    }
    residual = std::max(residual, std::abs(proj.base.eval_ordered(t) - sum));
  });
  return residual;
}

double max_component_degeneracy(const ProjectionSet& proj) {
  double worst = 0.0;
  for (const KernelTable& g : proj.components)
    worst = std::max(worst, check_degeneracy(g, proj.law));
  return worst;
}

}  // namespace ustat
