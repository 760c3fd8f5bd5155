#include "ustat/constants_study.hpp"

#include <stdexcept>

#include "ustat/tolerances.hpp"

namespace ustat {

ConstantsResult estimate_constants(const std::vector<CorpusMember>& corpus, int theorem, double p,
                                   const std::vector<std::int64_t>& n_grid,
                                   const OracleOptions& opt) {
  if (corpus.empty()) throw std::invalid_argument("constants estimation needs a nonempty corpus");
  if (theorem < 1 || theorem > 3) throw std::invalid_argument("theorem must be 1, 2, or 3");
  const int m = corpus.front().kernel.order();
  for (const CorpusMember& member : corpus) {
    if (member.kernel.order() != m) {
      throw std::invalid_argument("corpus orders are mixed: '" + member.id + "' has order " +
                                  std::to_string(member.kernel.order()) + ", expected " +
                                  std::to_string(m));
    }
    if (member.kernel.is_zero()) {
      throw std::invalid_argument("corpus member '" + member.id +
                                  "' is the zero kernel; its bound ratio is undefined");
    }
    if (theorem == 1) {
      if (member.kernel.min_entry() < 0.0) {
        throw std::invalid_argument("corpus member '" + member.id +
                                    "' has negative values; the nonnegative bound does not apply");
      }
    } else {
      const double resid = check_degeneracy(member.kernel, member.dist);
      if (resid > tol::equality) {
        throw std::invalid_argument("corpus member '" + member.id +
                                    "' is not degenerate (residual " + std::to_string(resid) +
                                    "); the degenerate bound does not apply");
      }
    }
  }

  ConstantsResult result;
  result.theorem = theorem;
  result.p = p;
  result.m = m;
  bool first = true;
  for (const CorpusMember& member : corpus) {
    BoundReport report;
    switch (theorem) {
      case 1:
        report = verify_theorem1(member.kernel, member.dist, n_grid, p, opt);
        break;
      case 2:
        report = verify_theorem2(member.kernel, member.dist, n_grid, p, opt);
        break;
      default:
        report = verify_theorem3(member.kernel, member.dist, n_grid, p, opt);
        break;
    }
    for (const BoundRow& row : report.rows) {
      if (first || row.ratio < result.ratio_inf) {
        result.ratio_inf = row.ratio;
        result.witness_inf = {member.id, row.n, row.ratio};
      }
      if (first || row.ratio > result.ratio_sup) {
        result.ratio_sup = row.ratio;
        result.witness_sup = {member.id, row.n, row.ratio};
      }
      first = false;
    }
  }
  return result;
}

}  // namespace ustat
