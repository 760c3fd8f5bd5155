#include <doctest.h>

#include <algorithm>
#include <stdexcept>
#include <string>

#include "corpus.hpp"
#include "ustat/constants_study.hpp"

using namespace ustat;
using namespace ustat::testing;

namespace {

std::vector<CorpusMember> as_members(const std::vector<NamedKernel>& source) {
  std::vector<CorpusMember> corpus;
  for (const NamedKernel& member : source) {
    corpus.push_back({member.id, member.kernel, member.dist});
  }
  return corpus;
}

std::vector<CorpusMember> nonneg_m2() {
  std::vector<CorpusMember> corpus = as_members(nonnegative_corpus());
  corpus.erase(std::remove_if(corpus.begin(), corpus.end(),
                              [](const CorpusMember& m) { return m.kernel.order() != 2; }),
               corpus.end());
  return corpus;
}

}  // namespace

TEST_CASE("the envelope brackets every witnessed ratio") {
  const std::vector<std::int64_t> grid{3, 4, 5, 6};
  const ConstantsResult res = estimate_constants(nonneg_m2(), 1, 2.0, grid);
  CHECK(res.theorem == 1);
  CHECK(res.m == 2);
  CHECK(res.ratio_inf > 0.0);
  CHECK(res.ratio_inf <= res.ratio_sup);
  CHECK(res.witness_inf.ratio == res.ratio_inf);
  CHECK(res.witness_sup.ratio == res.ratio_sup);
  const auto in_grid = [&](std::int64_t n) {
    return std::find(grid.begin(), grid.end(), n) != grid.end();
  };
  CHECK(in_grid(res.witness_inf.n));
  CHECK(in_grid(res.witness_sup.n));
}

TEST_CASE("degenerate-corpus envelopes contain the frozen spot ratio") {
  const std::vector<std::int64_t> grid{3, 4, 5, 6};
  const ConstantsResult res = estimate_constants(as_members(degenerate_corpus()), 2, 4.0, grid);
  // The Rademacher product at n = 3 contributes exactly 21/81.
  CHECK(res.ratio_inf <= 21.0 / 81.0 + 1e-12);
  CHECK(res.ratio_sup >= 21.0 / 81.0 - 1e-12);
  CHECK((res.witness_inf.kernel_id == "rademacher_product" ||
         res.witness_inf.kernel_id == "centered_bernoulli_g2"));

  const ConstantsResult sumsq = estimate_constants(as_members(degenerate_corpus()), 3, 4.0, grid);
  CHECK(sumsq.theorem == 3);
  CHECK(sumsq.ratio_inf <= sumsq.ratio_sup);
}

TEST_CASE("hypothesis violations are rejected with the offending id") {
  const std::vector<std::int64_t> grid{3, 4, 5};
  const auto throws_mentioning = [&](const std::vector<CorpusMember>& corpus, int theorem,
                                     const char* needle) {
    try {
      estimate_constants(corpus, theorem, 2.0, grid);
      FAIL_CHECK("expected invalid_argument mentioning " << needle);
    } catch (const std::invalid_argument& e) {
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };

  throws_mentioning(as_members(full_corpus()), 1, "const1_m3");       // mixed order
  throws_mentioning(as_members(degenerate_corpus()), 1, "rademacher_product");  // signed
  throws_mentioning(nonneg_m2(), 2, "const1_m2");                     // not degenerate

  std::vector<CorpusMember> with_zero = nonneg_m2();
  with_zero.push_back({"zero", constant_kernel(2, bernoulli_law(), 0.0), bernoulli_law()});
  throws_mentioning(with_zero, 1, "zero");

  CHECK_THROWS_AS(estimate_constants({}, 1, 2.0, grid), std::invalid_argument);
  CHECK_THROWS_AS(estimate_constants(nonneg_m2(), 5, 2.0, grid), std::invalid_argument);
}
