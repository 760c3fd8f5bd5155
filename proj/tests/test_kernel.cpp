#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "corpus.hpp"
#include "ustat/kernel.hpp"

using namespace ustat;
using namespace ustat::testing;

TEST_CASE("tables are symmetric by construction") {
  const KernelTable prod = product_kernel(2, rademacher_law());
  CHECK(prod.eval_ordered({0, 1}) == prod.eval_ordered({1, 0}));
  CHECK(prod.eval_ordered({0, 0}) == 1.0);
  CHECK(prod.eval_ordered({0, 1}) == -1.0);
  CHECK(prod.eval_ordered({1, 1}) == 1.0);
  CHECK(prod.value_by_counts({1, 1}) == -1.0);
  CHECK(prod.eval_sorted({0, 1}) == -1.0);
}

TEST_CASE("check_symmetry certifies symmetric functions and flags asymmetric ones") {
  const auto symmetric = [](const std::vector<int>& t) {
    return static_cast<double>(t[0] + t[1] + t[0] * t[1]);
  };
  const auto asymmetric = [](const std::vector<int>& t) { return static_cast<double>(t[0]); };
  CHECK(check_symmetry(symmetric, 2, 3) == 0.0);
  CHECK(check_symmetry(asymmetric, 2, 3) > 0.0);
}

TEST_CASE("kernel means and absolute moments") {
  CHECK(kernel_mean(product_kernel(2, rademacher_law()), rademacher_law()) ==
        doctest::Approx(0.0).epsilon(1e-15));
  CHECK(kernel_mean(product_kernel(2, bernoulli_law()), bernoulli_law()) ==
        doctest::Approx(0.25).epsilon(1e-15));
  CHECK(kernel_mean(sum_power_kernel(2, bernoulli_law(), 2.0), bernoulli_law()) ==
        doctest::Approx(1.5).epsilon(1e-15));
  // |Y| = 1 surely for the Rademacher product, any exponent.
  for (double p : {1.0, 2.5, 4.0}) {
    CHECK(kernel_abs_moment(product_kernel(2, rademacher_law()), rademacher_law(), p) ==
          doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(kernel_abs_moment(product_kernel(2, bernoulli_law()), bernoulli_law(), 3.0) ==
        doctest::Approx(0.25).epsilon(1e-15));
}

TEST_CASE("conditional mean table lowers the order by one") {
  const FiniteDistribution ber = bernoulli_law();
  const KernelTable cond = conditional_mean_table(product_kernel(2, ber), ber);
  CHECK(cond.order() == 1);
  CHECK(cond.eval_sorted({0}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(cond.eval_sorted({1}) == doctest::Approx(0.5).epsilon(1e-15));

  const FiniteDistribution rad = rademacher_law();
  const KernelTable cond_rad = conditional_mean_table(product_kernel(2, rad), rad);
  CHECK(cond_rad.max_abs_entry() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("degeneracy residuals separate canonical from plain kernels") {
  CHECK(check_degeneracy(product_kernel(2, rademacher_law()), rademacher_law()) <= 1e-15);
  CHECK(check_degeneracy(centered_product_kernel(2, bernoulli_law()), bernoulli_law()) <=
        1e-15);
  CHECK(check_degeneracy(centered_product_kernel(3, signed_three_point_law()),
                         signed_three_point_law()) <= 1e-14);
  CHECK(check_degeneracy(product_kernel(2, bernoulli_law()), bernoulli_law()) ==
        doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("squared and scaled views act entrywise") {
  const KernelTable g2 = centered_product_kernel(2, bernoulli_law());
  const KernelTable sq = g2.squared();
  const KernelTable half = g2.scaled(0.5);
  for (std::int64_t r = 0; r < g2.index().count(); ++r) {
    CHECK(sq.value_at(r) == doctest::Approx(g2.value_at(r) * g2.value_at(r)).epsilon(1e-15));
    CHECK(half.value_at(r) == doctest::Approx(0.5 * g2.value_at(r)).epsilon(1e-15));
  }
  CHECK(sq.is_nonnegative());
  CHECK_FALSE(g2.is_nonnegative());
  CHECK(g2.scaled(0.0).is_zero());
  CHECK(constant_kernel(2, bernoulli_law(), 3.0).is_constant());
  CHECK_FALSE(g2.is_constant());
}

TEST_CASE("multiset weights form a probability distribution over count classes") {
  for (int n : {1, 3, 5}) {
    const FiniteDistribution tri = three_point_law();
    MultisetIndexer idx(n, tri.size());
    double total = 0.0;
    for (std::int64_t r = 0; r < idx.count(); ++r) total += multiset_weight(idx, r, tri);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
  }
}
