#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "ustat/combinatorics.hpp"
#include "ustat/rng.hpp"

using namespace ustat;

TEST_CASE("binomial matches the Pascal recurrence") {
  CHECK(binomial(0, 0) == 1.0);
  CHECK(binomial(5, 2) == 10.0);
  CHECK(binomial(6, 7) == 0.0);
  CHECK(binomial(6, -1) == 0.0);
  for (int n = 1; n <= 40; ++n) {
    for (int k = 0; k <= n; ++k) {
      CHECK(binomial(n, k) == doctest::Approx(binomial(n - 1, k - 1) + binomial(n - 1, k))
                                  .epsilon(1e-14));
    }
  }
}

TEST_CASE("multinomial and its log agree and validate") {
  CHECK(multinomial(5, {2, 3}) == 10.0);
  CHECK(multinomial(6, {2, 2, 2}) == 90.0);
  CHECK(log_multinomial(6, {2, 2, 2}) == doctest::Approx(std::log(90.0)).epsilon(1e-13));
  CHECK(log_factorial(5) == doctest::Approx(std::log(120.0)).epsilon(1e-13));
  CHECK_THROWS_AS(multinomial(5, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(multinomial(5, {6, -1}), std::invalid_argument);
  CHECK_THROWS_AS(log_factorial(-1), std::invalid_argument);
}

TEST_CASE("pairwise_sum totals match plain accumulation") {
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(pairwise_sum(std::vector<double>{3.5}) == 3.5);

  PhiloxStream stream(11, 0);
  std::vector<double> v(1237);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = stream.uniform01(i) - 0.5;
  const double plain = std::accumulate(v.begin(), v.end(), 0.0);
  CHECK(pairwise_sum(v) == doctest::Approx(plain).epsilon(1e-12));
}

TEST_CASE("ChunkedAccumulator is a pure function of values and chunk size") {
  PhiloxStream stream(12, 0);
  std::vector<double> v(10000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = stream.uniform01(i);

  ChunkedAccumulator acc(256);
  for (double x : v) acc.push(x);
  CHECK(acc.count() == v.size());

  // Manual reconstruction: pairwise over each 256-slice, then pairwise over
  // the partials, must reproduce the accumulator bit for bit.
  std::vector<double> partials;
  for (std::size_t start = 0; start < v.size(); start += 256) {
    const std::size_t len = std::min<std::size_t>(256, v.size() - start);
    partials.push_back(pairwise_sum(v.data() + start, len));
  }
  CHECK(acc.total() == ChunkedAccumulator::reduce_chunks(partials));
  CHECK(acc.total() == doctest::Approx(std::accumulate(v.begin(), v.end(), 0.0)).epsilon(1e-12));
  CHECK_THROWS_AS(ChunkedAccumulator(0), std::invalid_argument);
}

TEST_CASE("MultisetIndexer ranks round-trip and count the right classes") {
  for (int m : {1, 2, 3}) {
    for (int s : {1, 2, 4}) {
      MultisetIndexer idx(m, s);
      CHECK(idx.count() == binomial(m + s - 1, s - 1));
      double mult_total = 0.0;
      for (std::int64_t r = 0; r < idx.count(); ++r) {
        CHECK(idx.rank_of_counts(idx.counts_at(r)) == r);
        CHECK(idx.rank_of_sorted(idx.sorted_tuple_at(r)) == r);
        mult_total += idx.multiplicity(r);
      }
      // Ordered tuples partition into multisets: multiplicities sum to s^m.
      CHECK(mult_total == doctest::Approx(std::pow(s, m)).epsilon(1e-13));
    }
  }
  MultisetIndexer idx(2, 2);
  CHECK_THROWS_AS(idx.rank_of_counts({1, 2}), std::out_of_range);
  CHECK_THROWS_AS(idx.rank_of_sorted({0, 2}), std::out_of_range);
  CHECK_THROWS_AS(MultisetIndexer(2, 0), std::invalid_argument);
}

TEST_CASE("ordered tuple enumeration visits s^m tuples in lexicographic order") {
  std::vector<std::vector<int>> seen;
  for_each_ordered_tuple(3, 2, [&](const std::vector<int>& t) { seen.push_back(t); });
  REQUIRE(seen.size() == 9);
  CHECK(seen.front() == std::vector<int>{0, 0});
  CHECK(seen.back() == std::vector<int>{2, 2});
  for (std::size_t i = 1; i < seen.size(); ++i) CHECK(seen[i - 1] < seen[i]);
}

TEST_CASE("submultiset enumeration satisfies Vandermonde counting") {
  // counts (2,3,1): the ways to choose j elements must total C(6, j).
  const std::vector<int> counts{2, 3, 1};
  for (int j = 0; j <= 6; ++j) {
    double ways = 0.0;
    for_each_submultiset(counts, j, [&](const std::vector<int>& sub, double w) {
      int size = 0;
      for (int c : sub) size += c;
      CHECK(size == j);
      ways += w;
    });
    CHECK(ways == doctest::Approx(binomial(6, j)).epsilon(1e-13));
  }
}

TEST_CASE("composition enumeration is lexicographic and complete") {
  std::vector<std::int64_t> c;
  first_composition(5, 3, c);
  CHECK(c == std::vector<std::int64_t>{0, 0, 5});
  std::int64_t visited = 0;
  std::vector<std::int64_t> prev;
  do {
    std::int64_t total = 0;
    for (std::int64_t part : c) total += part;
    CHECK(total == 5);
    if (visited > 0) CHECK(prev < c);
    prev = c;
    ++visited;
  } while (next_composition(c));
  CHECK(visited == 21);
  CHECK(composition_count(5, 3) == 21.0);
  CHECK(prev == std::vector<std::int64_t>{5, 0, 0});
  CHECK_THROWS_AS(first_composition(3, 0, c), std::invalid_argument);
}
