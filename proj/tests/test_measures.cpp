#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "topstab/measures.hpp"
#include "topstab/rng.hpp"

using namespace topstab;

namespace {

// Hand-expanded KL terms: M = (0.75, 0.25).
double jss_oracle_10_vs_half() {
  const double kl_p = std::log2(1.0 / 0.75);
  const double kl_q = 0.5 * std::log2(0.5 / 0.75) + 0.5 * std::log2(0.5 / 0.25);
  return 1.0 - std::sqrt(0.5 * kl_p + 0.5 * kl_q);
}

std::vector<double> random_simplex(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = -std::log(rng.uniform_open_zero());
  const double s = std::accumulate(v.begin(), v.end(), 0.0);
  for (auto& x : v) x /= s;
  return v;
}

TopNList random_list(Rng& rng, std::size_t n, std::size_t universe) {
  std::vector<TermId> all(universe);
  std::iota(all.begin(), all.end(), 0);
  shuffle_in_place(all, rng);
  all.resize(n);
  return TopNList(all);
}

}  // namespace

TEST_CASE("jss examples") {
  const std::vector<double> a{1.0, 0.0}, b{0.0, 1.0}, h{0.5, 0.5};
  CHECK(jss(a, a) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(jss(a, b) == doctest::Approx(0.0));
  CHECK(jss_oracle_10_vs_half() == doctest::Approx(0.44207).epsilon(1e-5));
  CHECK(std::abs(jss(a, h) - jss_oracle_10_vs_half()) < 1e-12);
  CHECK(jensen_shannon_divergence(a, h) == doctest::Approx(0.3112781).epsilon(1e-6));
}

TEST_CASE("jss rejects invalid inputs") {
  const std::vector<double> a{1.0, 0.0}, c{0.2, 0.3, 0.5}, bad{0.7, 0.7};
  CHECK_THROWS_AS(jss(a, c), std::invalid_argument);
  CHECK_THROWS_AS(jss(a, bad), std::invalid_argument);
}

TEST_CASE("jis examples") {
  const TopNList a({0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
  const TopNList b({5, 6, 7, 8, 9, 10, 11, 12, 13, 14});
  const TopNList c({10, 11, 12, 13, 14, 15, 16, 17, 18, 19});
  const TopNList a_rev({9, 8, 7, 6, 5, 4, 3, 2, 1, 0});
  CHECK(jis(a, a) == 1.0);
  CHECK(jis(a, a_rev) == 1.0);
  CHECK(jis(a, c) == 0.0);
  CHECK(jis(a, b) == 1.0 / 3.0);
}

TEST_CASE("rbo examples") {
  const TopNList ab({0, 1}), ba({1, 0}), cd({2, 3});
  CHECK(std::abs(rbo(ab, ba, 0.9) - 0.90) < 1e-12);
  CHECK(rbo(ab, ab, 0.3) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(rbo(ab, cd, 0.9) == 0.0);
  CHECK_THROWS_AS(rbo(ab, ba, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(rbo(ab, ba, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(rbo(ab, TopNList({0, 1, 2}), 0.9), std::invalid_argument);
}

TEST_CASE("top_n examples") {
  CHECK(top_n(std::vector<double>{0.5, 0.3, 0.2}, 2) == TopNList({0, 1}));
  CHECK(top_n(std::vector<double>{0.4, 0.4, 0.2}, 1) == TopNList({0}));
  CHECK(top_n(std::vector<double>(5, 0.2), 3) == TopNList({0, 1, 2}));
  CHECK(top_n(std::vector<double>{0.1, 0.2, 0.3, 0.4}, 4) == TopNList({3, 2, 1, 0}));
  CHECK_THROWS_AS(top_n(std::vector<double>{0.5, 0.5}, 3), std::invalid_argument);
  CHECK_THROWS_AS(TopNList({1, 1}), std::invalid_argument);
}

TEST_CASE("measure names round trip") {
  for (auto m : {Measure::kJss, Measure::kJis, Measure::kRbo}) {
    CHECK(parse_measure(to_string(m)) == m);
  }
  CHECK_THROWS_AS(parse_measure("kl"), std::invalid_argument);
}

TEST_CASE("measures are symmetric, bounded and 1 on identical inputs") {
  Rng rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t v = 2 + rng.below(30);
    const auto p = random_simplex(rng, v);
    const auto q = random_simplex(rng, v);
    const double s = jss(p, q);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s == doctest::Approx(jss(q, p)).epsilon(1e-12));
    CHECK(jss(p, p) == doctest::Approx(1.0).epsilon(1e-12));

    const std::size_t n = 1 + rng.below(10);
    const auto a = random_list(rng, n, 15);
    const auto b = random_list(rng, n, 15);
    const double j = jis(a, b), r = rbo(a, b, 0.9);
    CHECK((j >= 0.0 && j <= 1.0));
    CHECK((r >= 0.0 && r <= 1.0 + 1e-12));
    CHECK(j == jis(b, a));
    CHECK(r == doctest::Approx(rbo(b, a, 0.9)).epsilon(1e-14));
    CHECK(rbo(a, a, 0.9) == doctest::Approx(1.0).epsilon(1e-12));

    const std::size_t k = std::min<std::size_t>(v, 5);
    CHECK(jis(top_n(p, k), top_n(p, k)) == 1.0);
  }
}

TEST_CASE("jss falls as mass moves apart along a segment") {
  Rng rng(23);
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_simplex(rng, 3);
    const auto q = random_simplex(rng, 3);
    double prev = 1.0 + 1e-15;
    for (int step = 0; step <= 20; ++step) {
      const double t = step / 20.0;
      std::vector<double> r(3);
      for (int i = 0; i < 3; ++i) r[i] = (1 - t) * p[i] + t * q[i];
      const double s = jss(p, r);
      CHECK(s <= prev + 1e-12);
      prev = s;
    }
  }
}

TEST_CASE("rbo tends to the depth-n overlap proportion as p tends to 1") {
  // With (1 - p) / p -> 0 the extrapolated form keeps only X_n / n.
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 10;
    const auto a = random_list(rng, n, 20);
    const auto b = random_list(rng, n, 20);
    std::size_t overlap = 0;
    for (auto x : a.terms()) overlap += std::count(b.terms().begin(), b.terms().end(), x);
    CHECK(std::abs(rbo(a, b, 0.9999) - static_cast<double>(overlap) / n) < 1e-3);
  }
}

TEST_CASE("rbo matches a term-by-term expansion") {
  Rng rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + rng.below(10);
    const double p = 0.05 + 0.9 * rng.uniform();
    const auto a = random_list(rng, n, 14);
    const auto b = random_list(rng, n, 14);
    double sum = 0.0;
    double x_n = 0.0;
    for (std::size_t d = 1; d <= n; ++d) {
      std::size_t x = 0;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) x += a.terms()[i] == b.terms()[j];
      sum += static_cast<double>(x) / static_cast<double>(d) * std::pow(p, static_cast<double>(d));
      x_n = static_cast<double>(x);
    }
    const double expected = x_n / static_cast<double>(n) * std::pow(p, static_cast<double>(n)) + (1 - p) / p * sum;
    CHECK(rbo(a, b, p) == doctest::Approx(expected).epsilon(1e-12));
  }
}
