#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>
#include <vector>

#include "topstab/alignment.hpp"
#include "topstab/rng.hpp"

using namespace topstab;

namespace {

SimilarityMatrix make(std::size_t rows, std::size_t cols, std::vector<double> values) {
  return SimilarityMatrix{rows, cols, std::move(values)};
}

void check_bijection(const SimilarityMatrix& sim, const TopicMatching& m) {
  CHECK(m.pairs.size() == std::min(sim.rows, sim.cols));
  std::set<std::size_t> rows, cols;
  for (const auto& p : m.pairs) {
    CHECK(rows.insert(p.reference).second);
    CHECK(cols.insert(p.candidate).second);
    CHECK(p.score == sim.at(p.reference, p.candidate));
  }
}

}  // namespace

TEST_CASE("jss_matrix examples") {
  const TopicWordMatrix disjoint(2, 4, {0.5, 0.5, 0, 0, 0, 0, 0.5, 0.5});
  const auto sim = jss_matrix(disjoint, disjoint);
  CHECK(sim.rows == 2);
  CHECK(sim.cols == 2);
  CHECK(sim.at(0, 0) == doctest::Approx(1.0));
  CHECK(sim.at(1, 1) == doctest::Approx(1.0));
  CHECK(sim.at(0, 1) == doctest::Approx(0.0));
  CHECK(sim.at(1, 0) == doctest::Approx(0.0));

  const TopicWordMatrix one(1, 2, {0.3, 0.7});
  const TopicWordMatrix other(1, 2, {0.6, 0.4});
  const auto single = jss_matrix(one, other);
  CHECK(single.values.size() == 1);

  const TopicWordMatrix wide(1, 3, {0.2, 0.3, 0.5});
  CHECK_THROWS_AS(jss_matrix(one, wide), std::invalid_argument);
}

TEST_CASE("greedy_match examples") {
  auto m = greedy_match(make(2, 2, {0.9, 0.1, 0.2, 0.8}));
  REQUIRE(m.pairs.size() == 2);
  CHECK(m.pairs[0] == TopicPair{0, 0, 0.9});
  CHECK(m.pairs[1] == TopicPair{1, 1, 0.8});

  m = greedy_match(make(3, 3, {1, 0, 0, 0, 1, 0, 0, 0, 1}));
  CHECK(m.candidate_for_reference(3) == std::vector<std::size_t>{0, 1, 2});

  m = greedy_match(make(2, 2, {0.5, 0.5, 0.5, 0.5}));
  CHECK(m.pairs[0] == TopicPair{0, 0, 0.5});
  CHECK(m.pairs[1] == TopicPair{1, 1, 0.5});
}

TEST_CASE("greedy_match is a partial bijection on rectangular matrices") {
  Rng rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t r = 1 + rng.below(7), c = 1 + rng.below(7);
    std::vector<double> values(r * c);
    for (auto& v : values) v = std::floor(rng.uniform() * 5) / 5;  // plenty of ties
    const auto sim = make(r, c, values);
    const auto m = greedy_match(sim);
    check_bijection(sim, m);
    const auto cand = m.candidate_for_reference(r);
    std::size_t matched = 0;
    for (auto x : cand) matched += x != TopicMatching::npos;
    CHECK(matched == std::min(r, c));
  }
}

TEST_CASE("greedy equals exhaustive optimum when the optimum is unambiguous") {
  Rng rng(9);
  int checked = 0;
  while (checked < 200) {
    const std::size_t k = 1 + rng.below(6);
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    shuffle_in_place(perm, rng);
    std::vector<double> values(k * k);
    for (auto& v : values) v = 0.5 * rng.uniform();
    for (std::size_t i = 0; i < k; ++i) values[i * k + perm[i]] = 0.5 + 0.5 * rng.uniform();
    const auto sim = make(k, k, values);

    // Exhaustive optimum; skip matrices where it is not unique.
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    double best = -1, second = -1;
    std::vector<std::size_t> best_p;
    do {
      double s = 0;
      for (std::size_t i = 0; i < k; ++i) s += sim.at(i, p[i]);
      if (s > best) {
        second = best;
        best = s;
        best_p = p;
      } else if (s > second) {
        second = s;
      }
    } while (std::next_permutation(p.begin(), p.end()));
    if (k > 1 && best - second < 1e-9) continue;
    CHECK(greedy_match(sim).candidate_for_reference(k) == best_p);
    ++checked;
  }
}

TEST_CASE("topic_document_profiles normalizes theta columns in base order") {
  const DocTopicMatrix theta(2, 2, {0.2, 0.8, 0.6, 0.4});
  const auto profiles = topic_document_profiles(theta, {1, 0});
  CHECK(profiles.rows() == 2);
  CHECK(profiles.at(0, 0) == doctest::Approx(0.6 / 0.8));
  CHECK(profiles.at(0, 1) == doctest::Approx(0.2 / 0.8));
  CHECK(profiles.at(1, 0) == doctest::Approx(0.4 / 1.2));
}
