#include <doctest.h>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "topstab/harness.hpp"

using namespace topstab;

namespace {

ExperimentPlan tiny_plan(std::size_t k_true, std::size_t k_min, std::size_t k_max, std::size_t runs,
                         std::size_t corpora = 1) {
  ExperimentPlan plan;
  plan.generation.k_true = k_true;
  plan.generation.documents = 30;
  plan.generation.terms = 30;
  plan.generation.doc_length = 20;
  plan.generation.n_corpora = corpora;
  plan.generation.phi_family = PhiFamily::uniform_separable();
  plan.generation.master_seed = 5;
  plan.sweep.k_min = k_min;
  plan.sweep.k_max = k_max;
  plan.sweep.runs = runs;
  plan.sweep.lda.iterations = 40;
  plan.sweep.lda.burn_in = 20;
  plan.sweep.lda.thin = 5;
  return plan;
}

std::size_t count(const std::vector<SimilaritySample>& s, ComparisonKind kind, std::size_t k) {
  return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [&](const auto& x) {
    return x.kind == kind && x.topics == k;
  }));
}

SimilaritySample within(std::size_t k, Measure m, double v) {
  return SimilaritySample{0, 2, k, m, ComparisonKind::kWithin, 0, v};
}

}  // namespace

TEST_CASE("two runs at K_true give the enumerated sample counts") {
  const auto out = execute(tiny_plan(3, 3, 3, 2), {1, nullptr});
  CHECK(count(out.samples, ComparisonKind::kWithin, 3) == 3 * 3);
  CHECK(count(out.samples, ComparisonKind::kBetween, 3) == 2 * 3 * 3);
  CHECK(out.runs.size() == 2);
  for (const auto& s : out.samples) {
    CHECK((s.value >= 0.0 && s.value <= 1.0));
    if (s.kind == ComparisonKind::kWithin) CHECK(s.run_id == 2);
  }
}

TEST_CASE("sample counts follow the loop structure across a K range") {
  const auto plan = tiny_plan(3, 2, 4, 3, 2);
  const auto out = execute(plan, {2, nullptr});
  for (std::size_t k = 2; k <= 4; ++k) {
    CHECK(count(out.samples, ComparisonKind::kWithin, k) == 2 * (3 - 1) * k * 3);
    CHECK(count(out.samples, ComparisonKind::kBetween, k) == (k == 3 ? 2 * 3 * k * 3 : 0));
  }
  CHECK(out.runs.size() == 2 * 3 * 3);
  CHECK(std::is_sorted(out.samples.begin(), out.samples.end(), sample_key_less));
  for (std::size_t i = 1; i < out.runs.size(); ++i) {
    const auto& a = out.runs[i - 1];
    const auto& b = out.runs[i];
    CHECK(std::tie(a.corpus_id, a.topics, a.run_id) < std::tie(b.corpus_id, b.topics, b.run_id));
  }
}

TEST_CASE("output is identical for any worker count") {
  const auto plan = tiny_plan(3, 2, 4, 3, 2);
  const auto one = execute(plan, {1, nullptr});
  for (std::size_t workers : {2, 3, 8}) {
    const auto many = execute(plan, {workers, nullptr});
    CHECK(many.samples == one.samples);
    REQUIRE(many.runs.size() == one.runs.size());
    for (std::size_t i = 0; i < one.runs.size(); ++i) {
      CHECK(many.runs[i].phi_digest == one.runs[i].phi_digest);
      CHECK(many.runs[i].run_seed == one.runs[i].run_seed);
    }
  }
  CHECK(execute(plan, {1, nullptr}).samples == one.samples);
}

TEST_CASE("progress reports one line per fit") {
  std::ostringstream log;
  execute(tiny_plan(3, 3, 4, 2), {2, &log});
  const std::string text = log.str();
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}

TEST_CASE("run seeds are distinct per K and run") {
  std::set<std::uint64_t> seeds;
  for (std::size_t k = 1; k <= 20; ++k)
    for (std::size_t r = 1; r <= 50; ++r) seeds.insert(run_seed(42, k, r));
  CHECK(seeds.size() == 1000);
}

TEST_CASE("theta alignment and run averaging") {
  auto plan = tiny_plan(3, 3, 3, 3, 2);
  plan.sweep.align_by = AlignBy::kTheta;
  plan.sweep.averaging = Averaging::kRun;
  const auto out = execute(plan, {1, nullptr});
  CHECK(count(out.samples, ComparisonKind::kWithin, 3) == 2 * 2 * 3 * 3);
  const auto report = sweep_report(out.samples, "u", Averaging::kRun);
  for (const auto& r : report) CHECK(r.t == (r.kind == ComparisonKind::kWithin ? 4u : 6u));
}

TEST_CASE("a failing fit aborts with its context") {
  Vocabulary v({"a", "b", "c"});
  std::vector<ReplicateInput> inputs{ReplicateInput{7, Corpus(v, {{0, 1, 2}}), std::nullopt, 1}};
  SweepSettings sweep;
  sweep.k_min = 3;
  sweep.k_max = 4;
  sweep.runs = 2;
  sweep.top_n = 2;
  sweep.lda.iterations = 10;
  sweep.lda.burn_in = 5;
  try {
    run_replicates(inputs, sweep, {1, nullptr});
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    const std::string what = e.what();
    CHECK(what.find("corpus 7") != std::string::npos);
    CHECK(what.find("K=4") != std::string::npos);
    CHECK(what.find("run 1") != std::string::npos);
  }
}

TEST_CASE("plan validation and warnings") {
  auto plan = tiny_plan(3, 3, 3, 2);
  CHECK(plan.warnings().empty());
  plan.sweep.k_min = 4;
  plan.sweep.k_max = 5;
  CHECK(plan.warnings().size() == 1);
  plan.sweep.runs = 1;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = tiny_plan(3, 3, 3, 2);
  plan.sweep.top_n = 31;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = tiny_plan(3, 3, 3, 2);
  plan.sweep.k_min = 5;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = tiny_plan(3, 3, 3, 2);
  plan.sweep.measures.clear();
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
  plan = tiny_plan(3, 3, 3, 2);
  plan.sweep.rbo_p = 1.0;
  CHECK_THROWS_AS(plan.validate(), std::invalid_argument);
}

TEST_CASE("sweep report ordering and argmin") {
  std::vector<SimilaritySample> s;
  const double jis_by_k[] = {0.5, 0.7, 0.95, 0.6, 0.4};  // K = 3..7
  for (std::size_t k = 3; k <= 7; ++k) {
    s.push_back(within(k, Measure::kJis, jis_by_k[k - 3]));
    s.push_back(within(k, Measure::kJss, 0.8));
  }
  s.push_back(SimilaritySample{0, 1, 5, Measure::kJis, ComparisonKind::kBetween, 0, 0.3});
  const auto report = sweep_report(s, "fixture");
  REQUIRE(report.size() == 11);
  // jss within K3..7, then jis within K3..7, then jis between K5.
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(report[i].measure == Measure::kJss);
    CHECK(report[i].topics == 3 + i);
    CHECK(report[5 + i].measure == Measure::kJis);
    CHECK(report[5 + i].kind == ComparisonKind::kWithin);
    CHECK(report[5 + i].topics == 3 + i);
  }
  CHECK(report[10].kind == ComparisonKind::kBetween);

  CHECK(argmin_topics(report, Measure::kJis, ComparisonKind::kWithin) == 5u);
  CHECK(argmin_topics(report, Measure::kJss, ComparisonKind::kWithin) == 3u);  // all tied
  CHECK(argmin_topics(report, Measure::kJis, ComparisonKind::kBetween) == 5u);
  CHECK_FALSE(argmin_topics(report, Measure::kRbo, ComparisonKind::kWithin).has_value());
}

TEST_CASE("single-K plan gives one row per group") {
  const auto out = execute(tiny_plan(3, 3, 3, 2), {1, nullptr});
  const auto report = sweep_report(out.samples, "u");
  CHECK(report.size() == 6);
  std::set<std::pair<Measure, ComparisonKind>> groups;
  for (const auto& r : report) {
    CHECK(groups.insert({r.measure, r.kind}).second);
    CHECK(r.distribution == "u");
    CHECK((r.instability >= 0.0 && r.instability <= 1.4143));
  }
}
