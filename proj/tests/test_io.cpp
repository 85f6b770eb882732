#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <vector>

#include "support.hpp"
#include "topstab/generation.hpp"
#include "topstab/io.hpp"
#include "topstab/rng.hpp"

using namespace topstab;

namespace {

std::string error_of(auto&& fn) {
  try {
    fn();
  } catch (const std::runtime_error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("corpus format") {
  Vocabulary v({"a", "b", "c"});
  Corpus c(v, {{0, 2}, {1}});
  CHECK(io::format_corpus(c) == "3 2\n0 2\n1\n");
  CHECK(io::parse_corpus("3 2\n0 2\n1\n", v) == c);
}

TEST_CASE("generated corpus, vocabulary and ground truth round trip") {
  for (const auto& f : {PhiFamily::dirichlet_small(), PhiFamily::normal_1(), PhiFamily::uniform_separable()}) {
    GenerationConfig g;
    g.k_true = 4;
    g.documents = 30;
    g.terms = 50;
    g.doc_length = 12;
    g.phi_family = f;
    const auto gen = generate_corpus(g, 8);
    const auto vocab = io::parse_vocabulary(io::format_vocabulary(gen.corpus.vocabulary()));
    CHECK(vocab == gen.corpus.vocabulary());
    CHECK(io::parse_corpus(io::format_corpus(gen.corpus), vocab) == gen.corpus);
    CHECK(io::parse_topic_word(io::format_matrix(gen.truth.phi)) == gen.truth.phi);
    CHECK(io::parse_doc_topic(io::format_matrix(gen.truth.theta)) == gen.truth.theta);
  }
}

TEST_CASE("format_double round trips every double") {
  Rng rng(1);
  for (int i = 0; i < 10000; ++i) {
    const double x = rng.uniform() * std::pow(10.0, static_cast<double>(rng.below(40)) - 20.0);
    CHECK(std::strtod(io::format_double(x).c_str(), nullptr) == x);
  }
  CHECK(io::format_double(0.1) == "0.10000000000000001");
  CHECK(std::strtod(io::format_double(5e-324).c_str(), nullptr) == 5e-324);
}

TEST_CASE("samples and stability round trip") {
  std::vector<SimilaritySample> samples{
      {0, 2, 5, Measure::kJss, ComparisonKind::kWithin, 3, 0.123456789012345678},
      {1, 1, 5, Measure::kRbo, ComparisonKind::kBetween, 0, 1.0}};
  const auto text = io::format_samples(samples);
  CHECK(text.rfind("corpus_id,run_id,K,measure,kind,pair_index,value\n", 0) == 0);
  CHECK(io::parse_samples(text) == samples);

  std::vector<StabilityRecord> records{{"dir_mid", 7, Measure::kJis, ComparisonKind::kWithin, 0.5, 0.01, 0.51, 50}};
  const auto st = io::format_stability(records);
  CHECK(st.rfind("distribution,K,measure,kind,mean,variance,instability,t\n", 0) == 0);
  CHECK(io::parse_stability(st) == records);
}

TEST_CASE("parse errors name the line") {
  Vocabulary v({"a", "b"});
  CHECK(error_of([&] { io::parse_corpus("2 2\n0 1\n", v); }).find("line 1") != std::string::npos);
  CHECK(error_of([&] { io::parse_corpus("2 2\n0 1\n\n", v); }).find("line 3") != std::string::npos);
  CHECK(error_of([&] { io::parse_corpus("3 1\n0\n", v); }) != "");
  CHECK(error_of([&] { io::parse_corpus("2 1\n0 x\n", v); }).find("line 2") != std::string::npos);
  CHECK(error_of([&] { io::parse_corpus("2 1\n0 5\n", v); }).find("line 2") != std::string::npos);
  CHECK(error_of([&] { io::parse_matrix("0.5,0.5\n0.2\n"); }).find("line 2") != std::string::npos);
  CHECK(error_of([&] { io::parse_matrix("0.5,0.6\n"); }) != "");
  CHECK(error_of([&] { io::parse_samples("bad header\n"); }).find("line 1") != std::string::npos);
  CHECK(error_of([&] {
          io::parse_samples("corpus_id,run_id,K,measure,kind,pair_index,value\n0,1,2,kl,within,0,0.5\n");
        }).find("line 2") != std::string::npos);
  CHECK(error_of([&] { io::parse_vocabulary("a\na\n"); }) != "");
}

TEST_CASE("file helpers") {
  TempDir dir("io");
  io::write_text(dir / "x.txt", "hello\n");
  CHECK(io::read_text(dir / "x.txt") == "hello\n");
  CHECK_THROWS_AS(io::read_text(dir / "missing"), std::runtime_error);
  CHECK_THROWS_AS(io::write_text(dir / "no/such/dir/x.txt", "x"), std::runtime_error);
}
