#pragma once

// LDA parameter estimation by collapsed Gibbs sampling.

#include <cstdint>
#include <optional>
#include <vector>

#include "topstab/core.hpp"
#include "topstab/rng.hpp"

namespace topstab {

struct LdaConfig {
  std::size_t topics = 10;
  /// Symmetric document-topic prior; 50/K when unset.
  std::optional<double> alpha;
  double beta = 0.01;
  std::size_t iterations = 1000;
  std::size_t burn_in = 500;
  /// Estimates average the counts of every `thin`-th sweep after burn-in,
  /// counted back from the final sweep.
  std::size_t thin = 10;
  std::uint64_t seed = 0;

  double resolved_alpha() const { return alpha.value_or(50.0 / static_cast<double>(topics)); }
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct LdaResult {
  TopicWordMatrix phi;
  DocTopicMatrix theta;
  /// Collapsed joint log likelihood log p(w, z) after each sweep, in nats.
  std::vector<double> log_likelihood;
};

/// Fits LDA to `corpus`. Single-threaded and deterministic given config.seed.
/// Throws std::invalid_argument for an invalid config, an empty document, or
/// K larger than the total token count.
LdaResult fit(const Corpus& corpus, const LdaConfig& config);

struct ShuffledCorpus {
  Corpus corpus;
  /// order[i] is the index in the input corpus of output document i.
  std::vector<std::size_t> order;
};

/// Uniform random permutation of the documents (Fisher-Yates over Rng).
ShuffledCorpus shuffle_corpus(const Corpus& corpus, std::uint64_t seed);

/// Count state of a Gibbs chain. Exposed for invariant tests.
class GibbsState {
 public:
  GibbsState(const Corpus& corpus, std::size_t topics, double alpha, double beta,
             std::uint64_t seed);

  /// One full sweep over every token in document order.
  void sweep();
  double log_likelihood() const;

  std::size_t topics() const noexcept { return topics_; }
  std::size_t terms() const noexcept { return terms_; }
  /// n_kw laid out word-major: word_topic()[w * K + k].
  const std::vector<std::int32_t>& word_topic() const noexcept { return word_topic_; }
  /// n_mk laid out document-major: doc_topic()[m * K + k].
  const std::vector<std::int32_t>& doc_topic() const noexcept { return doc_topic_; }
  const std::vector<std::int32_t>& topic_totals() const noexcept { return topic_totals_; }
  const std::vector<std::vector<TopicId>>& assignments() const noexcept { return z_; }

 private:
  const Corpus* corpus_;
  std::size_t topics_;
  std::size_t terms_;
  double alpha_;
  double beta_;
  std::vector<std::vector<TopicId>> z_;
  std::vector<std::int32_t> word_topic_;
  std::vector<std::int32_t> doc_topic_;
  std::vector<std::int32_t> topic_totals_;
  std::vector<double> weights_;
  Rng rng_;
};

}  // namespace topstab
