#pragma once

// Synthetic corpora with known ground truth, produced by running the LDA
// generative process forwards.

#include <cstdint>
#include <string>

#include "topstab/core.hpp"

namespace topstab {

/// Family of topic-word distributions used to draw phi.
struct PhiFamily {
  enum class Kind { kDirichlet, kNormal, kUniformSeparable };

  Kind kind = Kind::kDirichlet;
  /// beta for Dirichlet, sigma for Normal, unused for UniformSeparable.
  double parameter = 0.001;

  static PhiFamily dirichlet(double beta) { return {Kind::kDirichlet, beta}; }
  static PhiFamily normal(double sigma) { return {Kind::kNormal, sigma}; }
  static PhiFamily uniform_separable() { return {Kind::kUniformSeparable, 0.0}; }

  static PhiFamily dirichlet_small() { return dirichlet(0.0001); }
  static PhiFamily dirichlet_mid() { return dirichlet(0.001); }
  static PhiFamily normal_1() { return normal(1.0); }
  static PhiFamily normal_10() { return normal(10.0); }

  /// Short stable label: "dir_small", "dir_mid", "normal_1", "normal_10",
  /// "uniform_separable" for the presets, "dirichlet_<p>" / "normal_<p>"
  /// otherwise.
  std::string label() const;
  /// Parses a label produced by label(). Throws std::invalid_argument.
  static PhiFamily parse(const std::string& label);

  /// Throws std::invalid_argument if the parameter is out of range.
  void validate() const;

  friend bool operator==(const PhiFamily&, const PhiFamily&) = default;
};

struct GenerationConfig {
  std::size_t k_true = 10;
  std::size_t documents = 1000;
  std::size_t terms = 1000;
  std::size_t doc_length = 100;
  double alpha = 0.1;
  PhiFamily phi_family = PhiFamily::dirichlet_mid();
  std::size_t n_corpora = 50;
  std::uint64_t master_seed = 1;
  /// Inclusive range of the occurrence count given to each re-injected term.
  std::size_t reinject_min = 1;
  std::size_t reinject_max = 3;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct GroundTruth {
  TopicWordMatrix phi;
  DocTopicMatrix theta;
  TopicAssignments assignments;
};

struct GeneratedCorpus {
  Corpus corpus;
  GroundTruth truth;
};

/// Draws K topic-word rows from `family`. Deterministic given `seed`.
/// Throws std::invalid_argument for K < 1, V < 2, or V < K with
/// UniformSeparable.
TopicWordMatrix sample_phi(const PhiFamily& family, std::size_t topics, std::size_t terms,
                           std::uint64_t seed);

/// Seed of corpus `index` under `master_seed`.
std::uint64_t corpus_seed(std::uint64_t master_seed, std::size_t index);

/// Runs the generative process once, re-injects terms that never occurred,
/// then shuffles documents. Deterministic given (config, seed).
GeneratedCorpus generate_corpus(const GenerationConfig& config, std::uint64_t seed);

struct ReinjectOptions {
  std::size_t min_count = 1;
  std::size_t max_count = 3;
};

/// Appends tokens for every vocabulary term that occurs nowhere in the
/// corpus. Each missing term receives a count drawn uniformly from
/// [min_count, max_count]; each occurrence picks its topic from the term's
/// phi column normalized over topics and its document from that topic's theta
/// column normalized over documents. Throws std::invalid_argument if a
/// missing term has an all-zero phi column.
GeneratedCorpus reinject_missing_terms(GeneratedCorpus generated, std::uint64_t seed,
                                       const ReinjectOptions& options = {});

}  // namespace topstab
