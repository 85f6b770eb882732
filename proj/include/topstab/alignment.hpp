#pragma once

// Correspondence between the unordered topics of two models.

#include <cstddef>
#include <utility>
#include <vector>

#include "topstab/core.hpp"

namespace topstab {

/// Dense row-major matrix of similarity values.
struct SimilarityMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double at(std::size_t r, std::size_t c) const { return values[r * cols + c]; }
};

struct TopicPair {
  std::size_t reference;
  std::size_t candidate;
  double score;

  friend bool operator==(const TopicPair&, const TopicPair&) = default;
};

/// Partial bijection between reference and candidate topics, in the order
/// the pairs were selected.
struct TopicMatching {
  std::vector<TopicPair> pairs;

  /// Candidate topic matched to each reference topic, or npos.
  std::vector<std::size_t> candidate_for_reference(std::size_t reference_topics) const;
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

/// Entry (i, j) = jss(ref row i, cand row j). Throws std::invalid_argument
/// when the vocabulary sizes differ.
SimilarityMatrix jss_matrix(const StochasticMatrix& reference, const StochasticMatrix& candidate);

/// Global-max-first greedy matching: repeatedly take the largest remaining
/// entry (ties: lower row, then lower column) and eliminate its row and
/// column, min(rows, cols) times.
TopicMatching greedy_match(const SimilarityMatrix& sim);

/// Per-topic distributions over documents: column k of theta normalized to
/// sum to one. Used for matching topics by their document profiles instead
/// of their term profiles. `order[i]` gives the base-corpus index of row i,
/// so rows of shuffled fits are put back in base order first.
StochasticMatrix topic_document_profiles(const DocTopicMatrix& theta,
                                         const std::vector<std::size_t>& order);

}  // namespace topstab
