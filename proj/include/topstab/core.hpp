#pragma once

// Shared domain types. Every type validates its invariants on construction
// and is immutable afterwards, so instances can be shared freely between
// worker threads.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace topstab {

using TermId = std::uint32_t;
using TopicId = std::uint32_t;

/// Absolute tolerance on the row sum of every probability vector.
inline constexpr double kSimplexTolerance = 1e-9;

/// True iff every entry is non-negative and the entries sum to 1 within
/// kSimplexTolerance. An empty vector is not a simplex point.
bool validate_simplex(std::span<const double> vec) noexcept;

class Vocabulary {
 public:
  Vocabulary() = default;
  /// Throws std::invalid_argument on duplicate terms.
  explicit Vocabulary(std::vector<std::string> terms);

  std::size_t size() const noexcept { return terms_.size(); }
  const std::string& term(TermId id) const { return terms_.at(id); }
  const std::vector<std::string>& terms() const noexcept { return terms_; }
  /// Index of `term`, or size() if absent.
  std::size_t find(const std::string& term) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<std::string> terms_;
  std::unordered_map<std::string, TermId> index_;
};

/// Synthetic vocabulary of `size` distinct lowercase terms. The terms use only
/// consonants outside {l, s, y}, which makes them fixed points of the Porter
/// stemmer and keeps them clear of English stopwords, so generated corpora
/// survive a text round trip through ingestion unchanged.
Vocabulary synthetic_vocabulary(std::size_t size);

/// Dense row-major matrix whose rows are probability vectors.
class StochasticMatrix {
 public:
  StochasticMatrix() = default;
  /// Throws std::invalid_argument if the data size is not rows*cols or any
  /// row fails validate_simplex.
  StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  const std::vector<double>& data() const noexcept { return data_; }

  friend bool operator==(const StochasticMatrix&, const StochasticMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// phi: K rows, each a distribution over V terms. Requires K >= 1, V >= 2.
class TopicWordMatrix : public StochasticMatrix {
 public:
  TopicWordMatrix() = default;
  TopicWordMatrix(std::size_t topics, std::size_t terms, std::vector<double> data);
  std::size_t topics() const noexcept { return rows(); }
  std::size_t terms() const noexcept { return cols(); }
};

/// theta: M rows, each a distribution over K topics.
class DocTopicMatrix : public StochasticMatrix {
 public:
  DocTopicMatrix() = default;
  DocTopicMatrix(std::size_t documents, std::size_t topics, std::vector<double> data);
  std::size_t documents() const noexcept { return rows(); }
  std::size_t topics() const noexcept { return cols(); }
};

using Document = std::vector<TermId>;

class Corpus {
 public:
  Corpus() = default;
  /// Throws std::invalid_argument when there are no documents, a document is
  /// empty, or a term index is out of range.
  Corpus(Vocabulary vocabulary, std::vector<Document> documents, std::size_t doc_length = 0);

  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const std::vector<Document>& documents() const noexcept { return documents_; }
  const Document& document(std::size_t m) const { return documents_.at(m); }
  std::size_t num_documents() const noexcept { return documents_.size(); }
  std::size_t num_terms() const noexcept { return vocabulary_.size(); }
  /// Configured tokens per document at generation time; 0 when not generated.
  std::size_t doc_length() const noexcept { return doc_length_; }
  std::size_t num_tokens() const noexcept;
  /// Occurrence count per term index.
  std::vector<std::size_t> term_counts() const;

  /// Compares vocabulary and documents; doc_length is generation metadata.
  friend bool operator==(const Corpus& a, const Corpus& b) {
    return a.vocabulary_ == b.vocabulary_ && a.documents_ == b.documents_;
  }

 private:
  Vocabulary vocabulary_;
  std::vector<Document> documents_;
  std::size_t doc_length_ = 0;
};

/// Latent topic of every token, positionally aligned with a corpus.
class TopicAssignments {
 public:
  TopicAssignments() = default;
  TopicAssignments(std::vector<std::vector<TopicId>> topics, std::size_t num_topics);

  const std::vector<std::vector<TopicId>>& topics() const noexcept { return topics_; }
  std::size_t num_topics() const noexcept { return num_topics_; }
  /// True iff the shape matches the corpus documents exactly.
  bool matches(const Corpus& corpus) const noexcept;

  friend bool operator==(const TopicAssignments&, const TopicAssignments&) = default;

 private:
  std::vector<std::vector<TopicId>> topics_;
  std::size_t num_topics_ = 0;
};

}  // namespace topstab
