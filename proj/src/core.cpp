#include "topstab/core.hpp"

#include <cmath>
#include <stdexcept>
#include <string_view>

namespace topstab {

bool validate_simplex(std::span<const double> vec) noexcept {
  if (vec.empty()) {
    return false;
  }
  double sum = 0.0;
  for (double p : vec) {
    if (!(p >= 0.0) || !std::isfinite(p)) {
      return false;
    }
    sum += p;
  }
  return std::abs(sum - 1.0) <= kSimplexTolerance;
}

Vocabulary::Vocabulary(std::vector<std::string> terms) : terms_(std::move(terms)) {
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) {
    auto [it, inserted] = index_.emplace(terms_[i], static_cast<TermId>(i));
    if (!inserted) {
      throw std::invalid_argument("duplicate vocabulary term '" + terms_[i] + "'");
    }
  }
}

std::size_t Vocabulary::find(const std::string& term) const {
  auto it = index_.find(term);
  return it == index_.end() ? terms_.size() : it->second;
}

Vocabulary synthetic_vocabulary(std::size_t size) {
  static constexpr std::string_view kLetters = "bcdfghjkmnpqrtvwxz";
  std::vector<std::string> terms;
  terms.reserve(size);
  for (std::size_t i = 0; i < size; ++i) {
    // "x" followed by at least two base-18 digits.
    std::string digits;
    std::size_t n = i;
    do {
      digits.insert(digits.begin(), kLetters[n % kLetters.size()]);
      n /= kLetters.size();
    } while (n > 0);
    while (digits.size() < 2) {
      digits.insert(digits.begin(), kLetters[0]);
    }
    terms.push_back("x" + digits);
  }
  return Vocabulary(std::move(terms));
}

StochasticMatrix::StochasticMatrix(std::size_t rows, std::size_t cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw std::invalid_argument("matrix data size does not match its shape");
  }
  for (std::size_t r = 0; r < rows_; ++r) {
    if (!validate_simplex(row(r))) {
      throw std::invalid_argument("matrix row " + std::to_string(r) +
                                  " is not a probability vector");
    }
  }
}

TopicWordMatrix::TopicWordMatrix(std::size_t topics, std::size_t terms, std::vector<double> data)
    : StochasticMatrix(topics, terms, std::move(data)) {
  if (topics < 1 || terms < 2) {
    throw std::invalid_argument("topic-word matrix needs K >= 1 and V >= 2");
  }
}

DocTopicMatrix::DocTopicMatrix(std::size_t documents, std::size_t topics, std::vector<double> data)
    : StochasticMatrix(documents, topics, std::move(data)) {
  if (documents < 1 || topics < 1) {
    throw std::invalid_argument("document-topic matrix needs M >= 1 and K >= 1");
  }
}

Corpus::Corpus(Vocabulary vocabulary, std::vector<Document> documents, std::size_t doc_length)
    : vocabulary_(std::move(vocabulary)), documents_(std::move(documents)), doc_length_(doc_length) {
  if (documents_.empty()) {
    throw std::invalid_argument("corpus has no documents");
  }
  const std::size_t v = vocabulary_.size();
  for (std::size_t m = 0; m < documents_.size(); ++m) {
    if (documents_[m].empty()) {
      throw std::invalid_argument("document " + std::to_string(m) + " is empty");
    }
    for (TermId w : documents_[m]) {
      if (w >= v) {
        throw std::invalid_argument("document " + std::to_string(m) + " has term index " +
                                    std::to_string(w) + " outside vocabulary of size " +
                                    std::to_string(v));
      }
    }
  }
}

std::size_t Corpus::num_tokens() const noexcept {
  std::size_t n = 0;
  for (const auto& doc : documents_) {
    n += doc.size();
  }
  return n;
}

std::vector<std::size_t> Corpus::term_counts() const {
  std::vector<std::size_t> counts(vocabulary_.size(), 0);
  for (const auto& doc : documents_) {
    for (TermId w : doc) {
      ++counts[w];
    }
  }
  return counts;
}

TopicAssignments::TopicAssignments(std::vector<std::vector<TopicId>> topics, std::size_t num_topics)
    : topics_(std::move(topics)), num_topics_(num_topics) {
  for (const auto& doc : topics_) {
    for (TopicId z : doc) {
      if (z >= num_topics_) {
        throw std::invalid_argument("topic assignment " + std::to_string(z) +
                                    " out of range for K=" + std::to_string(num_topics_));
      }
    }
  }
}

bool TopicAssignments::matches(const Corpus& corpus) const noexcept {
  if (topics_.size() != corpus.num_documents()) {
    return false;
  }
  for (std::size_t m = 0; m < topics_.size(); ++m) {
    if (topics_[m].size() != corpus.documents()[m].size()) {
      return false;
    }
  }
  return true;
}

}  // namespace topstab
