#include "topstab/alignment.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "topstab/measures.hpp"

namespace topstab {

std::vector<std::size_t> TopicMatching::candidate_for_reference(std::size_t reference_topics) const {
  std::vector<std::size_t> mapping(reference_topics, npos);
  for (const auto& pair : pairs) {
    mapping.at(pair.reference) = pair.candidate;
  }
  return mapping;
}

SimilarityMatrix jss_matrix(const StochasticMatrix& reference, const StochasticMatrix& candidate) {
  if (reference.cols() != candidate.cols()) {
    throw std::invalid_argument("jss_matrix: vocabulary sizes differ (" +
                                std::to_string(reference.cols()) + " vs " +
                                std::to_string(candidate.cols()) + ")");
  }
  SimilarityMatrix sim{reference.rows(), candidate.rows(), {}};
  sim.values.resize(sim.rows * sim.cols);
  for (std::size_t i = 0; i < sim.rows; ++i) {
    for (std::size_t j = 0; j < sim.cols; ++j) {
      sim.values[i * sim.cols + j] = jss_unchecked(reference.row(i), candidate.row(j));
    }
  }
  return sim;
}

TopicMatching greedy_match(const SimilarityMatrix& sim) {
  std::vector<std::size_t> cells(sim.rows * sim.cols);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  // Row-major cell index order already encodes (row, col) tie-breaking.
  std::stable_sort(cells.begin(), cells.end(),
                   [&](std::size_t a, std::size_t b) { return sim.values[a] > sim.values[b]; });

  std::vector<bool> row_used(sim.rows, false);
  std::vector<bool> col_used(sim.cols, false);
  const std::size_t picks = std::min(sim.rows, sim.cols);
  TopicMatching matching;
  matching.pairs.reserve(picks);
  for (std::size_t cell : cells) {
    if (matching.pairs.size() == picks) break;
    const std::size_t r = cell / sim.cols;
    const std::size_t c = cell % sim.cols;
    if (row_used[r] || col_used[c]) continue;
    row_used[r] = true;
    col_used[c] = true;
    matching.pairs.push_back({r, c, sim.values[cell]});
  }
  return matching;
}

StochasticMatrix topic_document_profiles(const DocTopicMatrix& theta,
                                         const std::vector<std::size_t>& order) {
  const std::size_t m_docs = theta.documents();
  const std::size_t kk = theta.topics();
  if (order.size() != m_docs) {
    throw std::invalid_argument("document order does not match theta");
  }
  std::vector<double> data(kk * m_docs, 0.0);
  for (std::size_t i = 0; i < m_docs; ++i) {
    for (std::size_t k = 0; k < kk; ++k) {
      data[k * m_docs + order[i]] = theta.at(i, k);
    }
  }
  for (std::size_t k = 0; k < kk; ++k) {
    double sum = 0.0;
    for (std::size_t m = 0; m < m_docs; ++m) sum += data[k * m_docs + m];
    for (std::size_t m = 0; m < m_docs; ++m) data[k * m_docs + m] /= sum;
  }
  return StochasticMatrix(kk, m_docs, std::move(data));
}

}  // namespace topstab
