#pragma once

// File formats.
//
//   corpus      "V M" header line, then one line per document of
//               space-separated term indices.
//   vocabulary  one term per line, in index order.
//   matrix      CSV without header, one row per topic/document, 17
//               significant digits so values round-trip exactly.
//   samples     corpus_id,run_id,K,measure,kind,pair_index,value
//   stability   distribution,K,measure,kind,mean,variance,instability,t
//
// The format_* / parse_* pairs work on strings; write_* / read_* wrap them
// with file access and throw std::runtime_error on I/O failure. Parse errors
// throw std::runtime_error naming the line.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "topstab/core.hpp"
#include "topstab/stability.hpp"

namespace topstab::io {

/// printf("%.17g").
std::string format_double(double value);

std::string format_corpus(const Corpus& corpus);
/// Documents are validated against `vocabulary`; the header's V must match.
Corpus parse_corpus(std::string_view text, const Vocabulary& vocabulary);

std::string format_vocabulary(const Vocabulary& vocabulary);
Vocabulary parse_vocabulary(std::string_view text);

std::string format_matrix(const StochasticMatrix& matrix);
/// Rows of equal width; the result is checked as a stochastic matrix.
StochasticMatrix parse_matrix(std::string_view text);
TopicWordMatrix parse_topic_word(std::string_view text);
DocTopicMatrix parse_doc_topic(std::string_view text);

std::string format_samples(std::span<const SimilaritySample> samples);
std::vector<SimilaritySample> parse_samples(std::string_view text);

std::string format_stability(std::span<const StabilityRecord> records);
std::vector<StabilityRecord> parse_stability(std::string_view text);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace topstab::io
