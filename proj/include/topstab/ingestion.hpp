#pragma once

// Real-corpus pipeline: plain-text files -> lowercase alphabetic tokens ->
// stopword removal -> Porter stems -> frequency-ordered vocabulary.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "topstab/core.hpp"
#include "topstab/harness.hpp"
#include "topstab/stopwords.hpp"

namespace topstab {

struct PreprocessConfig {
  /// Built-in English list when unset.
  std::optional<std::filesystem::path> stopword_file;
  /// Stems occurring fewer times across the corpus are dropped.
  std::size_t min_term_count = 5;
  /// Keep only the most frequent stems when set.
  std::optional<std::size_t> max_vocab;

  void validate() const;
};

/// Maximal runs of ASCII letters, lowercased. Every other byte (digits,
/// punctuation, non-ASCII and invalid UTF-8) separates tokens.
std::vector<std::string> tokenize(std::string_view text);

/// tokenize, drop stopwords, stem; stems that are themselves stopwords are
/// dropped as well.
std::vector<std::string> preprocess(std::string_view text, const StopwordSet& stopwords);

struct IngestedCorpus {
  Corpus corpus;
  /// Source path of each document, relative to the input directory.
  std::vector<std::string> sources;
};

/// Reads every regular file below `directory` (recursively, sorted by
/// relative path). Documents left empty after filtering are dropped. The
/// vocabulary is ordered by descending frequency, then lexicographically.
/// Throws std::invalid_argument if the directory has no files or every
/// document is filtered away.
IngestedCorpus ingest(const std::filesystem::path& directory, const PreprocessConfig& config);

/// Same as ingest() over in-memory texts; `sources` names each text.
IngestedCorpus ingest_texts(const std::vector<std::pair<std::string, std::string>>& named_texts,
                            const PreprocessConfig& config);

struct RealSweepOutput {
  ExperimentOutput experiment;
  std::vector<StabilityRecord> report;
};

/// Replicate loop over a single corpus without ground truth: within-samples
/// only. The corpus seed is corpus_seed(master_seed, 0), matching corpus 0
/// of a generated experiment.
RealSweepOutput real_sweep(const Corpus& corpus, const SweepSettings& sweep,
                           std::uint64_t master_seed, const std::string& label = "real",
                           const ExecutionOptions& options = {});

}  // namespace topstab
