#pragma once

// Instability distance: the mean Euclidean distance of per-corpus
// (mean, variance) similarity points from the ideal point (1, 0).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "topstab/measures.hpp"

namespace topstab {

enum class ComparisonKind { kWithin, kBetween };

/// "within", "between".
std::string to_string(ComparisonKind kind);
ComparisonKind parse_kind(const std::string& name);

struct SimilaritySample {
  std::size_t corpus_id = 0;
  std::size_t run_id = 0;
  std::size_t topics = 0;
  Measure measure = Measure::kJss;
  ComparisonKind kind = ComparisonKind::kWithin;
  std::size_t pair_index = 0;
  double value = 0.0;

  friend bool operator==(const SimilaritySample&, const SimilaritySample&) = default;
};

/// Total order used for deterministic output: (corpus, K, run, kind,
/// measure, pair).
bool sample_key_less(const SimilaritySample& a, const SimilaritySample& b);

struct CorpusPoint {
  double mean = 0.0;
  double variance = 0.0;
};

/// Arithmetic mean and population variance. Throws std::invalid_argument on
/// empty input.
CorpusPoint corpus_point(std::span<const double> values);

/// (1/t) sum_i sqrt((mean_i - 1)^2 + variance_i^2), in [0, sqrt(2)].
/// Throws std::invalid_argument on empty input or out-of-range points.
double instability(std::span<const CorpusPoint> points);

/// What one point of the instability average stands for.
enum class Averaging {
  /// One point per corpus, pooling every run and topic pair in it.
  kCorpus,
  /// One point per (corpus, run), for sensitivity checks.
  kRun,
};

struct StabilityRecord {
  std::string distribution;
  std::size_t topics = 0;
  Measure measure = Measure::kJss;
  ComparisonKind kind = ComparisonKind::kWithin;
  /// Averages of the per-point means and variances.
  double mean = 0.0;
  double variance = 0.0;
  double instability = 0.0;
  /// Number of points averaged.
  std::size_t t = 0;

  friend bool operator==(const StabilityRecord&, const StabilityRecord&) = default;
};

/// One record per (K, measure, kind) present in `samples`, ordered by
/// (K, measure, kind). Throws std::invalid_argument for values outside [0, 1].
std::vector<StabilityRecord> stability_table(std::span<const SimilaritySample> samples,
                                             const std::string& distribution,
                                             Averaging averaging = Averaging::kCorpus);

}  // namespace topstab
