#pragma once

// Replicated-run experiment driver. For every corpus and every K it fits LDA
// once on the corpus as given and n-1 more times on shuffled copies, aligns
// each later run to the first ("within") and, when K equals the generating
// topic count, every run to the ground truth ("between").

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "topstab/alignment.hpp"
#include "topstab/generation.hpp"
#include "topstab/inference.hpp"
#include "topstab/measures.hpp"
#include "topstab/stability.hpp"

namespace topstab {

/// Which topic profiles drive the within-run matching. Between-run matching
/// against ground truth always uses phi.
enum class AlignBy { kPhi, kTheta };

struct SweepSettings {
  /// Template for every fit; topics, seed, and (when unset) alpha are filled
  /// in per unit.
  LdaConfig lda;
  std::size_t k_min = 7;
  std::size_t k_max = 13;
  std::size_t runs = 50;
  std::vector<Measure> measures = {Measure::kJss, Measure::kJis, Measure::kRbo};
  std::size_t top_n = kDefaultTopN;
  double rbo_p = kDefaultRboPersistence;
  AlignBy align_by = AlignBy::kPhi;
  Averaging averaging = Averaging::kCorpus;

  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

struct ExperimentPlan {
  GenerationConfig generation;
  SweepSettings sweep;

  void validate() const;
  /// Human-readable warnings, e.g. k_true outside the K range.
  std::vector<std::string> warnings() const;
};

struct RunRecord {
  std::size_t corpus_id = 0;
  std::size_t topics = 0;
  std::size_t run_id = 0;
  std::uint64_t run_seed = 0;
  double wall_seconds = 0.0;
  /// SHA-256 of the fitted phi's raw doubles.
  std::string phi_digest;
};

struct ExperimentOutput {
  /// Sorted by sample_key_less.
  std::vector<SimilaritySample> samples;
  /// Sorted by (corpus, K, run).
  std::vector<RunRecord> runs;
};

struct ExecutionOptions {
  /// Worker threads; 0 means one per available CPU.
  std::size_t workers = 0;
  /// One line per completed fit when non-null.
  std::ostream* progress = nullptr;
};

/// One corpus entering the replicate loop.
struct ReplicateInput {
  std::size_t corpus_id = 0;
  Corpus corpus;
  /// Generating phi, when known; enables between-samples at K == its K.
  std::optional<TopicWordMatrix> truth;
  std::uint64_t seed = 0;
};

/// Seed of run `run_id` (1-based) for `topics` under a corpus seed.
std::uint64_t run_seed(std::uint64_t corpus_seed, std::size_t topics, std::size_t run_id);

/// Runs the replicate loop over already-materialized corpora. Output is
/// identical for any worker count. A failing fit aborts the whole call with
/// std::runtime_error carrying its (corpus, K, run).
ExperimentOutput run_replicates(std::span<const ReplicateInput> inputs, const SweepSettings& sweep,
                                const ExecutionOptions& options = {});

/// Generates plan.generation.n_corpora corpora and runs the replicate loop.
ExperimentOutput execute(const ExperimentPlan& plan, const ExecutionOptions& options = {});

/// Stability records ordered by (distribution, measure, kind, K).
std::vector<StabilityRecord> sweep_report(std::span<const SimilaritySample> samples,
                                          const std::string& distribution,
                                          Averaging averaging = Averaging::kCorpus);

/// K with the lowest instability for (measure, kind); ties go to the lower
/// K. std::nullopt when no record matches.
std::optional<std::size_t> argmin_topics(std::span<const StabilityRecord> records, Measure measure,
                                         ComparisonKind kind);

}  // namespace topstab
