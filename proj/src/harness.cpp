#include "topstab/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "topstab/digest.hpp"
#include "topstab/rng.hpp"

namespace topstab {
namespace {

constexpr std::uint64_t kTopicStreamBase = 1000;
constexpr std::uint64_t kShuffleStream = 1;

struct Unit {
  std::size_t input;  // index into inputs
  std::size_t topics;
  std::size_t run_id;  // 1-based
};

struct FitOutput {
  TopicWordMatrix phi;
  DocTopicMatrix theta;
  std::vector<std::size_t> order;
  std::vector<TopNList> top;
};

std::vector<TopNList> top_lists(const TopicWordMatrix& phi, std::size_t n) {
  std::vector<TopNList> lists;
  lists.reserve(phi.topics());
  for (std::size_t k = 0; k < phi.topics(); ++k) {
    lists.push_back(top_n(phi.row(k), n));
  }
  return lists;
}

void emit_pair_samples(const SweepSettings& sweep, const TopicWordMatrix& ref_phi,
                       const std::vector<TopNList>& ref_top, const FitOutput& cand,
                       const TopicMatching& matching, SimilaritySample base,
                       std::vector<SimilaritySample>& out) {
  for (const auto& pair : matching.pairs) {
    base.pair_index = pair.reference;
    for (Measure measure : sweep.measures) {
      base.measure = measure;
      switch (measure) {
        case Measure::kJss:
          base.value = jss_unchecked(ref_phi.row(pair.reference), cand.phi.row(pair.candidate));
          break;
        case Measure::kJis:
          base.value = jis(ref_top[pair.reference], cand.top[pair.candidate]);
          break;
        case Measure::kRbo:
          base.value = rbo(ref_top[pair.reference], cand.top[pair.candidate], sweep.rbo_p);
          break;
      }
      out.push_back(base);
    }
  }
}

// Samples for one (corpus, K) group once all of its runs are fitted.
std::vector<SimilaritySample> compare_group(const ReplicateInput& input, std::size_t topics,
                                            const std::vector<FitOutput>& fits,
                                            const SweepSettings& sweep) {
  std::vector<SimilaritySample> out;
  const FitOutput& base = fits.front();

  std::optional<StochasticMatrix> base_profiles;
  if (sweep.align_by == AlignBy::kTheta) {
    base_profiles = topic_document_profiles(base.theta, base.order);
  }
  for (std::size_t r = 1; r < fits.size(); ++r) {
    const FitOutput& cand = fits[r];
    const SimilarityMatrix sim =
        sweep.align_by == AlignBy::kPhi
            ? jss_matrix(base.phi, cand.phi)
            : jss_matrix(*base_profiles, topic_document_profiles(cand.theta, cand.order));
    SimilaritySample proto;
    proto.corpus_id = input.corpus_id;
    proto.run_id = r + 1;
    proto.topics = topics;
    proto.kind = ComparisonKind::kWithin;
    emit_pair_samples(sweep, base.phi, base.top, cand, greedy_match(sim), proto, out);
  }

  if (input.truth && input.truth->topics() == topics) {
    const auto truth_top = top_lists(*input.truth, sweep.top_n);
    for (std::size_t r = 0; r < fits.size(); ++r) {
      SimilaritySample proto;
      proto.corpus_id = input.corpus_id;
      proto.run_id = r + 1;
      proto.topics = topics;
      proto.kind = ComparisonKind::kBetween;
      emit_pair_samples(sweep, *input.truth, truth_top, fits[r],
                        greedy_match(jss_matrix(*input.truth, fits[r].phi)), proto, out);
    }
  }
  return out;
}

std::string phi_digest(const TopicWordMatrix& phi) {
  const auto& data = phi.data();
  return sha256_hex(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(data.data()), data.size() * sizeof(double)));
}

}  // namespace

void SweepSettings::validate() const {
  if (k_min < 1 || k_min > k_max) {
    throw std::invalid_argument("sweep K range must satisfy 1 <= k_min <= k_max");
  }
  if (runs < 2) {
    throw std::invalid_argument("sweep.runs must be >= 2");
  }
  if (measures.empty()) {
    throw std::invalid_argument("sweep.measures must name at least one measure");
  }
  if (top_n < 1) {
    throw std::invalid_argument("sweep.top_n must be >= 1");
  }
  if (!(rbo_p > 0.0 && rbo_p < 1.0)) {
    throw std::invalid_argument("sweep.rbo_p must lie in (0, 1)");
  }
  LdaConfig probe = lda;
  probe.topics = k_min;
  probe.validate();
}

void ExperimentPlan::validate() const {
  generation.validate();
  sweep.validate();
  if (sweep.top_n > generation.terms) {
    throw std::invalid_argument("sweep.top_n exceeds the vocabulary size");
  }
}

std::vector<std::string> ExperimentPlan::warnings() const {
  std::vector<std::string> out;
  if (generation.k_true < sweep.k_min || generation.k_true > sweep.k_max) {
    out.push_back("k_true=" + std::to_string(generation.k_true) + " lies outside the K range [" +
                  std::to_string(sweep.k_min) + ", " + std::to_string(sweep.k_max) +
                  "]; no between-samples will be produced");
  }
  return out;
}

std::uint64_t run_seed(std::uint64_t corpus_seed, std::size_t topics, std::size_t run_id) {
  return derive_seed(derive_seed(corpus_seed, kTopicStreamBase + topics), run_id);
}

ExperimentOutput run_replicates(std::span<const ReplicateInput> inputs, const SweepSettings& sweep,
                                const ExecutionOptions& options) {
  sweep.validate();
  for (const auto& input : inputs) {
    if (sweep.top_n > input.corpus.num_terms()) {
      throw std::invalid_argument("sweep.top_n exceeds the vocabulary size of corpus " +
                                  std::to_string(input.corpus_id));
    }
  }

  // Work list in (corpus, K, run) order; groups are contiguous.
  std::vector<Unit> units;
  const std::size_t k_count = sweep.k_max - sweep.k_min + 1;
  units.reserve(inputs.size() * k_count * sweep.runs);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    for (std::size_t k = sweep.k_min; k <= sweep.k_max; ++k) {
      for (std::size_t r = 1; r <= sweep.runs; ++r) {
        units.push_back({i, k, r});
      }
    }
  }
  const std::size_t group_count = inputs.size() * k_count;

  struct Group {
    std::vector<std::optional<FitOutput>> fits;
    std::size_t done = 0;
    std::vector<SimilaritySample> samples;
  };
  std::vector<Group> groups(group_count);
  for (auto& g : groups) g.fits.resize(sweep.runs);
  std::vector<RunRecord> records(units.size());

  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::string failure;

  auto worker = [&] {
    for (;;) {
      if (failed.load()) return;
      const std::size_t u = next.fetch_add(1);
      if (u >= units.size()) return;
      const Unit& unit = units[u];
      const ReplicateInput& input = inputs[unit.input];
      const std::size_t group_index = u / sweep.runs;
      try {
        const auto start = std::chrono::steady_clock::now();
        LdaConfig config = sweep.lda;
        config.topics = unit.topics;
        config.seed = run_seed(input.seed, unit.topics, unit.run_id);

        FitOutput out;
        LdaResult result;
        if (unit.run_id == 1) {
          result = fit(input.corpus, config);
          out.order.resize(input.corpus.num_documents());
          for (std::size_t m = 0; m < out.order.size(); ++m) out.order[m] = m;
        } else {
          ShuffledCorpus shuffled = shuffle_corpus(input.corpus, derive_seed(config.seed, kShuffleStream));
          result = fit(shuffled.corpus, config);
          out.order = std::move(shuffled.order);
        }
        out.top = top_lists(result.phi, sweep.top_n);
        out.phi = std::move(result.phi);
        out.theta = std::move(result.theta);
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

        records[u] = RunRecord{input.corpus_id, unit.topics, unit.run_id, config.seed, seconds,
                               phi_digest(out.phi)};

        std::vector<FitOutput> complete;
        {
          std::lock_guard lock(mutex);
          Group& group = groups[group_index];
          group.fits[unit.run_id - 1] = std::move(out);
          if (++group.done == sweep.runs) {
            complete.reserve(sweep.runs);
            for (auto& f : group.fits) complete.push_back(std::move(*f));
            group.fits.clear();
          }
          if (options.progress) {
            char line[160];
            std::snprintf(line, sizeof line, "corpus %zu K=%zu run %zu %.3fs\n", input.corpus_id,
                          unit.topics, unit.run_id, seconds);
            *options.progress << line << std::flush;
          }
        }
        if (!complete.empty()) {
          auto samples = compare_group(input, unit.topics, complete, sweep);
          std::lock_guard lock(mutex);
          groups[group_index].samples = std::move(samples);
        }
      } catch (const std::exception& e) {
        std::lock_guard lock(mutex);
        if (!failed.exchange(true)) {
          failure = "corpus " + std::to_string(input.corpus_id) + ", K=" +
                    std::to_string(unit.topics) + ", run " + std::to_string(unit.run_id) + ": " +
                    e.what();
        }
        return;
      }
    }
  };

  std::size_t workers = options.workers;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
  }
  workers = std::min(workers, std::max<std::size_t>(units.size(), 1));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (failed.load()) {
    throw std::runtime_error(failure);
  }

  ExperimentOutput output;
  for (auto& g : groups) {
    output.samples.insert(output.samples.end(), g.samples.begin(), g.samples.end());
  }
  std::sort(output.samples.begin(), output.samples.end(), sample_key_less);
  output.runs = std::move(records);
  return output;
}

ExperimentOutput execute(const ExperimentPlan& plan, const ExecutionOptions& options) {
  plan.validate();
  const auto& gen = plan.generation;
  std::vector<ReplicateInput> inputs(gen.n_corpora);

  // Corpus generation is itself embarrassingly parallel.
  std::atomic<std::size_t> next{0};
  std::mutex mutex;
  std::exception_ptr error;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= inputs.size()) return;
      try {
        const std::uint64_t seed = corpus_seed(gen.master_seed, i);
        GeneratedCorpus generated = generate_corpus(gen, seed);
        inputs[i] = ReplicateInput{i, std::move(generated.corpus), std::move(generated.truth.phi), seed};
      } catch (...) {
        std::lock_guard lock(mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::size_t workers = options.workers == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                             : options.workers;
  workers = std::min(workers, inputs.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  return run_replicates(inputs, plan.sweep, options);
}

std::vector<StabilityRecord> sweep_report(std::span<const SimilaritySample> samples,
                                          const std::string& distribution, Averaging averaging) {
  auto records = stability_table(samples, distribution, averaging);
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    return std::tie(a.distribution, a.measure, a.kind, a.topics) <
           std::tie(b.distribution, b.measure, b.kind, b.topics);
  });
  return records;
}

std::optional<std::size_t> argmin_topics(std::span<const StabilityRecord> records, Measure measure,
                                         ComparisonKind kind) {
  std::optional<std::size_t> best;
  double best_value = 0.0;
  for (const auto& r : records) {
    if (r.measure != measure || r.kind != kind) continue;
    if (!best || r.instability < best_value || (r.instability == best_value && r.topics < *best)) {
      best = r.topics;
      best_value = r.instability;
    }
  }
  return best;
}

}  // namespace topstab
