#include "topstab/commands.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

#include "topstab/digest.hpp"
#include "topstab/generation.hpp"
#include "topstab/harness.hpp"
#include "topstab/ingestion.hpp"
#include "topstab/io.hpp"

namespace topstab::cli {
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string numbered(const char* prefix, std::size_t index, std::size_t total, const char* ext) {
  const int width = std::max<int>(3, static_cast<int>(std::to_string(total > 0 ? total - 1 : 0).size()));
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%0*zu%s", prefix, width, index, ext);
  return buf;
}

void prepare_output(const fs::path& out_dir) {
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw UserError("cannot create output directory " + out_dir.string() +
                    (ec ? ": " + ec.message() : ""));
  }
}

void write_output(const fs::path& path, std::string_view text) {
  try {
    io::write_text(path, text);
  } catch (const std::runtime_error& e) {
    throw UserError(e.what());
  }
}

std::size_t resolve_workers(const Overrides& overrides) {
  if (overrides.workers && *overrides.workers > 0) return *overrides.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

class Manifest {
 public:
  Manifest(std::string command, const ToolConfig& config) {
    json_["tool"] = "topstab";
    json_["version"] = kToolVersion;
    json_["command"] = std::move(command);
    json_["started_at"] = utc_now();
    json_["master_seed"] = config.plan.generation.master_seed;
    json_["config"] = to_json(config);
  }

  ordered_json& json() { return json_; }

  fs::path write(const fs::path& out_dir, const std::vector<fs::path>& files) {
    ordered_json listed = ordered_json::array();
    for (const auto& f : files) {
      listed.push_back({{"name", f.filename().string()}, {"sha256", sha256_file(f)}});
    }
    json_["files"] = std::move(listed);
    json_["finished_at"] = utc_now();
    const fs::path path = out_dir / "manifest.json";
    write_output(path, json_.dump(2) + "\n");
    return path;
  }

 private:
  ordered_json json_;
};

ordered_json runs_json(const std::vector<RunRecord>& runs) {
  ordered_json out = ordered_json::array();
  for (const auto& r : runs) {
    out.push_back({{"corpus_id", r.corpus_id},
                   {"K", r.topics},
                   {"run_id", r.run_id},
                   {"run_seed", r.run_seed},
                   {"wall_seconds", r.wall_seconds},
                   {"phi_sha256", r.phi_digest}});
  }
  return out;
}

}  // namespace

ToolConfig apply_overrides(ToolConfig config, const Overrides& overrides) {
  if (overrides.seed) config.plan.generation.master_seed = *overrides.seed;
  if (overrides.measures) {
    if (overrides.measures->empty()) throw ConfigError("--measures must name at least one measure");
    config.plan.sweep.measures = *overrides.measures;
  }
  try {
    config.plan.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return config;
}

CommandOutput cmd_generate(const fs::path& config_path, const fs::path& out_dir,
                           const Overrides& overrides) {
  const ToolConfig config = apply_overrides(load_config(config_path), overrides);
  const GenerationConfig& gen = config.plan.generation;
  prepare_output(out_dir);
  Manifest manifest("generate", config);

  CommandOutput output;
  const fs::path vocab_path = out_dir / "vocabulary.txt";
  write_output(vocab_path, io::format_vocabulary(synthetic_vocabulary(gen.terms)));
  output.files.push_back(vocab_path);

  // Generate a batch of corpora in parallel, then write them in index order.
  const std::size_t workers = std::min(resolve_workers(overrides), gen.n_corpora);
  for (std::size_t first = 0; first < gen.n_corpora; first += workers) {
    const std::size_t count = std::min(workers, gen.n_corpora - first);
    std::vector<std::optional<GeneratedCorpus>> batch(count);
    std::atomic<std::size_t> next{0};
    std::mutex mutex;
    std::exception_ptr error;
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < count; ++w) {
        pool.emplace_back([&] {
          for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
            try {
              batch[i] = generate_corpus(gen, corpus_seed(gen.master_seed, first + i));
            } catch (...) {
              std::lock_guard lock(mutex);
              if (!error) error = std::current_exception();
            }
          }
        });
      }
    }
    if (error) std::rethrow_exception(error);
    for (std::size_t i = 0; i < count; ++i) {
      const std::size_t index = first + i;
      const auto& g = *batch[i];
      const fs::path corpus_path = out_dir / numbered("corpus", index, gen.n_corpora, ".txt");
      const fs::path phi_path = out_dir / numbered("phi", index, gen.n_corpora, ".csv");
      const fs::path theta_path = out_dir / numbered("theta", index, gen.n_corpora, ".csv");
      write_output(corpus_path, io::format_corpus(g.corpus));
      write_output(phi_path, io::format_matrix(g.truth.phi));
      write_output(theta_path, io::format_matrix(g.truth.theta));
      output.files.insert(output.files.end(), {corpus_path, phi_path, theta_path});
      if (overrides.log) {
        *overrides.log << "generated corpus " << index << " (" << g.corpus.num_tokens()
                       << " tokens)\n";
      }
    }
  }
  output.manifest = manifest.write(out_dir, output.files);
  return output;
}

CommandOutput cmd_sweep(const fs::path& config_path, const fs::path& out_dir,
                        const Overrides& overrides) {
  const ToolConfig config = apply_overrides(load_config(config_path), overrides);
  if (overrides.log) {
    for (const auto& warning : config.plan.warnings()) *overrides.log << "warning: " << warning << "\n";
  }
  prepare_output(out_dir);
  Manifest manifest("sweep", config);

  ExecutionOptions options;
  options.workers = resolve_workers(overrides);
  options.progress = overrides.log;
  const ExperimentOutput result = execute(config.plan, options);
  const auto report = sweep_report(result.samples, config.plan.generation.phi_family.label(),
                                   config.plan.sweep.averaging);

  CommandOutput output;
  const fs::path samples_path = out_dir / "samples.csv";
  const fs::path stability_path = out_dir / "stability.csv";
  write_output(samples_path, io::format_samples(result.samples));
  write_output(stability_path, io::format_stability(report));
  output.files = {samples_path, stability_path};
  manifest.json()["runs"] = runs_json(result.runs);
  output.manifest = manifest.write(out_dir, output.files);
  return output;
}

CommandOutput cmd_ingest_sweep(const fs::path& text_dir, const fs::path& config_path,
                               const fs::path& out_dir, const Overrides& overrides) {
  const ToolConfig config = apply_overrides(load_config(config_path), overrides);
  IngestedCorpus ingested;
  try {
    ingested = ingest(text_dir, config.preprocess);
  } catch (const std::invalid_argument& e) {
    throw UserError(e.what());
  }
  if (config.plan.sweep.top_n > ingested.corpus.num_terms()) {
    throw UserError("sweep.top_n exceeds the ingested vocabulary size " +
                    std::to_string(ingested.corpus.num_terms()));
  }
  prepare_output(out_dir);
  Manifest manifest("ingest-sweep", config);
  manifest.json()["input"] = {{"directory", text_dir.string()},
                              {"documents", ingested.corpus.num_documents()},
                              {"terms", ingested.corpus.num_terms()},
                              {"tokens", ingested.corpus.num_tokens()}};

  ExecutionOptions options;
  options.workers = resolve_workers(overrides);
  options.progress = overrides.log;
  const RealSweepOutput result = real_sweep(ingested.corpus, config.plan.sweep,
                                            config.plan.generation.master_seed, "real", options);

  CommandOutput output;
  const fs::path stability_path = out_dir / "stability.csv";
  write_output(stability_path, io::format_stability(result.report));
  output.files = {stability_path};
  manifest.json()["runs"] = runs_json(result.experiment.runs);
  output.manifest = manifest.write(out_dir, output.files);
  return output;
}

std::vector<fs::path> export_text(const Corpus& corpus, const fs::path& out_dir) {
  prepare_output(out_dir);
  std::vector<fs::path> files;
  files.reserve(corpus.num_documents());
  for (std::size_t m = 0; m < corpus.num_documents(); ++m) {
    std::string text;
    for (TermId w : corpus.document(m)) {
      if (!text.empty()) text.push_back(' ');
      text += corpus.vocabulary().term(w);
    }
    text.push_back('\n');
    const fs::path path = out_dir / numbered("doc", m, std::max<std::size_t>(corpus.num_documents(), 10000), ".txt");
    write_output(path, text);
    files.push_back(path);
  }
  return files;
}

}  // namespace topstab::cli
