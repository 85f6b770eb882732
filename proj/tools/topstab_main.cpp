// topstab: topic-model stability benchmarking from the command line.
//
// Exit status: 0 success, 1 user or configuration error, 2 internal failure.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "topstab/commands.hpp"
#include "topstab/io.hpp"

namespace {

constexpr int kExitUser = 1;
constexpr int kExitInternal = 2;

std::vector<topstab::Measure> parse_measure_list(const std::string& text) {
  std::vector<topstab::Measure> measures;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      measures.push_back(topstab::parse_measure(item));
    } catch (const std::invalid_argument& e) {
      throw topstab::ConfigError(std::string("--measures: ") + e.what());
    }
  }
  return measures;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topic-model stability benchmarking"};
  app.set_version_flag("--version", topstab::cli::kToolVersion);
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::string text_dir;
  std::string corpus_path;
  std::string vocab_path;
  std::uint64_t seed = 0;
  std::size_t workers = 0;
  std::string measures;
  bool quiet = false;

  auto add_common = [&](CLI::App* cmd, bool with_measures) {
    cmd->add_option("--config", config_path, "JSON configuration file")->required()->check(CLI::ExistingFile);
    cmd->add_option("--out", out_dir, "Output directory")->required();
    cmd->add_option("--seed", seed, "Master seed (overrides the config)");
    cmd->add_option("--workers", workers, "Worker threads (default: available CPUs)");
    if (with_measures) {
      cmd->add_option("--measures", measures, "Comma-separated subset of jss,jis,rbo");
    }
    cmd->add_flag("--quiet", quiet, "Suppress progress output");
  };

  auto* generate = app.add_subcommand("generate", "Generate synthetic corpora with ground truth");
  add_common(generate, false);
  auto* sweep = app.add_subcommand("sweep", "Generate corpora and run the K sweep");
  add_common(sweep, true);
  auto* ingest_sweep =
      app.add_subcommand("ingest-sweep", "Ingest a directory of text files and run the K sweep");
  ingest_sweep->add_option("text_dir", text_dir, "Directory of plain-text documents")
      ->required()
      ->check(CLI::ExistingDirectory);
  add_common(ingest_sweep, true);
  auto* export_cmd =
      app.add_subcommand("export-text", "Write a corpus file back out as one text file per document");
  export_cmd->add_option("--corpus", corpus_path, "Corpus file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--vocab", vocab_path, "Vocabulary file")->required()->check(CLI::ExistingFile);
  export_cmd->add_option("--out", out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUser;
  }

  try {
    topstab::cli::Overrides overrides;
    for (auto* cmd : {generate, sweep, ingest_sweep}) {
      if (!cmd->parsed()) continue;
      if (cmd->count("--seed")) overrides.seed = seed;
      if (cmd->count("--workers")) overrides.workers = workers;
      if (cmd != generate && cmd->count("--measures")) overrides.measures = parse_measure_list(measures);
    }
    if (!quiet) overrides.log = &std::cerr;

    if (generate->parsed()) {
      topstab::cli::cmd_generate(config_path, out_dir, overrides);
    } else if (sweep->parsed()) {
      topstab::cli::cmd_sweep(config_path, out_dir, overrides);
    } else if (ingest_sweep->parsed()) {
      topstab::cli::cmd_ingest_sweep(text_dir, config_path, out_dir, overrides);
    } else if (export_cmd->parsed()) {
      topstab::Corpus corpus;
      try {
        const auto vocabulary = topstab::io::parse_vocabulary(topstab::io::read_text(vocab_path));
        corpus = topstab::io::parse_corpus(topstab::io::read_text(corpus_path), vocabulary);
      } catch (const std::runtime_error& e) {
        throw topstab::UserError(e.what());
      }
      topstab::cli::export_text(corpus, out_dir);
    }
  } catch (const topstab::UserError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUser;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return 0;
}
