#pragma once

// Batch commands behind the topstab executable. Each writes its outputs plus
// a manifest.json listing the resolved configuration and the SHA-256 of
// every emitted file. Data files are byte-identical across re-runs with the
// same config and seed at any worker count; only the manifest's timestamps
// and wall times differ.
//
// Errors: UserError (and ConfigError) for problems the caller can fix,
// anything else is an internal failure.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

#include "topstab/config.hpp"
#include "topstab/measures.hpp"

namespace topstab::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> workers;
  std::optional<std::vector<Measure>> measures;
  /// Warnings and per-fit progress; silent when null.
  std::ostream* log = nullptr;
};

struct CommandOutput {
  /// Data files written, in manifest order (the manifest itself excluded).
  std::vector<std::filesystem::path> files;
  std::filesystem::path manifest;
};

/// corpus_NNN.txt, phi_NNN.csv, theta_NNN.csv per corpus plus a shared
/// vocabulary.txt.
CommandOutput cmd_generate(const std::filesystem::path& config_path,
                           const std::filesystem::path& out_dir, const Overrides& overrides = {});

/// samples.csv and stability.csv for a generated experiment.
CommandOutput cmd_sweep(const std::filesystem::path& config_path,
                        const std::filesystem::path& out_dir, const Overrides& overrides = {});

/// stability.csv (within only) for a directory of plain-text documents.
CommandOutput cmd_ingest_sweep(const std::filesystem::path& text_dir,
                               const std::filesystem::path& config_path,
                               const std::filesystem::path& out_dir,
                               const Overrides& overrides = {});

/// Writes each document as doc_NNNN.txt holding its terms separated by
/// spaces, so a generated corpus can be fed back through ingestion.
std::vector<std::filesystem::path> export_text(const Corpus& corpus,
                                               const std::filesystem::path& out_dir);

/// Applies overrides to a loaded config and re-validates it.
ToolConfig apply_overrides(ToolConfig config, const Overrides& overrides);

}  // namespace topstab::cli
