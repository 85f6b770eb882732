#pragma once

// JSON configuration shared by every command. All sections and keys are
// optional; omitted values take the defaults of the corresponding structs.
//
//   {
//     "generation": {"k_true", "documents", "terms", "doc_length", "alpha",
//                    "distribution", "n_corpora", "seed",
//                    "reinject_min", "reinject_max"},
//     "lda":        {"alpha", "beta", "iterations", "burn_in", "thin"},
//     "sweep":      {"k_min", "k_max", "runs", "measures", "top_n", "rbo_p",
//                    "align_by", "averaging"},
//     "preprocess": {"stopwords", "min_term_count", "max_vocab"}
//   }

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "topstab/harness.hpp"
#include "topstab/ingestion.hpp"

namespace topstab {

/// A problem the user can fix: bad config, bad paths, bad input data.
class UserError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public UserError {
 public:
  using UserError::UserError;
};

struct ToolConfig {
  ExperimentPlan plan;
  PreprocessConfig preprocess;
};

/// Parses and validates a config. `source` prefixes diagnostics, which carry
/// line:column for syntax errors and the dotted field path for value errors.
/// Throws ConfigError.
ToolConfig parse_config(std::string_view text, const std::string& source = "config");
ToolConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration, every default materialized.
nlohmann::ordered_json to_json(const ToolConfig& config);

std::string to_string(AlignBy align_by);
std::string to_string(Averaging averaging);

}  // namespace topstab
