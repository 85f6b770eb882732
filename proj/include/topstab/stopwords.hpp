#pragma once

#include <filesystem>
#include <string>
#include <unordered_set>

namespace topstab {

using StopwordSet = std::unordered_set<std::string>;

/// Built-in English stopword list (the NLTK English list without the
/// apostrophe forms, which the alphabetic tokenizer never produces).
const StopwordSet& english_stopwords();

/// One token per line; blank lines and surrounding whitespace ignored,
/// entries lowercased. Throws std::runtime_error if the file is unreadable.
StopwordSet load_stopwords(const std::filesystem::path& path);

}  // namespace topstab
