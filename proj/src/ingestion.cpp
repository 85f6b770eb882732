#include "topstab/ingestion.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "topstab/generation.hpp"
#include "topstab/porter.hpp"

namespace topstab {
namespace fs = std::filesystem;

namespace {

bool is_ascii_letter(unsigned char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); }

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot read " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

void PreprocessConfig::validate() const {
  if (min_term_count < 1) {
    throw std::invalid_argument("preprocess.min_term_count must be >= 1");
  }
  if (max_vocab && *max_vocab < 2) {
    throw std::invalid_argument("preprocess.max_vocab must be >= 2");
  }
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (unsigned char c : text) {
    if (is_ascii_letter(c)) {
      current.push_back(static_cast<char>(c | 0x20));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

std::vector<std::string> preprocess(std::string_view text, const StopwordSet& stopwords) {
  std::vector<std::string> out;
  for (auto& token : tokenize(text)) {
    if (stopwords.count(token)) continue;
    std::string stem = porter_stem(token);
    if (stem.empty() || stopwords.count(stem)) continue;
    out.push_back(std::move(stem));
  }
  return out;
}

IngestedCorpus ingest_texts(const std::vector<std::pair<std::string, std::string>>& named_texts,
                            const PreprocessConfig& config) {
  config.validate();
  if (named_texts.empty()) {
    throw std::invalid_argument("no documents to ingest");
  }
  const StopwordSet custom = config.stopword_file ? load_stopwords(*config.stopword_file) : StopwordSet{};
  const StopwordSet& stopwords = config.stopword_file ? custom : english_stopwords();

  std::vector<std::vector<std::string>> token_docs;
  token_docs.reserve(named_texts.size());
  std::unordered_map<std::string, std::size_t> frequency;
  for (const auto& [name, text] : named_texts) {
    token_docs.push_back(preprocess(text, stopwords));
    for (const auto& t : token_docs.back()) ++frequency[t];
  }

  std::vector<std::pair<std::string, std::size_t>> ranked;
  for (auto& [term, count] : frequency) {
    if (count >= config.min_term_count) ranked.emplace_back(term, count);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.second > b.second || (a.second == b.second && a.first < b.first);
  });
  if (config.max_vocab && ranked.size() > *config.max_vocab) {
    ranked.resize(*config.max_vocab);
  }

  std::vector<std::string> terms;
  std::unordered_map<std::string, TermId> index;
  terms.reserve(ranked.size());
  for (auto& [term, count] : ranked) {
    index.emplace(term, static_cast<TermId>(terms.size()));
    terms.push_back(term);
  }

  std::vector<Document> documents;
  std::vector<std::string> sources;
  for (std::size_t i = 0; i < token_docs.size(); ++i) {
    Document doc;
    for (const auto& t : token_docs[i]) {
      auto it = index.find(t);
      if (it != index.end()) doc.push_back(it->second);
    }
    if (doc.empty()) continue;
    documents.push_back(std::move(doc));
    sources.push_back(named_texts[i].first);
  }
  if (documents.empty()) {
    throw std::invalid_argument("every document was emptied by preprocessing");
  }
  if (terms.size() < 2) {
    throw std::invalid_argument("preprocessing left fewer than two distinct terms");
  }
  return IngestedCorpus{Corpus(Vocabulary(std::move(terms)), std::move(documents)), std::move(sources)};
}

IngestedCorpus ingest(const fs::path& directory, const PreprocessConfig& config) {
  if (!fs::is_directory(directory)) {
    throw std::invalid_argument(directory.string() + " is not a directory");
  }
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(directory)) {
    if (entry.is_regular_file()) files.push_back(entry.path());
  }
  if (files.empty()) {
    throw std::invalid_argument(directory.string() + " contains no files");
  }
  std::vector<std::pair<std::string, std::string>> texts;
  texts.reserve(files.size());
  for (const auto& path : files) {
    texts.emplace_back(fs::relative(path, directory).generic_string(), read_file(path));
  }
  std::sort(texts.begin(), texts.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return ingest_texts(texts, config);
}

RealSweepOutput real_sweep(const Corpus& corpus, const SweepSettings& sweep,
                           std::uint64_t master_seed, const std::string& label,
                           const ExecutionOptions& options) {
  std::vector<ReplicateInput> inputs;
  inputs.push_back(ReplicateInput{0, corpus, std::nullopt, corpus_seed(master_seed, 0)});
  RealSweepOutput out;
  out.experiment = run_replicates(inputs, sweep, options);
  out.report = sweep_report(out.experiment.samples, label, sweep.averaging);
  return out;
}

}  // namespace topstab
