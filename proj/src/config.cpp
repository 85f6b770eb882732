#include "topstab/config.hpp"

#include <algorithm>
#include <set>

#include "topstab/io.hpp"

namespace topstab {
namespace {

using nlohmann::json;

class Section {
 public:
  Section(const json& root, std::string name, const std::string& source,
          std::set<std::string> allowed)
      : name_(std::move(name)), source_(source) {
    if (!root.contains(name_)) return;
    node_ = &root.at(name_);
    if (!node_->is_object()) fail(name_, "must be an object");
    for (const auto& [key, value] : node_->items()) {
      if (!allowed.count(key)) fail(name_ + "." + key, "unknown key");
    }
  }

  [[noreturn]] void fail(const std::string& field, const std::string& message) const {
    throw ConfigError(source_ + ": " + field + ": " + message);
  }

  const json* find(const std::string& key) const {
    if (!node_ || !node_->contains(key)) return nullptr;
    const json& value = node_->at(key);
    return value.is_null() ? nullptr : &value;
  }

  std::string path(const std::string& key) const { return name_ + "." + key; }

  void count(const std::string& key, std::size_t& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number_integer() || v->get<long long>() < 0) fail(path(key), "must be a non-negative integer");
      out = v->get<std::size_t>();
    }
  }

  void seed(const std::string& key, std::uint64_t& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number_unsigned()) {
        fail(path(key), "must be an unsigned 64-bit integer");
      }
      out = v->get<std::uint64_t>();
    }
  }

  void real(const std::string& key, double& out) const {
    if (const json* v = find(key)) {
      if (!v->is_number()) fail(path(key), "must be a number");
      out = v->get<double>();
    }
  }

  void text(const std::string& key, std::string& out) const {
    if (const json* v = find(key)) {
      if (!v->is_string()) fail(path(key), "must be a string");
      out = v->get<std::string>();
    }
  }

 private:
  const json* node_ = nullptr;
  std::string name_;
  const std::string& source_;
};

std::pair<std::size_t, std::size_t> line_column(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t column = 1;
  for (std::size_t i = 0; i < std::min(byte, text.size()); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

std::string to_string(AlignBy align_by) { return align_by == AlignBy::kPhi ? "phi" : "theta"; }

std::string to_string(Averaging averaging) {
  return averaging == Averaging::kCorpus ? "corpus" : "run";
}

ToolConfig parse_config(std::string_view text, const std::string& source) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    // nlohmann reports the byte just past the offending character.
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ConfigError(source + ":" + std::to_string(line) + ":" + std::to_string(column) +
                      ": syntax error");
  }
  if (!root.is_object()) {
    throw ConfigError(source + ": top level must be an object");
  }
  for (const auto& [key, value] : root.items()) {
    if (key != "generation" && key != "lda" && key != "sweep" && key != "preprocess") {
      throw ConfigError(source + ": " + key + ": unknown section");
    }
  }

  ToolConfig config;
  auto& gen = config.plan.generation;
  auto& sweep = config.plan.sweep;
  auto& lda = sweep.lda;
  auto& pre = config.preprocess;

  const Section g(root, "generation", source,
                  {"k_true", "documents", "terms", "doc_length", "alpha", "distribution",
                   "n_corpora", "seed", "reinject_min", "reinject_max"});
  g.count("k_true", gen.k_true);
  g.count("documents", gen.documents);
  g.count("terms", gen.terms);
  g.count("doc_length", gen.doc_length);
  g.real("alpha", gen.alpha);
  g.count("n_corpora", gen.n_corpora);
  g.seed("seed", gen.master_seed);
  g.count("reinject_min", gen.reinject_min);
  g.count("reinject_max", gen.reinject_max);
  {
    std::string label;
    g.text("distribution", label);
    if (!label.empty()) {
      try {
        gen.phi_family = PhiFamily::parse(label);
      } catch (const std::invalid_argument& e) {
        g.fail("generation.distribution", e.what());
      }
    }
  }

  const Section l(root, "lda", source, {"alpha", "beta", "iterations", "burn_in", "thin"});
  if (l.find("alpha")) {
    double alpha = 0.0;
    l.real("alpha", alpha);
    lda.alpha = alpha;
  }
  l.real("beta", lda.beta);
  l.count("iterations", lda.iterations);
  l.count("burn_in", lda.burn_in);
  l.count("thin", lda.thin);

  const Section s(root, "sweep", source,
                  {"k_min", "k_max", "runs", "measures", "top_n", "rbo_p", "align_by", "averaging"});
  s.count("k_min", sweep.k_min);
  s.count("k_max", sweep.k_max);
  s.count("runs", sweep.runs);
  s.count("top_n", sweep.top_n);
  s.real("rbo_p", sweep.rbo_p);
  if (const json* v = s.find("measures")) {
    if (!v->is_array()) s.fail("sweep.measures", "must be an array of strings");
    sweep.measures.clear();
    for (const auto& item : *v) {
      if (!item.is_string()) s.fail("sweep.measures", "must be an array of strings");
      try {
        sweep.measures.push_back(parse_measure(item.get<std::string>()));
      } catch (const std::invalid_argument& e) {
        s.fail("sweep.measures", e.what());
      }
    }
  }
  {
    std::string align = to_string(sweep.align_by);
    s.text("align_by", align);
    if (align == "phi") {
      sweep.align_by = AlignBy::kPhi;
    } else if (align == "theta") {
      sweep.align_by = AlignBy::kTheta;
    } else {
      s.fail("sweep.align_by", "must be \"phi\" or \"theta\"");
    }
    std::string averaging = to_string(sweep.averaging);
    s.text("averaging", averaging);
    if (averaging == "corpus") {
      sweep.averaging = Averaging::kCorpus;
    } else if (averaging == "run") {
      sweep.averaging = Averaging::kRun;
    } else {
      s.fail("sweep.averaging", "must be \"corpus\" or \"run\"");
    }
  }

  const Section p(root, "preprocess", source, {"stopwords", "min_term_count", "max_vocab"});
  {
    std::string stopwords;
    p.text("stopwords", stopwords);
    if (!stopwords.empty()) pre.stopword_file = stopwords;
  }
  p.count("min_term_count", pre.min_term_count);
  if (p.find("max_vocab")) {
    std::size_t cap = 0;
    p.count("max_vocab", cap);
    pre.max_vocab = cap;
  }

  try {
    config.plan.validate();
    pre.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source + ": " + e.what());
  }
  return config;
}

ToolConfig load_config(const std::filesystem::path& path) {
  std::string text;
  try {
    text = io::read_text(path);
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  return parse_config(text, path.string());
}

nlohmann::ordered_json to_json(const ToolConfig& config) {
  const auto& gen = config.plan.generation;
  const auto& sweep = config.plan.sweep;
  const auto& lda = sweep.lda;
  const auto& pre = config.preprocess;
  nlohmann::ordered_json j;
  j["generation"] = {
      {"k_true", gen.k_true},
      {"documents", gen.documents},
      {"terms", gen.terms},
      {"doc_length", gen.doc_length},
      {"alpha", gen.alpha},
      {"distribution", gen.phi_family.label()},
      {"n_corpora", gen.n_corpora},
      {"seed", gen.master_seed},
      {"reinject_min", gen.reinject_min},
      {"reinject_max", gen.reinject_max},
  };
  j["lda"] = {
      // null stands for the 50/K default.
      {"alpha", lda.alpha ? nlohmann::ordered_json(*lda.alpha) : nlohmann::ordered_json(nullptr)},
      {"beta", lda.beta},
      {"iterations", lda.iterations},
      {"burn_in", lda.burn_in},
      {"thin", lda.thin},
  };
  nlohmann::ordered_json measures = nlohmann::ordered_json::array();
  for (Measure m : sweep.measures) measures.push_back(to_string(m));
  j["sweep"] = {
      {"k_min", sweep.k_min},
      {"k_max", sweep.k_max},
      {"runs", sweep.runs},
      {"measures", measures},
      {"top_n", sweep.top_n},
      {"rbo_p", sweep.rbo_p},
      {"align_by", to_string(sweep.align_by)},
      {"averaging", to_string(sweep.averaging)},
  };
  j["preprocess"] = {
      {"stopwords", pre.stopword_file ? nlohmann::ordered_json(pre.stopword_file->string())
                                      : nlohmann::ordered_json(nullptr)},
      {"min_term_count", pre.min_term_count},
      {"max_vocab", pre.max_vocab ? nlohmann::ordered_json(*pre.max_vocab) : nlohmann::ordered_json(nullptr)},
  };
  return j;
}

}  // namespace topstab
