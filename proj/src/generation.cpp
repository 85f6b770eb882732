#include "topstab/generation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "topstab/rng.hpp"

namespace topstab {
namespace {

// Sub-stream indices under a corpus seed.
enum Stream : std::uint64_t { kPhi = 1, kTheta = 2, kTokens = 3, kReinject = 4, kShuffle = 5 };

std::string format_parameter(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", value);
  return buf;
}

// Normalizes log-weights into a probability row. Entries that would underflow
// are floored at the smallest normal double so that every term keeps a
// non-zero weight in every topic; the row sum is unaffected at 1e-9.
void normalize_log_row(std::span<double> row) {
  const double max_log = *std::max_element(row.begin(), row.end());
  double sum = 0.0;
  for (double& x : row) {
    x = std::exp(x - max_log);
    sum += x;
  }
  constexpr double kFloor = std::numeric_limits<double>::min();
  for (double& x : row) {
    x = std::max(x / sum, kFloor);
  }
}

std::vector<double> dirichlet_row(Rng& rng, std::size_t size, double concentration) {
  std::vector<double> row(size);
  for (double& x : row) {
    x = rng.log_gamma_variate(concentration);
  }
  normalize_log_row(row);
  return row;
}

}  // namespace

std::string PhiFamily::label() const {
  switch (kind) {
    case Kind::kDirichlet:
      if (parameter == 0.0001) return "dir_small";
      if (parameter == 0.001) return "dir_mid";
      return "dirichlet_" + format_parameter(parameter);
    case Kind::kNormal:
      if (parameter == 1.0) return "normal_1";
      if (parameter == 10.0) return "normal_10";
      return "normal_" + format_parameter(parameter);
    case Kind::kUniformSeparable:
      return "uniform_separable";
  }
  return "unknown";
}

PhiFamily PhiFamily::parse(const std::string& label) {
  if (label == "dir_small") return dirichlet_small();
  if (label == "dir_mid") return dirichlet_mid();
  if (label == "normal_1") return normal_1();
  if (label == "normal_10") return normal_10();
  if (label == "uniform_separable") return uniform_separable();
  auto parse_value = [&](std::size_t prefix) {
    const std::string rest = label.substr(prefix);
    std::size_t used = 0;
    double value = 0.0;
    try {
      value = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      throw std::invalid_argument("bad distribution parameter in '" + label + "'");
    }
    return value;
  };
  PhiFamily family;
  if (label.rfind("dirichlet_", 0) == 0) {
    family = dirichlet(parse_value(10));
  } else if (label.rfind("normal_", 0) == 0) {
    family = normal(parse_value(7));
  } else {
    throw std::invalid_argument(
        "unknown distribution '" + label +
        "' (expected dir_small, dir_mid, normal_1, normal_10, uniform_separable, "
        "dirichlet_<beta> or normal_<sigma>)");
  }
  family.validate();
  return family;
}

void PhiFamily::validate() const {
  if (kind == Kind::kDirichlet && !(parameter > 0.0)) {
    throw std::invalid_argument("Dirichlet beta must be > 0");
  }
  if (kind == Kind::kNormal && !(parameter > 0.0)) {
    throw std::invalid_argument("Normal sigma must be > 0");
  }
}

void GenerationConfig::validate() const {
  auto require = [](bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
  };
  require(k_true >= 2, "k_true must be >= 2");
  require(documents >= 1, "documents must be >= 1");
  require(terms >= k_true, "terms must be >= k_true");
  require(terms >= 2, "terms must be >= 2");
  require(doc_length >= 1, "doc_length must be >= 1");
  require(alpha > 0.0, "alpha must be > 0");
  require(n_corpora >= 1, "n_corpora must be >= 1");
  require(reinject_min >= 1 && reinject_min <= reinject_max,
          "reinject range must satisfy 1 <= reinject_min <= reinject_max");
  phi_family.validate();
}

TopicWordMatrix sample_phi(const PhiFamily& family, std::size_t topics, std::size_t terms,
                           std::uint64_t seed) {
  if (topics < 1 || terms < 2) {
    throw std::invalid_argument("sample_phi needs K >= 1 and V >= 2");
  }
  family.validate();
  std::vector<double> data(topics * terms, 0.0);
  Rng rng(seed);

  switch (family.kind) {
    case PhiFamily::Kind::kDirichlet:
      for (std::size_t k = 0; k < topics; ++k) {
        auto row = dirichlet_row(rng, terms, family.parameter);
        std::copy(row.begin(), row.end(), data.begin() + k * terms);
      }
      break;
    case PhiFamily::Kind::kNormal:
      // Softmax of i.i.d. N(0, sigma^2) scores.
      for (std::size_t k = 0; k < topics; ++k) {
        std::span<double> row(data.data() + k * terms, terms);
        for (double& x : row) {
          x = family.parameter * rng.normal();
        }
        normalize_log_row(row);
      }
      break;
    case PhiFamily::Kind::kUniformSeparable: {
      if (terms < topics) {
        throw std::invalid_argument("uniform separable topics need V >= K");
      }
      // The first V mod K blocks take one extra term.
      const std::size_t base = terms / topics;
      const std::size_t extra = terms % topics;
      std::size_t start = 0;
      for (std::size_t k = 0; k < topics; ++k) {
        const std::size_t width = base + (k < extra ? 1 : 0);
        for (std::size_t j = start; j < start + width; ++j) {
          data[k * terms + j] = 1.0 / static_cast<double>(width);
        }
        start += width;
      }
      break;
    }
  }
  return TopicWordMatrix(topics, terms, std::move(data));
}

std::uint64_t corpus_seed(std::uint64_t master_seed, std::size_t index) {
  return derive_seed(master_seed, index);
}

GeneratedCorpus generate_corpus(const GenerationConfig& config, std::uint64_t seed) {
  config.validate();
  const std::size_t k = config.k_true;
  const std::size_t v = config.terms;
  const std::size_t m_docs = config.documents;

  TopicWordMatrix phi = sample_phi(config.phi_family, k, v, derive_seed(seed, kPhi));

  std::vector<double> theta_data(m_docs * k);
  {
    Rng rng(derive_seed(seed, kTheta));
    for (std::size_t m = 0; m < m_docs; ++m) {
      auto row = dirichlet_row(rng, k, config.alpha);
      std::copy(row.begin(), row.end(), theta_data.begin() + m * k);
    }
  }
  DocTopicMatrix theta(m_docs, k, std::move(theta_data));

  std::vector<std::vector<double>> phi_cdf(k);
  for (std::size_t t = 0; t < k; ++t) {
    phi_cdf[t] = cumulative(phi.row(t));
  }

  std::vector<Document> documents(m_docs);
  std::vector<std::vector<TopicId>> topics(m_docs);
  Rng rng(derive_seed(seed, kTokens));
  for (std::size_t m = 0; m < m_docs; ++m) {
    const auto theta_cdf = cumulative(theta.row(m));
    documents[m].reserve(config.doc_length + config.reinject_max);
    topics[m].reserve(config.doc_length + config.reinject_max);
    for (std::size_t i = 0; i < config.doc_length; ++i) {
      const auto z = static_cast<TopicId>(sample_cdf(theta_cdf, rng.uniform()));
      const auto w = static_cast<TermId>(sample_cdf(phi_cdf[z], rng.uniform()));
      topics[m].push_back(z);
      documents[m].push_back(w);
    }
  }

  GeneratedCorpus generated{
      Corpus(synthetic_vocabulary(v), std::move(documents), config.doc_length),
      GroundTruth{std::move(phi), std::move(theta), TopicAssignments(std::move(topics), k)}};

  generated = reinject_missing_terms(std::move(generated), derive_seed(seed, kReinject),
                                     {config.reinject_min, config.reinject_max});

  // Shuffle documents, carrying theta rows and assignments along.
  std::vector<std::size_t> order(m_docs);
  std::iota(order.begin(), order.end(), 0);
  Rng shuffle_rng(derive_seed(seed, kShuffle));
  shuffle_in_place(order, shuffle_rng);

  const auto& old_docs = generated.corpus.documents();
  const auto& old_topics = generated.truth.assignments.topics();
  const auto& old_theta = generated.truth.theta;
  std::vector<Document> docs_out(m_docs);
  std::vector<std::vector<TopicId>> topics_out(m_docs);
  std::vector<double> theta_out(m_docs * k);
  for (std::size_t i = 0; i < m_docs; ++i) {
    docs_out[i] = old_docs[order[i]];
    topics_out[i] = old_topics[order[i]];
    auto src = old_theta.row(order[i]);
    std::copy(src.begin(), src.end(), theta_out.begin() + i * k);
  }
  return GeneratedCorpus{
      Corpus(generated.corpus.vocabulary(), std::move(docs_out), config.doc_length),
      GroundTruth{std::move(generated.truth.phi), DocTopicMatrix(m_docs, k, std::move(theta_out)),
                  TopicAssignments(std::move(topics_out), k)}};
}

GeneratedCorpus reinject_missing_terms(GeneratedCorpus generated, std::uint64_t seed,
                                       const ReinjectOptions& options) {
  if (options.min_count < 1 || options.min_count > options.max_count) {
    throw std::invalid_argument("re-injection count range must satisfy 1 <= min <= max");
  }
  const Corpus& corpus = generated.corpus;
  const GroundTruth& truth = generated.truth;
  const std::size_t k = truth.phi.topics();
  const std::size_t v = corpus.num_terms();
  const std::size_t m_docs = corpus.num_documents();
  if (truth.phi.terms() != v || truth.theta.documents() != m_docs || truth.theta.topics() != k ||
      !truth.assignments.matches(corpus)) {
    throw std::invalid_argument("corpus and ground truth shapes disagree");
  }

  const auto counts = corpus.term_counts();
  std::vector<TermId> missing;
  for (std::size_t w = 0; w < v; ++w) {
    if (counts[w] == 0) {
      missing.push_back(static_cast<TermId>(w));
    }
  }
  if (missing.empty()) {
    return generated;
  }

  // Column-normalized phi for each missing term, checked up front so a
  // degenerate column leaves the input untouched.
  std::vector<std::vector<double>> topic_cdfs;
  topic_cdfs.reserve(missing.size());
  for (TermId w : missing) {
    std::vector<double> column(k);
    for (std::size_t t = 0; t < k; ++t) {
      column[t] = truth.phi.at(t, w);
    }
    auto cdf = cumulative(column);
    if (!(cdf.back() > 0.0)) {
      throw std::invalid_argument("term " + std::to_string(w) +
                                  " is missing and has zero probability under every topic");
    }
    topic_cdfs.push_back(std::move(cdf));
  }

  // Per-topic distribution over documents: theta column normalized.
  std::vector<std::vector<double>> doc_cdfs(k);
  for (std::size_t t = 0; t < k; ++t) {
    std::vector<double> column(m_docs);
    for (std::size_t m = 0; m < m_docs; ++m) {
      column[m] = truth.theta.at(m, t);
    }
    doc_cdfs[t] = cumulative(column);
  }

  std::vector<Document> documents = corpus.documents();
  std::vector<std::vector<TopicId>> topics = truth.assignments.topics();
  Rng rng(seed);
  const std::size_t span = options.max_count - options.min_count + 1;
  for (std::size_t i = 0; i < missing.size(); ++i) {
    const std::size_t occurrences = options.min_count + rng.below(span);
    for (std::size_t c = 0; c < occurrences; ++c) {
      const auto z = static_cast<TopicId>(sample_cdf(topic_cdfs[i], rng.uniform()));
      std::size_t m;
      if (doc_cdfs[z].back() > 0.0) {
        m = sample_cdf(doc_cdfs[z], rng.uniform());
      } else {
        // No document puts weight on this topic; fall back to uniform.
        m = rng.below(m_docs);
      }
      documents[m].push_back(missing[i]);
      topics[m].push_back(z);
    }
  }

  return GeneratedCorpus{
      Corpus(corpus.vocabulary(), std::move(documents), corpus.doc_length()),
      GroundTruth{truth.phi, truth.theta, TopicAssignments(std::move(topics), k)}};
}

}  // namespace topstab
