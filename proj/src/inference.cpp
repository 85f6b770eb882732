#include "topstab/inference.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace topstab {
namespace {

// lgamma without touching the global signgam (arguments here are positive).
double log_gamma(double x) {
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

}  // namespace

void LdaConfig::validate() const {
  if (topics < 1) throw std::invalid_argument("lda.topics must be >= 1");
  if (alpha && !(*alpha > 0.0)) throw std::invalid_argument("lda.alpha must be > 0");
  if (!(beta > 0.0)) throw std::invalid_argument("lda.beta must be > 0");
  if (iterations <= burn_in) throw std::invalid_argument("lda.iterations must exceed lda.burn_in");
  if (thin < 1) throw std::invalid_argument("lda.thin must be >= 1");
}

GibbsState::GibbsState(const Corpus& corpus, std::size_t topics, double alpha, double beta,
                       std::uint64_t seed)
    : corpus_(&corpus),
      topics_(topics),
      terms_(corpus.num_terms()),
      alpha_(alpha),
      beta_(beta),
      word_topic_(corpus.num_terms() * topics, 0),
      doc_topic_(corpus.num_documents() * topics, 0),
      topic_totals_(topics, 0),
      weights_(topics, 0.0),
      rng_(seed) {
  const auto& docs = corpus.documents();
  z_.resize(docs.size());
  for (std::size_t m = 0; m < docs.size(); ++m) {
    z_[m].resize(docs[m].size());
    for (std::size_t i = 0; i < docs[m].size(); ++i) {
      const auto k = static_cast<TopicId>(rng_.below(topics_));
      z_[m][i] = k;
      ++word_topic_[docs[m][i] * topics_ + k];
      ++doc_topic_[m * topics_ + k];
      ++topic_totals_[k];
    }
  }
}

void GibbsState::sweep() {
  const auto& docs = corpus_->documents();
  const double v_beta = static_cast<double>(terms_) * beta_;
  const std::size_t kk = topics_;
  for (std::size_t m = 0; m < docs.size(); ++m) {
    const Document& doc = docs[m];
    std::int32_t* nd = doc_topic_.data() + m * kk;
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const TermId w = doc[i];
      std::int32_t* nw = word_topic_.data() + static_cast<std::size_t>(w) * kk;
      const TopicId old = z_[m][i];
      --nd[old];
      --nw[old];
      --topic_totals_[old];

      double total = 0.0;
      for (std::size_t k = 0; k < kk; ++k) {
        total += (nd[k] + alpha_) * (nw[k] + beta_) / (topic_totals_[k] + v_beta);
        weights_[k] = total;
      }
      const double target = rng_.uniform() * total;
      std::size_t k = 0;
      while (k + 1 < kk && weights_[k] <= target) {
        ++k;
      }

      z_[m][i] = static_cast<TopicId>(k);
      ++nd[k];
      ++nw[k];
      ++topic_totals_[k];
    }
  }
}

double GibbsState::log_likelihood() const {
  const std::size_t kk = topics_;
  const double v_beta = static_cast<double>(terms_) * beta_;
  const double k_alpha = static_cast<double>(kk) * alpha_;

  // log p(w | z)
  // Empty cells contribute lgamma(beta) - lgamma(beta) = 0 and are skipped.
  const double log_gamma_beta = log_gamma(beta_);
  double ll = static_cast<double>(kk) * log_gamma(v_beta);
  for (std::size_t k = 0; k < kk; ++k) {
    ll -= log_gamma(topic_totals_[k] + v_beta);
  }
  for (std::int32_t n : word_topic_) {
    if (n > 0) {
      ll += log_gamma(n + beta_) - log_gamma_beta;
    }
  }

  // log p(z)
  const std::size_t m_docs = corpus_->num_documents();
  ll += static_cast<double>(m_docs) * (log_gamma(k_alpha) - static_cast<double>(kk) * log_gamma(alpha_));
  for (std::size_t m = 0; m < m_docs; ++m) {
    std::int32_t length = 0;
    for (std::size_t k = 0; k < kk; ++k) {
      const std::int32_t n = doc_topic_[m * kk + k];
      length += n;
      ll += log_gamma(n + alpha_);
    }
    ll -= log_gamma(length + k_alpha);
  }
  return ll;
}

LdaResult fit(const Corpus& corpus, const LdaConfig& config) {
  config.validate();
  if (corpus.num_terms() < 2) {
    throw std::invalid_argument("LDA needs a vocabulary of at least 2 terms");
  }
  for (std::size_t m = 0; m < corpus.num_documents(); ++m) {
    if (corpus.document(m).empty()) {
      throw std::invalid_argument("document " + std::to_string(m) + " is empty");
    }
  }
  const std::size_t kk = config.topics;
  if (kk > corpus.num_tokens()) {
    throw std::invalid_argument("K=" + std::to_string(kk) + " exceeds the corpus token count " +
                                std::to_string(corpus.num_tokens()));
  }
  const double alpha = config.resolved_alpha();
  const double beta = config.beta;
  const std::size_t v = corpus.num_terms();
  const std::size_t m_docs = corpus.num_documents();

  GibbsState state(corpus, kk, alpha, beta, config.seed);

  std::vector<double> word_topic_sum(v * kk, 0.0);
  std::vector<double> doc_topic_sum(m_docs * kk, 0.0);
  std::vector<double> totals_sum(kk, 0.0);
  std::size_t samples = 0;

  std::vector<double> trace;
  trace.reserve(config.iterations);
  for (std::size_t s = 1; s <= config.iterations; ++s) {
    state.sweep();
    trace.push_back(state.log_likelihood());
    if (s > config.burn_in && (config.iterations - s) % config.thin == 0) {
      const auto& wt = state.word_topic();
      for (std::size_t i = 0; i < wt.size(); ++i) word_topic_sum[i] += wt[i];
      const auto& dt = state.doc_topic();
      for (std::size_t i = 0; i < dt.size(); ++i) doc_topic_sum[i] += dt[i];
      const auto& tt = state.topic_totals();
      for (std::size_t k = 0; k < kk; ++k) totals_sum[k] += tt[k];
      ++samples;
    }
  }

  const double inv = 1.0 / static_cast<double>(samples);
  const double v_beta = static_cast<double>(v) * beta;
  std::vector<double> phi(kk * v);
  for (std::size_t k = 0; k < kk; ++k) {
    const double denom = totals_sum[k] * inv + v_beta;
    for (std::size_t w = 0; w < v; ++w) {
      phi[k * v + w] = (word_topic_sum[w * kk + k] * inv + beta) / denom;
    }
  }
  const double k_alpha = static_cast<double>(kk) * alpha;
  std::vector<double> theta(m_docs * kk);
  for (std::size_t m = 0; m < m_docs; ++m) {
    const double denom = static_cast<double>(corpus.document(m).size()) + k_alpha;
    for (std::size_t k = 0; k < kk; ++k) {
      theta[m * kk + k] = (doc_topic_sum[m * kk + k] * inv + alpha) / denom;
    }
  }

  return LdaResult{TopicWordMatrix(kk, v, std::move(phi)), DocTopicMatrix(m_docs, kk, std::move(theta)),
                   std::move(trace)};
}

ShuffledCorpus shuffle_corpus(const Corpus& corpus, std::uint64_t seed) {
  std::vector<std::size_t> order(corpus.num_documents());
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  shuffle_in_place(order, rng);
  std::vector<Document> docs;
  docs.reserve(order.size());
  for (std::size_t idx : order) {
    docs.push_back(corpus.document(idx));
  }
  return ShuffledCorpus{Corpus(corpus.vocabulary(), std::move(docs), corpus.doc_length()),
                        std::move(order)};
}

}  // namespace topstab
