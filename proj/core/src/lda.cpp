// Copyright 2026 The Bibliotext Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>

#include "bibliotext/error.hpp"
#include "bibliotext/topics.hpp"

namespace bibliotext {

namespace {

void CheckFitParams(const TopicModelParams& params) {
  if (params.k < 1 || !(params.alpha > 0) || !(params.beta > 0) ||
      params.iterations < 1 || params.top_n < 0) {
    throw Error(ErrorCode::kInvalidParams,
                "require k >= 1, alpha > 0, beta > 0, iterations >= 1");
  }
}

}  // namespace

void TopicModelParams::Validate() const {
  if (k < 2) throw Error(ErrorCode::kInvalidParams, "k must be >= 2");
  if (!(alpha > 0)) throw Error(ErrorCode::kInvalidParams, "alpha must be > 0");
  if (!(beta > 0)) throw Error(ErrorCode::kInvalidParams, "beta must be > 0");
  if (iterations < 1) {
    throw Error(ErrorCode::kInvalidParams, "iterations must be >= 1");
  }
  if (top_n < 1) throw Error(ErrorCode::kInvalidParams, "top_n must be >= 1");
  if (!(lambda_relevance >= 0.0 && lambda_relevance <= 1.0)) {
    throw Error(ErrorCode::kInvalidParams, "lambda must be in [0, 1]");
  }
}

LdaSampler::LdaSampler(const TokenizedCorpus& corpus, int k, double alpha,
                       double beta, std::uint64_t seed)
    : corpus_(&corpus),
      k_(k),
      alpha_(alpha),
      beta_(beta),
      vocab_size_(corpus.vocab_size()),
      rng_(seed),
      doc_topic_(corpus.docs.size() * k, 0),
      topic_word_(static_cast<std::size_t>(k) * vocab_size_, 0),
      topic_total_(k, 0),
      scratch_(k, 0.0) {
  z_.resize(corpus.docs.size());
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto& doc = corpus.docs[d];
    z_[d].resize(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const int topic = static_cast<int>(rng_() % static_cast<std::uint64_t>(k_));
      z_[d][i] = topic;
      ++doc_topic_[d * k_ + topic];
      ++topic_word_[topic * vocab_size_ + doc[i]];
      ++topic_total_[topic];
    }
  }
}

void LdaSampler::Sweep() {
  const double v_beta = static_cast<double>(vocab_size_) * beta_;
  for (std::size_t d = 0; d < corpus_->docs.size(); ++d) {
    const auto& doc = corpus_->docs[d];
    int* nd = &doc_topic_[d * k_];
    for (std::size_t i = 0; i < doc.size(); ++i) {
      const int w = doc[i];
      int topic = z_[d][i];
      --nd[topic];
      --topic_word_[topic * vocab_size_ + w];
      --topic_total_[topic];

      double total = 0.0;
      for (int t = 0; t < k_; ++t) {
        total += (nd[t] + alpha_) * (topic_word_[t * vocab_size_ + w] + beta_) /
                 (topic_total_[t] + v_beta);
        scratch_[t] = total;
      }
      const double u = UniformUnit(rng_) * total;
      topic = 0;
      while (topic < k_ - 1 && scratch_[topic] <= u) ++topic;

      z_[d][i] = topic;
      ++nd[topic];
      ++topic_word_[topic * vocab_size_ + w];
      ++topic_total_[topic];
    }
  }
}

double LdaSampler::LogLikelihood() const {
  const double v = static_cast<double>(vocab_size_);
  double ll = 0.0;
  for (int t = 0; t < k_; ++t) {
    ll += std::lgamma(v * beta_) - std::lgamma(topic_total_[t] + v * beta_);
    for (std::size_t w = 0; w < vocab_size_; ++w) {
      const int count = topic_word_[t * vocab_size_ + w];
      if (count > 0) ll += std::lgamma(count + beta_) - std::lgamma(beta_);
    }
  }
  for (std::size_t d = 0; d < corpus_->docs.size(); ++d) {
    const double nd = static_cast<double>(corpus_->docs[d].size());
    ll += std::lgamma(k_ * alpha_) - std::lgamma(nd + k_ * alpha_);
    for (int t = 0; t < k_; ++t) {
      const int count = doc_topic_[d * k_ + t];
      if (count > 0) ll += std::lgamma(count + alpha_) - std::lgamma(alpha_);
    }
  }
  return ll;
}

Matrix LdaSampler::Phi() const {
  Matrix phi(k_, vocab_size_);
  const double v_beta = static_cast<double>(vocab_size_) * beta_;
  for (int t = 0; t < k_; ++t) {
    const double denom = topic_total_[t] + v_beta;
    for (std::size_t w = 0; w < vocab_size_; ++w) {
      phi(t, w) = (topic_word_[t * vocab_size_ + w] + beta_) / denom;
    }
  }
  return phi;
}

Matrix LdaSampler::Theta() const {
  const std::size_t docs = corpus_->docs.size();
  Matrix theta(docs, k_);
  for (std::size_t d = 0; d < docs; ++d) {
    const double denom = corpus_->docs[d].size() + k_ * alpha_;
    for (int t = 0; t < k_; ++t) {
      theta(d, t) = (doc_topic_[d * k_ + t] + alpha_) / denom;
    }
  }
  return theta;
}

TopicModelResult LdaFit(const TokenizedCorpus& corpus,
                        const TopicModelParams& params) {
  CheckFitParams(params);
  bool any_tokens = false;
  for (const auto& doc : corpus.docs) any_tokens = any_tokens || !doc.empty();
  if (!any_tokens) {
    throw Error(ErrorCode::kEmptyCorpus, "corpus has no non-empty documents");
  }

  TopicModelResult result;
  result.params = params;
  result.vocabulary = corpus.vocabulary;
  if (corpus.vocab_size() < static_cast<std::size_t>(params.k)) {
    result.warnings.push_back("vocabulary is smaller than the topic count");
  }

  LdaSampler sampler(corpus, params.k, params.alpha, params.beta, params.seed);
  result.log_likelihood.reserve(params.iterations);
  for (int it = 0; it < params.iterations; ++it) {
    sampler.Sweep();
    result.log_likelihood.push_back(sampler.LogLikelihood());
  }
  result.phi = sampler.Phi();
  result.theta = sampler.Theta();
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    if (corpus.docs[d].empty()) result.undefined_docs.push_back(d);
  }
  result.top_terms =
      TopTermsByProbability(result.phi, result.vocabulary, params.top_n);
  return result;
}

}  // namespace bibliotext
