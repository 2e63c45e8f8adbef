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

BitermSet ExtractBiterms(const TokenizedCorpus& corpus) {
  BitermSet set;
  set.num_docs = corpus.docs.size();
  set.vocabulary = corpus.vocabulary;
  set.doc_lengths.reserve(corpus.docs.size());
  set.lone_token.reserve(corpus.docs.size());
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const auto& doc = corpus.docs[d];
    set.doc_lengths.push_back(doc.size());
    set.lone_token.push_back(doc.size() == 1 ? doc[0] : -1);
    for (std::size_t i = 0; i < doc.size(); ++i) {
      for (std::size_t j = i + 1; j < doc.size(); ++j) {
        set.biterms.emplace_back(doc[i], doc[j]);
        set.doc_of.push_back(d);
      }
    }
  }
  return set;
}

TopicModelResult BtmFit(const BitermSet& set, const TopicModelParams& params) {
  if (params.k < 1 || !(params.alpha > 0) || !(params.beta > 0) ||
      params.iterations < 1 || params.top_n < 0) {
    throw Error(ErrorCode::kInvalidParams,
                "require k >= 1, alpha > 0, beta > 0, iterations >= 1");
  }
  if (set.biterms.empty()) {
    throw Error(ErrorCode::kNoBiterms, "every document has fewer than 2 tokens");
  }

  const int k = params.k;
  const std::size_t v = set.vocab_size();
  const double alpha = params.alpha;
  const double beta = params.beta;
  const double v_beta = static_cast<double>(v) * beta;
  const std::size_t nb = set.biterms.size();

  std::mt19937_64 rng(params.seed);
  std::vector<int> z(nb);
  std::vector<int> nk(k, 0);                 // biterms per topic
  std::vector<int> nwk(k * v, 0);            // word counts per topic
  std::vector<int> word_total(k, 0);         // sum_w n_{w|k} = 2 n_k
  for (std::size_t b = 0; b < nb; ++b) {
    const int t = static_cast<int>(rng() % static_cast<std::uint64_t>(k));
    z[b] = t;
    ++nk[t];
    ++nwk[t * v + set.biterms[b].w1];
    ++nwk[t * v + set.biterms[b].w2];
    word_total[t] += 2;
  }

  TopicModelResult result;
  result.params = params;
  result.vocabulary = set.vocabulary;
  if (v < static_cast<std::size_t>(k)) {
    result.warnings.push_back("vocabulary is smaller than the topic count");
  }

  auto point_estimates = [&](std::vector<double>& pz, Matrix& phi) {
    const double denom_z = static_cast<double>(nb) + k * alpha;
    for (int t = 0; t < k; ++t) {
      pz[t] = (nk[t] + alpha) / denom_z;
      const double denom = word_total[t] + v_beta;
      for (std::size_t w = 0; w < v; ++w) phi(t, w) = (nwk[t * v + w] + beta) / denom;
    }
  };

  std::vector<double> cumulative(k);
  std::vector<double> pz(k);
  Matrix phi(k, v);
  result.log_likelihood.reserve(params.iterations);
  for (int it = 0; it < params.iterations; ++it) {
    for (std::size_t b = 0; b < nb; ++b) {
      const int w1 = set.biterms[b].w1;
      const int w2 = set.biterms[b].w2;
      int t = z[b];
      --nk[t];
      --nwk[t * v + w1];
      --nwk[t * v + w2];
      word_total[t] -= 2;

      double total = 0.0;
      for (int s = 0; s < k; ++s) {
        const double denom = word_total[s] + v_beta;
        total += (nk[s] + alpha) * (nwk[s * v + w1] + beta) *
                 (nwk[s * v + w2] + beta) / (denom * denom);
        cumulative[s] = total;
      }
      const double u = UniformUnit(rng) * total;
      t = 0;
      while (t < k - 1 && cumulative[t] <= u) ++t;

      z[b] = t;
      ++nk[t];
      ++nwk[t * v + w1];
      ++nwk[t * v + w2];
      word_total[t] += 2;
    }

    point_estimates(pz, phi);
    double ll = 0.0;
    for (const Biterm& bt : set.biterms) {
      double p = 0.0;
      for (int s = 0; s < k; ++s) p += pz[s] * phi(s, bt.w1) * phi(s, bt.w2);
      ll += std::log(p);
    }
    result.log_likelihood.push_back(ll);
  }

  point_estimates(pz, phi);

  // theta_d = mean over the document's biterms of P(k | b). One-token
  // documents fall back to P(k | w); empty ones are uniform.
  Matrix theta(set.num_docs, k);
  std::vector<std::size_t> biterm_count(set.num_docs, 0);
  std::vector<double> posterior(k);
  auto accumulate = [&](std::size_t d) {
    double norm = 0.0;
    for (int s = 0; s < k; ++s) norm += posterior[s];
    for (int s = 0; s < k; ++s) theta(d, s) += posterior[s] / norm;
  };
  for (std::size_t b = 0; b < nb; ++b) {
    const Biterm& bt = set.biterms[b];
    for (int s = 0; s < k; ++s) posterior[s] = pz[s] * phi(s, bt.w1) * phi(s, bt.w2);
    accumulate(set.doc_of[b]);
    ++biterm_count[set.doc_of[b]];
  }
  for (std::size_t d = 0; d < set.num_docs; ++d) {
    if (biterm_count[d] > 0) {
      for (int s = 0; s < k; ++s) theta(d, s) /= static_cast<double>(biterm_count[d]);
    } else if (d < set.lone_token.size() && set.lone_token[d] >= 0) {
      for (int s = 0; s < k; ++s) posterior[s] = pz[s] * phi(s, set.lone_token[d]);
      accumulate(d);
    } else {
      for (int s = 0; s < k; ++s) theta(d, s) = 1.0 / k;
      result.undefined_docs.push_back(d);
    }
  }

  result.phi = std::move(phi);
  result.theta = std::move(theta);
  result.top_terms =
      TopTermsByProbability(result.phi, result.vocabulary, params.top_n);
  return result;
}

}  // namespace bibliotext
