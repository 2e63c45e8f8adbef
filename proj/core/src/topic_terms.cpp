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

// Term ranking: probability, relevance and class-based TF-IDF.

#include <algorithm>
#include <cmath>
#include <map>

#include "bibliotext/error.hpp"
#include "bibliotext/topics.hpp"

namespace bibliotext {

namespace {

void SortRanked(std::vector<RankedTerm>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const RankedTerm& a, const RankedTerm& b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.term < b.term;
            });
}

void Truncate(std::vector<RankedTerm>& terms, std::size_t top_n) {
  if (top_n > 0 && terms.size() > top_n) terms.resize(top_n);
}

}  // namespace

TopicTerms TopTermsByProbability(const Matrix& phi,
                                 const std::vector<std::string>& vocabulary,
                                 std::size_t top_n) {
  TopicTerms out(phi.rows());
  for (std::size_t k = 0; k < phi.rows(); ++k) {
    auto& terms = out[k];
    terms.reserve(phi.cols());
    for (std::size_t w = 0; w < phi.cols(); ++w) {
      terms.push_back({vocabulary[w], static_cast<int>(w), phi(k, w)});
    }
    SortRanked(terms);
    Truncate(terms, top_n);
  }
  return out;
}

std::vector<double> TermProbabilities(const TokenizedCorpus& corpus) {
  std::vector<double> probs(corpus.vocab_size(), 0.0);
  const double total = static_cast<double>(corpus.total_tokens());
  if (total == 0) return probs;
  for (std::size_t w = 0; w < probs.size(); ++w) {
    probs[w] = static_cast<double>(corpus.term_frequencies[w]) / total;
  }
  return probs;
}

TopicTerms RelevanceRanking(const Matrix& phi, std::span<const double> term_probs,
                            double lambda,
                            const std::vector<std::string>& vocabulary,
                            std::size_t top_n) {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw Error(ErrorCode::kInvalidLambda, "lambda must be in [0, 1]");
  }
  if (term_probs.size() != phi.cols() || vocabulary.size() != phi.cols()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "term probabilities and vocabulary must match phi columns");
  }
  TopicTerms out(phi.rows());
  for (std::size_t k = 0; k < phi.rows(); ++k) {
    auto& terms = out[k];
    for (std::size_t w = 0; w < phi.cols(); ++w) {
      const double p = phi(k, w);
      if (!(p > 0.0) || !(term_probs[w] > 0.0)) continue;
      const double r =
          lambda * std::log(p) + (1.0 - lambda) * std::log(p / term_probs[w]);
      terms.push_back({vocabulary[w], static_cast<int>(w), r});
    }
    SortRanked(terms);
    Truncate(terms, top_n);
  }
  return out;
}

CtfidfResult Ctfidf(const TokenizedCorpus& corpus, std::span<const int> labels) {
  if (labels.size() != corpus.docs.size()) {
    throw Error(ErrorCode::kLabelLengthMismatch,
                "got " + std::to_string(labels.size()) + " labels for " +
                    std::to_string(corpus.docs.size()) + " documents");
  }
  CtfidfResult result;
  std::map<int, std::size_t> class_index;
  for (int label : labels) class_index.emplace(label, 0);
  for (auto& [label, index] : class_index) {
    index = result.classes.size();
    result.classes.push_back(label);
  }

  const std::size_t v = corpus.vocab_size();
  const std::size_t c = result.classes.size();
  Matrix tf(c, v);
  std::vector<double> f(v, 0.0);
  result.class_sizes.assign(c, 0);
  double total_tokens = 0.0;
  for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
    const std::size_t ci = class_index.at(labels[d]);
    ++result.class_sizes[ci];
    for (int w : corpus.docs[d]) {
      tf(ci, w) += 1.0;
      f[w] += 1.0;
      total_tokens += 1.0;
    }
  }
  result.average_class_tokens = c == 0 ? 0.0 : total_tokens / static_cast<double>(c);

  const double a = result.average_class_tokens;
  result.weights = Matrix(c, v);
  result.ranked.resize(c);
  for (std::size_t ci = 0; ci < c; ++ci) {
    for (std::size_t w = 0; w < v; ++w) {
      if (tf(ci, w) == 0.0) continue;
      const double weight = tf(ci, w) * std::log(1.0 + a / f[w]);
      result.weights(ci, w) = weight;
      result.ranked[ci].push_back({corpus.vocabulary[w], static_cast<int>(w), weight});
    }
    SortRanked(result.ranked[ci]);
  }
  return result;
}

}  // namespace bibliotext
