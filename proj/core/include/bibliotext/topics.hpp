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

// Topic models: collapsed Gibbs LDA, the Biterm topic model, k-means over
// precomputed document embeddings with class-based TF-IDF labels, and
// relevance ranking of topic terms.
//
// Every fit is single-threaded and fully determined by its seed.

#ifndef BIBLIOTEXT_TOPICS_HPP_
#define BIBLIOTEXT_TOPICS_HPP_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "bibliotext/textprep.hpp"

namespace bibliotext {

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

struct TopicModelParams {
  int k = 5;
  double alpha = 0.1;
  double beta = 0.01;
  int iterations = 500;
  std::uint64_t seed = 0;
  int top_n = 10;
  double lambda_relevance = 0.6;

  // Request-level validation (k >= 2). Throws Error(kInvalidParams).
  void Validate() const;
};

struct RankedTerm {
  std::string term;
  int id = 0;
  double weight = 0.0;

  bool operator==(const RankedTerm&) const = default;
};

using TopicTerms = std::vector<std::vector<RankedTerm>>;

struct TopicModelResult {
  Matrix phi;    // K x V
  Matrix theta;  // D x K
  TopicTerms top_terms;
  TopicModelParams params;
  std::vector<double> log_likelihood;  // one entry per sweep
  std::vector<std::string> vocabulary;
  // Documents with no tokens; their theta rows are uniform by convention.
  std::vector<std::size_t> undefined_docs;
  std::vector<std::string> warnings;
};

// 53-bit uniform double in [0, 1) from a 64-bit engine. Avoids the
// implementation-defined std::uniform_real_distribution.
inline double UniformUnit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Collapsed Gibbs sampler state for LDA. Exposed so tests can inspect the
// count tables between sweeps.
class LdaSampler {
 public:
  LdaSampler(const TokenizedCorpus& corpus, int k, double alpha, double beta,
             std::uint64_t seed);

  void Sweep();
  // log p(w, z) under the current assignments.
  double LogLikelihood() const;

  int k() const { return k_; }
  std::size_t vocab_size() const { return vocab_size_; }
  int doc_topic(std::size_t d, int k) const { return doc_topic_[d * k_ + k]; }
  int topic_word(int k, int w) const { return topic_word_[k * vocab_size_ + w]; }
  int topic_total(int k) const { return topic_total_[k]; }
  const std::vector<std::vector<int>>& assignments() const { return z_; }

  Matrix Phi() const;
  Matrix Theta() const;

 private:
  const TokenizedCorpus* corpus_;
  int k_;
  double alpha_;
  double beta_;
  std::size_t vocab_size_;
  std::mt19937_64 rng_;
  std::vector<std::vector<int>> z_;
  std::vector<int> doc_topic_;   // D x K
  std::vector<int> topic_word_;  // K x V
  std::vector<int> topic_total_;
  std::vector<double> scratch_;
};

// Throws Error(kEmptyCorpus), Error(kInvalidParams). Accepts k >= 1.
TopicModelResult LdaFit(const TokenizedCorpus& corpus,
                        const TopicModelParams& params);

// Unordered word pair, stored with w1 <= w2.
struct Biterm {
  int w1 = 0;
  int w2 = 0;

  Biterm() = default;
  Biterm(int a, int b) : w1(a < b ? a : b), w2(a < b ? b : a) {}

  bool operator==(const Biterm&) const = default;
};

struct BitermSet {
  std::vector<Biterm> biterms;
  std::vector<std::size_t> doc_of;  // document index per biterm
  std::size_t num_docs = 0;
  std::vector<std::size_t> doc_lengths;
  // Token id of one-token documents, -1 otherwise.
  std::vector<int> lone_token;
  std::vector<std::string> vocabulary;

  std::size_t vocab_size() const { return vocabulary.size(); }
};

// All position pairs i < j within each document.
BitermSet ExtractBiterms(const TokenizedCorpus& corpus);

// Throws Error(kNoBiterms), Error(kInvalidParams). Accepts k >= 1.
TopicModelResult BtmFit(const BitermSet& biterms,
                        const TopicModelParams& params);

// k-means with k-means++ seeding. Throws Error(kDimensionMismatch),
// Error(kTooFewDocs), Error(kInvalidParams).
std::vector<int> ClusterEmbeddings(const std::vector<std::vector<double>>& vectors,
                                   int k, std::uint64_t seed);

// Embedding sidecar: header row_index,v0,...,v{dim-1}; one row per document.
// Returns vectors ordered by row index; every index in [0, rows) must occur.
std::vector<std::vector<double>> ParseEmbeddingsCsv(std::string_view text,
                                                    std::size_t rows);

struct CtfidfResult {
  std::vector<int> classes;         // sorted distinct labels
  std::vector<std::size_t> class_sizes;
  double average_class_tokens = 0.0;
  Matrix weights;                   // classes x V
  TopicTerms ranked;                // terms with non-zero class frequency
};

// Throws Error(kLabelLengthMismatch).
CtfidfResult Ctfidf(const TokenizedCorpus& corpus, std::span<const int> labels);

// Corpus unigram distribution from term frequencies.
std::vector<double> TermProbabilities(const TokenizedCorpus& corpus);

// relevance = lambda * log(phi) + (1 - lambda) * log(phi / p). Terms with
// zero phi are left out. `top_n` of 0 keeps every term.
// Throws Error(kInvalidLambda).
TopicTerms RelevanceRanking(const Matrix& phi, std::span<const double> term_probs,
                            double lambda,
                            const std::vector<std::string>& vocabulary,
                            std::size_t top_n = 0);

// Terms ranked by phi, lexicographic on ties.
TopicTerms TopTermsByProbability(const Matrix& phi,
                                 const std::vector<std::string>& vocabulary,
                                 std::size_t top_n);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_TOPICS_HPP_
