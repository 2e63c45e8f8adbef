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


#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "bibliotext/error.hpp"
#include "bibliotext/topics.hpp"
#include "test_support.hpp"

namespace bt = bibliotext;
namespace bt_test = bibliotext::testing;

namespace {

bt::TopicModelParams Params(int k, std::uint64_t seed, int iterations = 500) {
  bt::TopicModelParams p;
  p.k = k;
  p.seed = seed;
  p.iterations = iterations;
  return p;
}

template <typename Fn>
bt::ErrorCode CodeOf(Fn&& fn) {
  try {
    fn();
  } catch (const bt::Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return bt::ErrorCode::kIo;
}

std::vector<std::string> Order(const std::vector<bt::RankedTerm>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.term);
  return out;
}

}  // namespace

TEST_CASE("LDA recovers the two-block structure") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CAPTURE(seed);
    const auto data = bt_test::TwoBlockCorpus(200, 50, 20, 100 + seed);
    const auto fit = bt::LdaFit(data.corpus, Params(2, seed));
    CHECK(bt_test::ArgmaxPurity(fit.theta, data.truth) >= 0.95);
    CHECK(bt_test::MaxRowSumError(fit.phi) <= 1e-9);
    CHECK(bt_test::MaxRowSumError(fit.theta) <= 1e-9);
    CHECK(bt_test::AllNonNegative(fit.phi));
    CHECK(bt_test::AllNonNegative(fit.theta));
    CHECK(fit.log_likelihood.size() == 500);
  }
}

TEST_CASE("LDA is bit-deterministic for a fixed seed") {
  const auto data = bt_test::TwoBlockCorpus(120, 30, 15, 3);
  const auto a = bt::LdaFit(data.corpus, Params(3, 42, 100));
  const auto b = bt::LdaFit(data.corpus, Params(3, 42, 100));
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);
  CHECK(a.log_likelihood == b.log_likelihood);
  const auto c = bt::LdaFit(data.corpus, Params(3, 43, 100));
  CHECK_FALSE(c.phi == a.phi);
}

TEST_CASE("LDA counts are conserved after every sweep") {
  const auto data = bt_test::TwoBlockCorpus(40, 10, 8, 17);
  const auto& corpus = data.corpus;
  bt::LdaSampler sampler(corpus, 3, 0.1, 0.01, 7);
  for (int sweep = 0; sweep < 20; ++sweep) {
    sampler.Sweep();
    for (std::size_t d = 0; d < corpus.docs.size(); ++d) {
      int sum = 0;
      for (int k = 0; k < 3; ++k) sum += sampler.doc_topic(d, k);
      REQUIRE(sum == static_cast<int>(corpus.docs[d].size()));
    }
    for (int k = 0; k < 3; ++k) {
      int sum = 0;
      for (std::size_t w = 0; w < corpus.vocab_size(); ++w) {
        sum += sampler.topic_word(k, static_cast<int>(w));
      }
      REQUIRE(sum == sampler.topic_total(k));
    }
  }
}

TEST_CASE("LDA errors and warnings") {
  bt::TokenizedCorpus empty = bt::TokenizedCorpus::FromTokens({{}, {}});
  CHECK(CodeOf([&] { bt::LdaFit(empty, Params(2, 0, 5)); }) == bt::ErrorCode::kEmptyCorpus);
  const auto tiny = bt::TokenizedCorpus::FromTokens({{"a", "b"}});
  CHECK(CodeOf([&] { bt::LdaFit(tiny, Params(0, 0, 5)); }) == bt::ErrorCode::kInvalidParams);
  const auto fit = bt::LdaFit(tiny, Params(3, 0, 5));
  CHECK_FALSE(fit.warnings.empty());
  CHECK(CodeOf([] { Params(1, 0).Validate(); }) == bt::ErrorCode::kInvalidParams);
  CHECK_NOTHROW(Params(2, 0).Validate());
}

TEST_CASE("LDA empty documents keep their rows") {
  const auto corpus = bt::TokenizedCorpus::FromTokens({{"a", "b"}, {}, {"b", "c"}});
  const auto fit = bt::LdaFit(corpus, Params(2, 1, 20));
  CHECK(fit.theta.rows() == 3);
  CHECK(fit.undefined_docs == std::vector<std::size_t>{1});
  CHECK(bt_test::MaxRowSumError(fit.theta) <= 1e-9);
}

TEST_CASE("biterm extraction") {
  const auto corpus =
      bt::TokenizedCorpus::FromTokens({{"a", "b", "c"}, {"a"}, {"a", "a", "b"}});
  const auto set = bt::ExtractBiterms(corpus);
  // ids: a=0, b=1, c=2
  const std::vector<bt::Biterm> expected = {{0, 1}, {0, 2}, {1, 2},
                                            {0, 0}, {0, 1}, {0, 1}};
  CHECK(set.biterms == expected);
  CHECK(set.doc_of == std::vector<std::size_t>{0, 0, 0, 2, 2, 2});
  CHECK(set.lone_token == std::vector<int>{-1, 0, -1});
  CHECK(bt::Biterm(5, 2).w1 == 2);
}

TEST_CASE("BTM recovers the short-text two-block structure") {
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    CAPTURE(seed);
    const auto data = bt_test::TwoBlockCorpus(200, 50, 3, 200 + seed);
    const auto fit = bt::BtmFit(bt::ExtractBiterms(data.corpus), Params(2, seed));
    CHECK(bt_test::ArgmaxPurity(fit.theta, data.truth) >= 0.95);
    CHECK(bt_test::MaxRowSumError(fit.phi) <= 1e-9);
    CHECK(bt_test::MaxRowSumError(fit.theta) <= 1e-9);
    CHECK(bt_test::AllNonNegative(fit.phi));
  }
}

TEST_CASE("BTM determinism and degenerate cases") {
  const auto data = bt_test::TwoBlockCorpus(60, 20, 4, 8);
  const auto set = bt::ExtractBiterms(data.corpus);
  const auto a = bt::BtmFit(set, Params(2, 9, 50));
  const auto b = bt::BtmFit(set, Params(2, 9, 50));
  CHECK(a.phi == b.phi);
  CHECK(a.theta == b.theta);

  const auto single = bt::TokenizedCorpus::FromTokens({{"a", "b"}, {"c"}});
  const auto fit = bt::BtmFit(bt::ExtractBiterms(single), Params(1, 0, 10));
  CHECK(fit.theta(0, 0) == doctest::Approx(1.0));
  const double off_support = fit.phi(0, 2);
  CHECK(fit.phi(0, 0) > 10 * off_support);
  CHECK(fit.phi(0, 1) > 10 * off_support);

  const auto shorts = bt::TokenizedCorpus::FromTokens({{"a"}, {"b"}, {}});
  CHECK(CodeOf([&] { bt::BtmFit(bt::ExtractBiterms(shorts), Params(2, 0, 5)); }) ==
        bt::ErrorCode::kNoBiterms);
}

TEST_CASE("BTM theta for one-token and empty documents") {
  const auto corpus = bt::TokenizedCorpus::FromTokens({{"a", "b"}, {"a"}, {}});
  const auto fit = bt::BtmFit(bt::ExtractBiterms(corpus), Params(2, 4, 30));
  CHECK(fit.undefined_docs == std::vector<std::size_t>{2});
  CHECK(bt_test::MaxRowSumError(fit.theta) <= 1e-9);
}

TEST_CASE("k-means separates blobs") {
  std::mt19937_64 rng(77);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<std::vector<double>> vectors;
  std::vector<int> truth;
  for (int i = 0; i < 100; ++i) {
    std::vector<double> v(8);
    const double center = i < 50 ? -5.0 : 5.0;
    for (auto& x : v) x = center + noise(rng);
    vectors.push_back(v);
    truth.push_back(i < 50 ? 0 : 1);
  }
  const auto labels = bt::ClusterEmbeddings(vectors, 2, 3);
  bt::Matrix onehot(labels.size(), 2);
  for (std::size_t i = 0; i < labels.size(); ++i) onehot(i, labels[i]) = 1.0;
  CHECK(bt_test::ArgmaxPurity(onehot, truth) == 1.0);
  CHECK(bt::ClusterEmbeddings(vectors, 2, 3) == labels);

  const auto one = bt::ClusterEmbeddings(vectors, 1, 3);
  CHECK(std::all_of(one.begin(), one.end(), [](int l) { return l == 0; }));

  const std::vector<std::vector<double>> same(10, std::vector<double>{1.0, 2.0});
  CHECK(bt::ClusterEmbeddings(same, 2, 5).size() == 10);
}

TEST_CASE("k-means errors") {
  CHECK(CodeOf([] { bt::ClusterEmbeddings({{1.0, 2.0}, {1.0}}, 1, 0); }) ==
        bt::ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([] { bt::ClusterEmbeddings({{1.0}, {2.0}}, 3, 0); }) ==
        bt::ErrorCode::kTooFewDocs);
}

TEST_CASE("embedding sidecar parsing") {
  const auto vectors =
      bt::ParseEmbeddingsCsv("row_index,v0,v1\n1,3,4\n0,1,2\n", 2);
  CHECK(vectors == std::vector<std::vector<double>>{{1, 2}, {3, 4}});
  CHECK(CodeOf([] { bt::ParseEmbeddingsCsv("row_index,v0\n0,1\n", 2); }) ==
        bt::ErrorCode::kMissingEmbedding);
  CHECK(CodeOf([] { bt::ParseEmbeddingsCsv("row_index,v0,v1\n0,1\n", 1); }) ==
        bt::ErrorCode::kDimensionMismatch);
  CHECK(CodeOf([] { bt::ParseEmbeddingsCsv("a,b\n0,1\n", 1); }) ==
        bt::ErrorCode::kMissingHeader);
}

TEST_CASE("c-TF-IDF toy") {
  const auto corpus = bt::TokenizedCorpus::FromTokens({{"x", "x"}, {"y"}});
  const std::vector<int> labels = {0, 1};
  const auto result = bt::Ctfidf(corpus, labels);
  CHECK(result.average_class_tokens == doctest::Approx(1.5));
  CHECK(std::abs(result.weights(0, 0) - 2.0 * std::log(1.75)) < 1e-12);
  CHECK(std::abs(result.weights(0, 0) - 1.1192) < 1e-4);
  CHECK(std::abs(result.weights(1, 1) - std::log(2.5)) < 1e-12);
  CHECK(std::abs(result.weights(1, 1) - 0.9163) < 1e-4);
  CHECK(result.weights(1, 0) == 0.0);
  CHECK(result.weights(0, 1) == 0.0);
  CHECK(CodeOf([&] { bt::Ctfidf(corpus, std::vector<int>{0}); }) ==
        bt::ErrorCode::kLabelLengthMismatch);
}

TEST_CASE("c-TF-IDF with one class ranks by term frequency") {
  const auto corpus = bt::TokenizedCorpus::FromTokens(
      {{"a", "a", "a", "b", "b"}, {"c", "d", "d", "d", "d", "e"}, {"a", "c"}});
  const auto result = bt::Ctfidf(corpus, std::vector<int>{7, 7, 7});
  REQUIRE(result.classes == std::vector<int>{7});
  CHECK(Order(result.ranked[0]) == std::vector<std::string>{"a", "d", "b", "c", "e"});
}

TEST_CASE("c-TF-IDF weight is zero iff class frequency is zero") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<std::vector<std::string>> docs(1 + rng() % 12);
    std::vector<int> labels;
    for (auto& doc : docs) {
      for (std::size_t n = rng() % 6; n > 0; --n) doc.push_back("t" + std::to_string(rng() % 8));
      labels.push_back(static_cast<int>(rng() % 4));
    }
    const auto corpus = bt::TokenizedCorpus::FromTokens(docs);
    const auto result = bt::Ctfidf(corpus, labels);
    for (std::size_t c = 0; c < result.classes.size(); ++c) {
      std::vector<int> tf(corpus.vocab_size(), 0);
      for (std::size_t d = 0; d < docs.size(); ++d) {
        if (labels[d] != result.classes[c]) continue;
        for (int w : corpus.docs[d]) ++tf[w];
      }
      for (std::size_t w = 0; w < corpus.vocab_size(); ++w) {
        const double weight = result.weights(c, w);
        CHECK(std::isfinite(weight));
        CHECK(weight >= 0.0);
        CHECK((weight == 0.0) == (tf[w] == 0));
      }
    }
  }
}

TEST_CASE("relevance hand example") {
  bt::Matrix phi(1, 2);
  phi(0, 0) = 0.5;
  phi(0, 1) = 0.5;
  const std::vector<double> p = {0.9, 0.1};
  const auto ranked = bt::RelevanceRanking(phi, p, 0.5, {"one", "two"});
  CHECK(Order(ranked[0]) == std::vector<std::string>{"two", "one"});
  CHECK(CodeOf([&] { bt::RelevanceRanking(phi, p, 1.5, {"one", "two"}); }) ==
        bt::ErrorCode::kInvalidLambda);
}

TEST_CASE("relevance at the lambda extremes matches direct sorts") {
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t k = 1 + rng() % 4;
    const std::size_t v = 2 + rng() % 30;
    bt::Matrix phi(k, v);
    std::vector<double> p(v);
    std::vector<std::string> vocab;
    for (std::size_t w = 0; w < v; ++w) {
      vocab.push_back("w" + std::to_string(w));
      p[w] = bt::UniformUnit(rng) + 1e-3;
    }
    for (std::size_t t = 0; t < k; ++t) {
      for (std::size_t w = 0; w < v; ++w) {
        phi(t, w) = rng() % 5 == 0 ? 0.0 : bt::UniformUnit(rng) + 1e-6;
      }
    }
    const auto top = bt::RelevanceRanking(phi, p, 1.0, vocab);
    const auto lift = bt::RelevanceRanking(phi, p, 0.0, vocab);
    for (std::size_t t = 0; t < k; ++t) {
      std::vector<std::size_t> ids;
      for (std::size_t w = 0; w < v; ++w) {
        if (phi(t, w) > 0) ids.push_back(w);
      }
      auto by = [&](auto key) {
        auto sorted = ids;
        std::sort(sorted.begin(), sorted.end(), [&](std::size_t a, std::size_t b) {
          if (key(a) != key(b)) return key(a) > key(b);
          return vocab[a] < vocab[b];
        });
        std::vector<std::string> out;
        for (auto w : sorted) out.push_back(vocab[w]);
        return out;
      };
      CHECK(Order(top[t]) == by([&](std::size_t w) { return phi(t, w); }));
      CHECK(Order(lift[t]) == by([&](std::size_t w) { return phi(t, w) / p[w]; }));
    }
  }
}

TEST_CASE("top terms by probability") {
  bt::Matrix phi(1, 3);
  phi(0, 0) = 0.2;
  phi(0, 1) = 0.4;
  phi(0, 2) = 0.4;
  const auto top = bt::TopTermsByProbability(phi, {"c", "b", "a"}, 2);
  CHECK(Order(top[0]) == std::vector<std::string>{"a", "b"});
}
