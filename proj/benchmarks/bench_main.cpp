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


#include <benchmark/benchmark.h>

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bibliotext/assocnet.hpp"
#include "bibliotext/stemmer.hpp"
#include "bibliotext/topics.hpp"

namespace bt = bibliotext;

namespace {

std::vector<std::string> ReferenceWords() {
  std::ifstream in(std::string(BIBLIOTEXT_SOURCE_DIR) + "/tests/data/snowball_en_reference.tsv");
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (auto tab = line.find('\t'); tab != std::string::npos) words.push_back(line.substr(0, tab));
  }
  return words;
}

bt::TokenizedCorpus BlockCorpus(std::size_t docs, std::size_t doc_len) {
  std::mt19937_64 rng(7);
  std::vector<std::vector<std::string>> tokens(docs);
  for (std::size_t d = 0; d < docs; ++d) {
    const char* prefix = d < docs / 2 ? "alpha" : "omega";
    for (std::size_t i = 0; i < doc_len; ++i) {
      tokens[d].push_back(prefix + std::to_string(rng() % 50));
    }
  }
  return bt::TokenizedCorpus::FromTokens(tokens);
}

void BM_StemReferenceList(benchmark::State& state) {
  const auto words = ReferenceWords();
  for (auto _ : state) {
    for (const auto& w : words) benchmark::DoNotOptimize(bt::StemToken(w));
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * words.size()));
}
BENCHMARK(BM_StemReferenceList)->Unit(benchmark::kMillisecond);

void BM_LdaFit(benchmark::State& state) {
  const auto corpus = BlockCorpus(static_cast<std::size_t>(state.range(0)), 50);
  bt::TopicModelParams params;
  params.k = 10;
  params.iterations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(bt::LdaFit(corpus, params));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 50 * params.iterations);
}
BENCHMARK(BM_LdaFit)->Arg(200)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_BtmFit(benchmark::State& state) {
  const auto biterms = bt::ExtractBiterms(BlockCorpus(static_cast<std::size_t>(state.range(0)), 8));
  bt::TopicModelParams params;
  params.k = 10;
  params.iterations = 50;
  for (auto _ : state) benchmark::DoNotOptimize(bt::BtmFit(biterms, params));
}
BENCHMARK(BM_BtmFit)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_Apriori(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<std::string>> rows(static_cast<std::size_t>(state.range(0)));
  for (auto& row : rows) {
    for (int i = 0; i < 6; ++i) row.push_back("kw" + std::to_string(rng() % 40));
  }
  const auto transactions = bt::MakeTransactions(rows);
  for (auto _ : state) {
    const auto table = bt::MineItemsets(transactions, 0.01);
    benchmark::DoNotOptimize(bt::DeriveRules(table, 0.1));
  }
}
BENCHMARK(BM_Apriori)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
