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

// Association rules over semicolon-delimited columns and the directed
// item graph built from them.

#ifndef BIBLIOTEXT_ASSOCNET_HPP_
#define BIBLIOTEXT_ASSOCNET_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliotext/ingest.hpp"

namespace bibliotext {

// Sorted, deduplicated, lowercased items.
using Itemset = std::vector<std::string>;

struct TransactionSet {
  std::vector<Itemset> transactions;  // empty rows dropped
  std::vector<std::size_t> rows;      // source row per transaction
  std::size_t size() const { return transactions.size(); }
};

struct FrequentItemset {
  Itemset items;
  std::size_t count = 0;
  double support = 0.0;

  bool operator==(const FrequentItemset&) const = default;
};

// Frequent itemsets ordered by size, then lexicographically.
struct ItemsetTable {
  std::vector<FrequentItemset> itemsets;
  std::size_t num_transactions = 0;

  const FrequentItemset* Find(const Itemset& items) const;

 private:
  friend ItemsetTable MineItemsets(const TransactionSet&, double);
  std::map<Itemset, std::size_t> index_;
};

struct AssociationRule {
  Itemset antecedent;
  Itemset consequent;
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;

  bool operator==(const AssociationRule&) const = default;
};

struct GraphNode {
  std::string id;
  std::size_t count = 0;  // transactions containing the item
};

struct GraphEdge {
  std::string from;
  std::string to;
  double support = 0.0;
  double confidence = 0.0;
  double lift = 0.0;
};

struct RuleGraph {
  std::vector<GraphNode> nodes;  // sorted by id
  std::vector<GraphEdge> edges;  // sorted by (from, to)
};

// Throws Error(kUnknownColumn), Error(kNoMultivalueContent) when the column
// has values but none of them is semicolon-delimited.
TransactionSet BuildTransactions(const Dataset& dataset, std::string_view column);

// Transactions from raw item lists; items are normalized the same way.
TransactionSet MakeTransactions(const std::vector<std::vector<std::string>>& rows);

// Apriori. support(X) = |{t : X subset of t}| / N. Throws Error(kInvalidSupport).
ItemsetTable MineItemsets(const TransactionSet& transactions, double min_support);

// Throws Error(kInvalidConfidence).
std::vector<AssociationRule> DeriveRules(const ItemsetTable& table,
                                         double min_confidence);

// Occurrence count of every item across transactions.
std::map<std::string, std::size_t> ItemCounts(const TransactionSet& transactions);

// Keeps one-to-one rules. With `selected`, an edge survives only when both
// endpoints are selected, and selected items present in `item_counts` are
// kept as nodes even without edges.
RuleGraph BuildGraph(const std::vector<AssociationRule>& rules,
                     const std::map<std::string, std::size_t>& item_counts,
                     const std::optional<std::set<std::string>>& selected);

// antecedent,consequent,support,confidence,lift; multi-item sides joined
// with "; ".
std::string RulesToCsv(const std::vector<AssociationRule>& rules);
nlohmann::json RulesToJson(const std::vector<AssociationRule>& rules);
// Node-link form: {directed, nodes:[{id,count}], links:[{source,target,...}]}.
nlohmann::json GraphToJson(const RuleGraph& graph);
std::string GraphToGraphml(const RuleGraph& graph);

}  // namespace bibliotext

#endif  // BIBLIOTEXT_ASSOCNET_HPP_
