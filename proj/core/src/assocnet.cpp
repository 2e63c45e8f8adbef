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

#include "bibliotext/assocnet.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

#include "bibliotext/csv.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/utf8.hpp"

namespace bibliotext {

namespace {

using IdSet = std::vector<int>;

Itemset Normalize(const std::vector<std::string>& raw) {
  Itemset items;
  items.reserve(raw.size());
  for (const auto& item : raw) {
    std::string lowered = utf8::CollapseWhitespace(utf8::ToLower(utf8::Trim(item)));
    if (!lowered.empty()) items.push_back(std::move(lowered));
  }
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  return items;
}

// Joins two sorted k-itemsets sharing their first k-1 ids.
std::vector<IdSet> GenerateCandidates(const std::vector<IdSet>& frequent) {
  std::vector<IdSet> candidates;
  for (std::size_t i = 0; i < frequent.size(); ++i) {
    for (std::size_t j = i + 1; j < frequent.size(); ++j) {
      const IdSet& a = frequent[i];
      const IdSet& b = frequent[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin())) break;
      IdSet joined = a;
      joined.push_back(b.back());
      // Prune when any k-subset is infrequent.
      bool keep = true;
      for (std::size_t drop = 0; keep && drop + 2 < joined.size(); ++drop) {
        IdSet subset;
        for (std::size_t m = 0; m < joined.size(); ++m) {
          if (m != drop) subset.push_back(joined[m]);
        }
        keep = std::binary_search(frequent.begin(), frequent.end(), subset);
      }
      if (keep) candidates.push_back(std::move(joined));
    }
  }
  return candidates;
}

std::string JoinItems(const Itemset& items) { return JoinMultivalue(items); }

std::string XmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

const FrequentItemset* ItemsetTable::Find(const Itemset& items) const {
  auto it = index_.find(items);
  return it == index_.end() ? nullptr : &itemsets[it->second];
}

TransactionSet MakeTransactions(const std::vector<std::vector<std::string>>& rows) {
  TransactionSet set;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    Itemset items = Normalize(rows[r]);
    if (items.empty()) continue;
    set.transactions.push_back(std::move(items));
    set.rows.push_back(r);
  }
  return set;
}

TransactionSet BuildTransactions(const Dataset& dataset, std::string_view column) {
  if (!dataset.has_column(column)) {
    throw Error(ErrorCode::kUnknownColumn,
                "unknown column '" + std::string(column) + "'");
  }
  std::vector<std::vector<std::string>> rows;
  rows.reserve(dataset.row_count());
  bool any_value = false;
  bool any_delimited = false;
  for (std::size_t r = 0; r < dataset.row_count(); ++r) {
    const std::string cell = dataset.Cell(r, column).value_or("");
    any_value = any_value || !utf8::Trim(cell).empty();
    any_delimited = any_delimited || cell.find(';') != std::string::npos;
    rows.push_back(SplitMultivalue(cell));
  }
  if (any_value && !any_delimited) {
    throw Error(ErrorCode::kNoMultivalueContent,
                "column '" + std::string(column) +
                    "' has no semicolon-delimited values");
  }
  return MakeTransactions(rows);
}

ItemsetTable MineItemsets(const TransactionSet& transactions, double min_support) {
  if (!(min_support > 0.0 && min_support <= 1.0)) {
    throw Error(ErrorCode::kInvalidSupport, "min_support must be in (0, 1]");
  }
  ItemsetTable table;
  const std::size_t n = transactions.size();
  table.num_transactions = n;
  if (n == 0) return table;

  // Item ids follow lexicographic order so id vectors sort like item vectors.
  std::vector<std::string> universe;
  for (const auto& t : transactions.transactions) {
    universe.insert(universe.end(), t.begin(), t.end());
  }
  std::sort(universe.begin(), universe.end());
  universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
  std::vector<IdSet> encoded;
  encoded.reserve(n);
  for (const auto& t : transactions.transactions) {
    IdSet ids;
    ids.reserve(t.size());
    for (const auto& item : t) {
      ids.push_back(static_cast<int>(
          std::lower_bound(universe.begin(), universe.end(), item) - universe.begin()));
    }
    encoded.push_back(std::move(ids));
  }

  auto frequent_enough = [&](std::size_t count) {
    return static_cast<double>(count) / static_cast<double>(n) >= min_support;
  };
  auto emit = [&](const IdSet& ids, std::size_t count) {
    FrequentItemset entry;
    for (int id : ids) entry.items.push_back(universe[id]);
    entry.count = count;
    entry.support = static_cast<double>(count) / static_cast<double>(n);
    table.index_.emplace(entry.items, table.itemsets.size());
    table.itemsets.push_back(std::move(entry));
  };

  std::vector<std::size_t> singles(universe.size(), 0);
  for (const auto& t : encoded) {
    for (int id : t) ++singles[id];
  }
  std::vector<IdSet> frequent;
  for (std::size_t id = 0; id < universe.size(); ++id) {
    if (frequent_enough(singles[id])) {
      frequent.push_back({static_cast<int>(id)});
      emit(frequent.back(), singles[id]);
    }
  }

  while (!frequent.empty()) {
    std::vector<IdSet> candidates = GenerateCandidates(frequent);
    if (candidates.empty()) break;
    std::vector<std::size_t> counts(candidates.size(), 0);
    const std::size_t level = candidates.front().size();
    for (const auto& t : encoded) {
      if (t.size() < level) continue;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (std::includes(t.begin(), t.end(), candidates[c].begin(),
                          candidates[c].end())) {
          ++counts[c];
        }
      }
    }
    frequent.clear();
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (frequent_enough(counts[c])) {
        emit(candidates[c], counts[c]);
        frequent.push_back(std::move(candidates[c]));
      }
    }
  }
  return table;
}

std::vector<AssociationRule> DeriveRules(const ItemsetTable& table,
                                         double min_confidence) {
  if (!(min_confidence > 0.0 && min_confidence <= 1.0)) {
    throw Error(ErrorCode::kInvalidConfidence,
                "min_confidence must be in (0, 1]");
  }
  std::vector<AssociationRule> rules;
  for (const auto& itemset : table.itemsets) {
    const std::size_t size = itemset.items.size();
    if (size < 2) continue;
    if (size >= 63) {
      throw Error(ErrorCode::kInvalidParams, "itemset too large for rule search");
    }
    const std::uint64_t full = (std::uint64_t{1} << size) - 1;
    for (std::uint64_t mask = 1; mask < full; ++mask) {
      AssociationRule rule;
      for (std::size_t i = 0; i < size; ++i) {
        (mask >> i & 1 ? rule.antecedent : rule.consequent)
            .push_back(itemset.items[i]);
      }
      const FrequentItemset* a = table.Find(rule.antecedent);
      const FrequentItemset* b = table.Find(rule.consequent);
      if (a == nullptr || b == nullptr) continue;  // unreachable by anti-monotonicity
      rule.support = itemset.support;
      // Count ratio, so a rule that always fires has confidence exactly 1.
      rule.confidence =
          static_cast<double>(itemset.count) / static_cast<double>(a->count);
      if (rule.confidence < min_confidence) continue;
      rule.lift = rule.confidence / b->support;
      rules.push_back(std::move(rule));
    }
  }
  std::sort(rules.begin(), rules.end(),
            [](const AssociationRule& x, const AssociationRule& y) {
              if (x.antecedent != y.antecedent) return x.antecedent < y.antecedent;
              return x.consequent < y.consequent;
            });
  return rules;
}

std::map<std::string, std::size_t> ItemCounts(const TransactionSet& transactions) {
  std::map<std::string, std::size_t> counts;
  for (const auto& t : transactions.transactions) {
    for (const auto& item : t) ++counts[item];
  }
  return counts;
}

RuleGraph BuildGraph(const std::vector<AssociationRule>& rules,
                     const std::map<std::string, std::size_t>& item_counts,
                     const std::optional<std::set<std::string>>& selected) {
  RuleGraph graph;
  std::set<std::string> node_ids;
  for (const auto& rule : rules) {
    if (rule.antecedent.size() != 1 || rule.consequent.size() != 1) continue;
    const std::string& from = rule.antecedent[0];
    const std::string& to = rule.consequent[0];
    if (selected && (!selected->contains(from) || !selected->contains(to))) {
      continue;
    }
    graph.edges.push_back({from, to, rule.support, rule.confidence, rule.lift});
    node_ids.insert(from);
    node_ids.insert(to);
  }
  if (selected) {
    for (const auto& item : *selected) {
      if (item_counts.contains(item)) node_ids.insert(item);
    }
  }
  for (const auto& id : node_ids) {
    auto it = item_counts.find(id);
    graph.nodes.push_back({id, it == item_counts.end() ? 0 : it->second});
  }
  std::sort(graph.edges.begin(), graph.edges.end(),
            [](const GraphEdge& a, const GraphEdge& b) {
              return std::tie(a.from, a.to) < std::tie(b.from, b.to);
            });
  return graph;
}

std::string RulesToCsv(const std::vector<AssociationRule>& rules) {
  std::string out = "antecedent,consequent,support,confidence,lift\n";
  for (const auto& rule : rules) {
    const std::string row[] = {JoinItems(rule.antecedent), JoinItems(rule.consequent),
                               csv::FormatDouble(rule.support),
                               csv::FormatDouble(rule.confidence), csv::FormatDouble(rule.lift)};
    csv::AppendRow(out, row);
  }
  return out;
}

nlohmann::json RulesToJson(const std::vector<AssociationRule>& rules) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& rule : rules) {
    out.push_back({{"antecedent", rule.antecedent},
                   {"consequent", rule.consequent},
                   {"support", rule.support},
                   {"confidence", rule.confidence},
                   {"lift", rule.lift}});
  }
  return out;
}

nlohmann::json GraphToJson(const RuleGraph& graph) {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& node : graph.nodes) {
    nodes.push_back({{"id", node.id}, {"count", node.count}});
  }
  nlohmann::json links = nlohmann::json::array();
  for (const auto& edge : graph.edges) {
    links.push_back({{"source", edge.from},
                     {"target", edge.to},
                     {"support", edge.support},
                     {"confidence", edge.confidence},
                     {"lift", edge.lift}});
  }
  return {{"directed", true}, {"multigraph", false}, {"nodes", nodes},
          {"links", links}};
}

std::string GraphToGraphml(const RuleGraph& graph) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
      << "  <key id=\"count\" for=\"node\" attr.name=\"count\" attr.type=\"long\"/>\n"
      << "  <key id=\"support\" for=\"edge\" attr.name=\"support\" attr.type=\"double\"/>\n"
      << "  <key id=\"confidence\" for=\"edge\" attr.name=\"confidence\" "
         "attr.type=\"double\"/>\n"
      << "  <key id=\"lift\" for=\"edge\" attr.name=\"lift\" attr.type=\"double\"/>\n"
      << "  <graph id=\"rules\" edgedefault=\"directed\">\n";
  for (const auto& node : graph.nodes) {
    out << "    <node id=\"" << XmlEscape(node.id) << "\"><data key=\"count\">"
        << node.count << "</data></node>\n";
  }
  for (const auto& edge : graph.edges) {
    out << "    <edge source=\"" << XmlEscape(edge.from) << "\" target=\""
        << XmlEscape(edge.to) << "\">"
        << "<data key=\"support\">" << csv::FormatDouble(edge.support) << "</data>"
        << "<data key=\"confidence\">" << csv::FormatDouble(edge.confidence) << "</data>"
        << "<data key=\"lift\">" << csv::FormatDouble(edge.lift) << "</data></edge>\n";
  }
  out << "  </graph>\n</graphml>\n";
  return out.str();
}

}  // namespace bibliotext
