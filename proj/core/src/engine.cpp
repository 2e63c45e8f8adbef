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

#include "bibliotext/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "bibliotext/assocnet.hpp"
#include "bibliotext/csv.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/keystem.hpp"
#include "bibliotext/sunburst.hpp"
#include "bibliotext/textprep.hpp"
#include "bibliotext/topics.hpp"
#include "bibliotext/utf8.hpp"

namespace bibliotext {

namespace {

using nlohmann::json;

constexpr std::string_view kEmbeddingsKey = "embeddings_csv";

[[noreturn]] void Invalid(const std::string& message) {
  throw Error(ErrorCode::kInvalidParams, message);
}

// Reads typed values out of a request object, recording the normalized
// value of every key it touches.
class ParamReader {
 public:
  explicit ParamReader(const json& params) : params_(params) {
    if (!params_.is_null() && !params_.is_object()) {
      Invalid("params must be a JSON object");
    }
  }

  std::int64_t Int(const std::string& key, std::int64_t fallback,
                   std::int64_t lo, std::int64_t hi) {
    std::int64_t value = fallback;
    if (const json* raw = Find(key)) {
      if (!raw->is_number_integer()) Invalid(key + " must be an integer");
      if (raw->is_number_unsigned() &&
          raw->get<std::uint64_t>() >
              static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
        Invalid(key + " is out of range");
      }
      value = raw->get<std::int64_t>();
    }
    if (value < lo || value > hi) {
      Invalid(key + " must be in [" + std::to_string(lo) + ", " +
              std::to_string(hi) + "]");
    }
    out_[key] = value;
    return value;
  }

  std::uint64_t Seed(const std::string& key) {
    std::uint64_t value = 0;
    if (const json* raw = Find(key)) {
      if (raw->is_number_unsigned()) {
        value = raw->get<std::uint64_t>();
      } else if (raw->is_number_integer()) {
        const auto signed_value = raw->get<std::int64_t>();
        if (signed_value < 0) Invalid(key + " must be non-negative");
        value = static_cast<std::uint64_t>(signed_value);
      } else {
        Invalid(key + " must be an integer");
      }
    }
    out_[key] = value;
    return value;
  }

  // `open_low` excludes `lo` from the accepted interval.
  double Real(const std::string& key, double fallback, double lo, double hi,
              bool open_low = false) {
    double value = fallback;
    if (const json* raw = Find(key)) {
      if (!raw->is_number()) Invalid(key + " must be a number");
      value = raw->get<double>();
    }
    const bool low_ok = open_low ? value > lo : value >= lo;
    if (!std::isfinite(value) || !low_ok || value > hi) {
      Invalid(key + " must be in " + std::string(open_low ? "(" : "[") +
              csv::FormatDouble(lo) + ", " + csv::FormatDouble(hi) + "]");
    }
    out_[key] = value;
    return value;
  }

  bool Bool(const std::string& key, bool fallback) {
    bool value = fallback;
    if (const json* raw = Find(key)) {
      if (!raw->is_boolean()) Invalid(key + " must be a boolean");
      value = raw->get<bool>();
    }
    out_[key] = value;
    return value;
  }

  std::optional<std::string> String(const std::string& key) {
    const json* raw = Find(key);
    if (raw == nullptr) return std::nullopt;
    if (!raw->is_string()) Invalid(key + " must be a string");
    out_[key] = *raw;
    return raw->get<std::string>();
  }

  std::optional<std::vector<std::string>> StringList(const std::string& key) {
    const json* raw = Find(key);
    if (raw == nullptr) return std::nullopt;
    if (!raw->is_array()) Invalid(key + " must be an array of strings");
    std::vector<std::string> values;
    for (const auto& item : *raw) {
      if (!item.is_string()) Invalid(key + " must be an array of strings");
      values.push_back(item.get<std::string>());
    }
    out_[key] = values;
    return values;
  }

  // Records a value computed by the caller.
  void Set(const std::string& key, json value) { out_[key] = std::move(value); }

  // Rejects keys nobody asked for.
  json Finish(std::initializer_list<std::string_view> passthrough = {}) {
    if (params_.is_object()) {
      for (const auto& [key, value] : params_.items()) {
        if (out_.contains(key) || seen_.contains(key)) continue;
        if (std::find(passthrough.begin(), passthrough.end(), key) !=
            passthrough.end()) {
          out_[key] = value;
          continue;
        }
        Invalid("unknown parameter '" + key + "'");
      }
    }
    return std::move(out_);
  }

 private:
  const json* Find(const std::string& key) {
    seen_.insert(key);
    if (!params_.is_object()) return nullptr;
    auto it = params_.find(key);
    if (it == params_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  const json& params_;
  json out_ = json::object();
  std::set<std::string> seen_;
};

void ReadPrepOptions(ParamReader& reader) {
  reader.Bool("lowercase", true);
  reader.Bool("remove_punctuation", true);
  reader.Bool("remove_copyright", false);
  const std::string normalization =
      reader.String("normalization").value_or("lemmatize");
  if (!ParseNormalization(normalization)) {
    Invalid("normalization must be none, lemmatize or stem");
  }
  reader.Set("normalization", normalization);
  std::vector<std::string> stopwords = reader.StringList("stopwords").value_or(
      std::vector<std::string>{});
  reader.Set("stopwords", stopwords);
}

PrepOptions PrepFromParams(const json& params) {
  PrepOptions options;
  options.lowercase = params.at("lowercase").get<bool>();
  options.remove_punctuation = params.at("remove_punctuation").get<bool>();
  options.remove_copyright = params.at("remove_copyright").get<bool>();
  options.normalization =
      *ParseNormalization(params.at("normalization").get<std::string>());
  options.SetExtraStopwords(params.at("stopwords").get<std::vector<std::string>>());
  return options;
}

TopicModelParams TopicFromParams(const json& params) {
  TopicModelParams p;
  p.k = params.at("k").get<int>();
  p.seed = params.at("seed").get<std::uint64_t>();
  p.top_n = params.at("top_n").get<int>();
  if (params.contains("alpha")) p.alpha = params.at("alpha").get<double>();
  if (params.contains("beta")) p.beta = params.at("beta").get<double>();
  if (params.contains("iterations")) p.iterations = params.at("iterations").get<int>();
  if (params.contains("lambda")) p.lambda_relevance = params.at("lambda").get<double>();
  return p;
}

std::string DefaultTextColumn(const Dataset& dataset) {
  const ColumnInfo* abstract = dataset.column(field::kAbstract);
  if (abstract != nullptr && abstract->non_empty > 0) {
    return std::string(field::kAbstract);
  }
  if (dataset.has_column(field::kTitle)) return std::string(field::kTitle);
  const auto text = DetectTextColumns(dataset.column_catalog());
  if (text.empty()) {
    throw Error(ErrorCode::kNotEligible, "no text column for topic modeling");
  }
  return text.front();
}

std::string DefaultMultivalueColumn(const Dataset& dataset) {
  const auto keywords = DetectKeywordColumns(dataset);
  for (const auto& name : keywords) {
    const ColumnInfo* info = dataset.column(name);
    if (info != nullptr && info->non_empty > 0) return name;
  }
  for (const auto& info : dataset.column_catalog()) {
    if (info.kind == ColumnKind::kMultivalue) return info.name;
  }
  throw Error(ErrorCode::kNotEligible, "no semicolon-delimited column");
}

json TermsToJson(const std::vector<RankedTerm>& terms, std::string_view weight_key) {
  json out = json::array();
  for (const auto& term : terms) {
    out.push_back({{"term", term.term}, {weight_key, term.weight}});
  }
  return out;
}

json MatrixToJson(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out.push_back(std::vector<double>(m.row(r).begin(), m.row(r).end()));
  }
  return out;
}

std::string PhiCsv(const Matrix& phi, const std::vector<std::string>& vocabulary) {
  std::string out;
  std::vector<std::string> row{"topic"};
  row.insert(row.end(), vocabulary.begin(), vocabulary.end());
  csv::AppendRow(out, row);
  for (std::size_t k = 0; k < phi.rows(); ++k) {
    row.assign({std::to_string(k)});
    for (double v : phi.row(k)) row.push_back(csv::FormatDouble(v));
    csv::AppendRow(out, row);
  }
  return out;
}

std::string ThetaCsv(const Matrix& theta, const std::vector<std::size_t>& doc_ids) {
  std::string out;
  std::vector<std::string> row{"row_index"};
  for (std::size_t k = 0; k < theta.cols(); ++k) row.push_back("topic_" + std::to_string(k));
  csv::AppendRow(out, row);
  for (std::size_t d = 0; d < theta.rows(); ++d) {
    row.assign({std::to_string(doc_ids[d])});
    for (double v : theta.row(d)) row.push_back(csv::FormatDouble(v));
    csv::AppendRow(out, row);
  }
  return out;
}

std::string RankedCsv(const TopicTerms& terms, std::string_view group,
                      std::string_view weight, const std::vector<int>* labels) {
  std::string out;
  csv::AppendRow(out, std::vector<std::string>{std::string(group), "rank", "term",
                                               std::string(weight)});
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const std::string id = labels ? std::to_string((*labels)[k]) : std::to_string(k);
    for (std::size_t r = 0; r < terms[k].size(); ++r) {
      csv::AppendRow(out, std::vector<std::string>{id, std::to_string(r + 1),
                                                   terms[k][r].term,
                                                   csv::FormatDouble(terms[k][r].weight)});
    }
  }
  return out;
}

// Keys shared by every topic analysis.
void NormalizeTopicParams(ParamReader& reader, bool sampler) {
  reader.String("column");
  reader.Int("k", 5, 2, 1000);
  reader.Seed("seed");
  reader.Int("top_n", 10, 1, 10000);
  if (sampler) {
    reader.Real("alpha", 0.1, 0.0, 1e6, true);
    reader.Real("beta", 0.01, 0.0, 1e6, true);
    reader.Int("iterations", 500, 1, 1000000);
    reader.Real("lambda", 0.6, 0.0, 1.0);
  }
  ReadPrepOptions(reader);
}

AnalysisOutput RunKeywordsStem(const Dataset& dataset, const json& params,
                               const Resources& resources) {
  const auto method =
      *ParseNormalization(params.at("method").get<std::string>());
  std::vector<std::string> columns;
  if (params.contains("columns")) {
    columns = params.at("columns").get<std::vector<std::string>>();
  }
  KeywordStemResult stem = StemKeywords(dataset, method, columns, resources.text);
  if (columns.empty()) columns = DetectKeywordColumns(dataset);

  std::set<std::string> after;
  json map = json::array();
  for (const auto& [original, modified] : stem.map.entries()) {
    map.push_back({{"original", original}, {"modified", modified}});
    if (!modified.empty()) after.insert(modified);
  }
  AnalysisOutput out;
  out.result = {{"analysis", "keywords_stem"},
                {"params", params},
                {"columns", columns},
                {"rows", stem.dataset.row_count()},
                {"distinct_keywords_before", stem.map.size()},
                {"distinct_keywords_after", after.size()},
                {"keyword_map", std::move(map)}};
  out.files.push_back({"result.csv", ToCanonicalCsv(stem.dataset)});
  out.files.push_back({"keywords_map.csv", stem.map.ToCsv()});
  return out;
}

TokenizedCorpus CorpusFor(const Dataset& dataset, const json& params,
                          const Resources& resources, std::string& column) {
  column = params.contains("column") ? params.at("column").get<std::string>()
                                     : DefaultTextColumn(dataset);
  return BuildCorpus(dataset, column, PrepFromParams(params), resources.text);
}

AnalysisOutput RunTopicModel(const Dataset& dataset, AnalysisKind kind,
                             json params, const Resources& resources) {
  std::string column;
  const TokenizedCorpus corpus = CorpusFor(dataset, params, resources, column);
  params["column"] = column;
  const TopicModelParams p = TopicFromParams(params);

  TopicModelResult fit;
  std::size_t num_biterms = 0;
  if (kind == AnalysisKind::kTopicLda) {
    fit = LdaFit(corpus, p);
  } else {
    const BitermSet biterms = ExtractBiterms(corpus);
    num_biterms = biterms.biterms.size();
    fit = BtmFit(biterms, p);
  }

  const std::vector<double> term_probs = TermProbabilities(corpus);
  const TopicTerms relevance = RelevanceRanking(
      fit.phi, term_probs, p.lambda_relevance, fit.vocabulary, p.top_n);

  json top_terms = json::array();
  for (const auto& terms : fit.top_terms) top_terms.push_back(TermsToJson(terms, "weight"));
  json relevance_terms = json::array();
  for (const auto& terms : relevance) {
    relevance_terms.push_back(TermsToJson(terms, "relevance"));
  }

  AnalysisOutput out;
  out.result = {{"analysis", AnalysisKindName(kind)},
                {"params", params},
                {"column", column},
                {"num_docs", corpus.docs.size()},
                {"doc_ids", corpus.doc_ids},
                {"vocabulary", fit.vocabulary},
                {"term_probabilities", term_probs},
                {"phi", MatrixToJson(fit.phi)},
                {"theta", MatrixToJson(fit.theta)},
                {"top_terms", std::move(top_terms)},
                {"relevance",
                 {{"lambda", p.lambda_relevance}, {"terms", std::move(relevance_terms)}}},
                {"log_likelihood", fit.log_likelihood},
                {"undefined_docs", fit.undefined_docs},
                {"warnings", fit.warnings}};
  if (kind == AnalysisKind::kTopicBtm) out.result["num_biterms"] = num_biterms;
  out.files.push_back({"phi.csv", PhiCsv(fit.phi, fit.vocabulary)});
  out.files.push_back({"theta.csv", ThetaCsv(fit.theta, corpus.doc_ids)});
  out.files.push_back({"top_terms.csv", RankedCsv(fit.top_terms, "topic", "probability",
                                                  nullptr)});
  return out;
}

AnalysisOutput RunCtfidf(const Dataset& dataset, json params,
                         const Resources& resources) {
  std::string column;
  const TokenizedCorpus corpus = CorpusFor(dataset, params, resources, column);
  params["column"] = column;
  const std::string embeddings_text = params.at(std::string(kEmbeddingsKey)).get<std::string>();
  params.erase(std::string(kEmbeddingsKey));

  const auto vectors = ParseEmbeddingsCsv(embeddings_text, dataset.row_count());
  const int k = params.at("k").get<int>();
  const auto seed = params.at("seed").get<std::uint64_t>();
  const auto top_n = params.at("top_n").get<std::size_t>();
  const std::vector<int> labels = ClusterEmbeddings(vectors, k, seed);

  // Corpus documents are dataset rows, so labels line up one to one.
  std::vector<int> doc_labels;
  doc_labels.reserve(corpus.docs.size());
  for (std::size_t row : corpus.doc_ids) doc_labels.push_back(labels[row]);
  CtfidfResult tfidf = Ctfidf(corpus, doc_labels);
  for (auto& terms : tfidf.ranked) {
    if (terms.size() > top_n) terms.resize(top_n);
  }

  json clusters = json::array();
  for (std::size_t c = 0; c < tfidf.classes.size(); ++c) {
    clusters.push_back({{"label", tfidf.classes[c]},
                        {"size", tfidf.class_sizes[c]},
                        {"terms", TermsToJson(tfidf.ranked[c], "weight")}});
  }
  AnalysisOutput out;
  out.result = {{"analysis", "topic_ctfidf"},
                {"params", params},
                {"column", column},
                {"num_docs", corpus.docs.size()},
                {"doc_ids", corpus.doc_ids},
                {"labels", doc_labels},
                {"average_class_tokens", tfidf.average_class_tokens},
                {"clusters", std::move(clusters)}};

  std::string labels_csv = "row_index,label\n";
  for (std::size_t d = 0; d < doc_labels.size(); ++d) {
    labels_csv += std::to_string(corpus.doc_ids[d]) + "," +
                  std::to_string(doc_labels[d]) + "\n";
  }
  out.files.push_back({"labels.csv", std::move(labels_csv)});
  out.files.push_back(
      {"terms.csv", RankedCsv(tfidf.ranked, "label", "weight", &tfidf.classes)});
  return out;
}

AnalysisOutput RunNetwork(const Dataset& dataset, json params) {
  const std::string column = params.contains("column")
                                 ? params.at("column").get<std::string>()
                                 : DefaultMultivalueColumn(dataset);
  params["column"] = column;
  const TransactionSet transactions = BuildTransactions(dataset, column);
  const ItemsetTable table =
      MineItemsets(transactions, params.at("min_support").get<double>());
  const auto rules = DeriveRules(table, params.at("min_confidence").get<double>());

  std::optional<std::set<std::string>> selected;
  if (params.contains("selected_nodes")) {
    selected.emplace();
    for (const auto& node : params.at("selected_nodes")) {
      selected->insert(node.get<std::string>());
    }
  }
  const RuleGraph graph = BuildGraph(rules, ItemCounts(transactions), selected);

  json itemsets = json::array();
  for (const auto& itemset : table.itemsets) {
    itemsets.push_back({{"items", itemset.items},
                        {"count", itemset.count},
                        {"support", itemset.support}});
  }
  AnalysisOutput out;
  const json graph_json = GraphToJson(graph);
  out.result = {{"analysis", "network"},
                {"params", params},
                {"column", column},
                {"num_transactions", transactions.size()},
                {"itemsets", std::move(itemsets)},
                {"rules", RulesToJson(rules)},
                {"graph", graph_json}};
  out.files.push_back({"rules.csv", RulesToCsv(rules)});
  out.files.push_back({"graph.json", SerializeResult(graph_json)});
  out.files.push_back({"graph.graphml", GraphToGraphml(graph)});
  return out;
}

AnalysisOutput RunSunburst(const Dataset& dataset, const json& params) {
  std::optional<YearRange> range;
  if (params.contains("year_min") || params.contains("year_max")) {
    range = YearRange{
        params.value("year_min", std::numeric_limits<int>::min()),
        params.value("year_max", std::numeric_limits<int>::max())};
  }
  const SunburstResult sunburst = BuildSunburst(dataset, range);
  const SunburstFlat flat = FlattenSunburst(sunburst.root);
  AnalysisOutput out;
  out.result = {{"analysis", "sunburst"},
                {"params", params},
                {"included_rows", sunburst.root.count},
                {"excluded_rows", sunburst.excluded_rows},
                {"filtered_rows", sunburst.filtered_rows},
                {"tree", SunburstToJson(sunburst.root)},
                {"flat", FlatToJson(flat)}};
  out.files.push_back({"sunburst_flat.csv", FlatToCsv(flat)});
  return out;
}

}  // namespace

std::string_view AnalysisKindName(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::kKeywordsStem: return "keywords_stem";
    case AnalysisKind::kTopicLda: return "topic_lda";
    case AnalysisKind::kTopicBtm: return "topic_btm";
    case AnalysisKind::kTopicCtfidf: return "topic_ctfidf";
    case AnalysisKind::kNetwork: return "network";
    case AnalysisKind::kSunburst: return "sunburst";
  }
  return "";
}

std::optional<AnalysisKind> ParseAnalysisKind(std::string_view name) {
  for (AnalysisKind kind : kAllAnalysisKinds) {
    if (AnalysisKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

Analysis RequiredCapability(AnalysisKind kind) {
  switch (kind) {
    case AnalysisKind::kKeywordsStem: return Analysis::kKeywordsStem;
    case AnalysisKind::kTopicLda:
    case AnalysisKind::kTopicBtm:
    case AnalysisKind::kTopicCtfidf: return Analysis::kTopicModeling;
    case AnalysisKind::kNetwork: return Analysis::kBidirectionalNetwork;
    case AnalysisKind::kSunburst: return Analysis::kSunburst;
  }
  return Analysis::kKeywordsStem;
}

json NormalizeParams(AnalysisKind kind, const json& params) {
  ParamReader reader(params);
  switch (kind) {
    case AnalysisKind::kKeywordsStem: {
      const std::string method = reader.String("method").value_or("lemmatize");
      if (method != "lemmatize" && method != "stem") {
        Invalid("method must be lemmatize or stem");
      }
      reader.Set("method", method);
      reader.StringList("columns");
      return reader.Finish();
    }
    case AnalysisKind::kTopicLda:
    case AnalysisKind::kTopicBtm:
      NormalizeTopicParams(reader, true);
      return reader.Finish();
    case AnalysisKind::kTopicCtfidf: {
      NormalizeTopicParams(reader, false);
      if (!reader.String(std::string(kEmbeddingsKey))) {
        Invalid("embeddings_csv is required for topic_ctfidf");
      }
      return reader.Finish();
    }
    case AnalysisKind::kNetwork: {
      reader.String("column");
      reader.Real("min_support", 0.02, 0.0, 1.0, true);
      reader.Real("min_confidence", 0.3, 0.0, 1.0, true);
      if (auto nodes = reader.StringList("selected_nodes")) {
        std::set<std::string> normalized;
        for (const auto& node : *nodes) {
          std::string item = utf8::CollapseWhitespace(utf8::ToLower(utf8::Trim(node)));
          if (!item.empty()) normalized.insert(std::move(item));
        }
        reader.Set("selected_nodes",
                   std::vector<std::string>(normalized.begin(), normalized.end()));
      }
      return reader.Finish();
    }
    case AnalysisKind::kSunburst: {
      constexpr std::int64_t kMinYear = 1000;
      constexpr std::int64_t kMaxYear = 9999;
      const bool has_min = params.is_object() && params.contains("year_min") &&
                           !params.at("year_min").is_null();
      const bool has_max = params.is_object() && params.contains("year_max") &&
                           !params.at("year_max").is_null();
      std::int64_t lo = kMinYear;
      std::int64_t hi = kMaxYear;
      if (has_min) lo = reader.Int("year_min", kMinYear, kMinYear, kMaxYear);
      if (has_max) hi = reader.Int("year_max", kMaxYear, kMinYear, kMaxYear);
      if (lo > hi) Invalid("year_min exceeds year_max");
      return reader.Finish();
    }
  }
  Invalid("unknown analysis");
}

void RequireEligible(const Dataset& dataset, AnalysisKind kind) {
  const CapabilityReport report = CheckCapabilities(dataset);
  const AnalysisCapability& capability = report.at(RequiredCapability(kind));
  if (capability.eligible) return;
  std::string missing;
  for (const auto& name : capability.missing_fields) {
    missing += (missing.empty() ? "" : ", ") + name;
  }
  throw Error(ErrorCode::kNotEligible, std::string(AnalysisKindName(kind)) +
                                           " is not available; missing: " + missing);
}

AnalysisOutput RunAnalysis(const Dataset& dataset, AnalysisKind kind,
                           const json& params, const Resources& resources) {
  json normalized = NormalizeParams(kind, params);
  RequireEligible(dataset, kind);
  switch (kind) {
    case AnalysisKind::kKeywordsStem:
      return RunKeywordsStem(dataset, normalized, resources);
    case AnalysisKind::kTopicLda:
    case AnalysisKind::kTopicBtm:
      return RunTopicModel(dataset, kind, std::move(normalized), resources);
    case AnalysisKind::kTopicCtfidf:
      return RunCtfidf(dataset, std::move(normalized), resources);
    case AnalysisKind::kNetwork:
      return RunNetwork(dataset, std::move(normalized));
    case AnalysisKind::kSunburst:
      return RunSunburst(dataset, normalized);
  }
  Invalid("unknown analysis");
}

std::string SerializeResult(const json& result) { return result.dump(2) + "\n"; }

}  // namespace bibliotext
