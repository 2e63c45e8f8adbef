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

// bibliotext: batch command-line front end over the analysis engine.
//
// Exit codes:
//   0  success
//   1  analysis or I/O failure
//   2  input could not be parsed
//   3  input lacks what the analysis needs
//   4  invalid parameters or usage

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "bibliotext/capability.hpp"
#include "bibliotext/engine.hpp"
#include "bibliotext/error.hpp"
#include "bibliotext/ingest.hpp"
#include "bibliotext/resources.hpp"

namespace {

namespace fs = std::filesystem;
using bibliotext::AnalysisKind;
using bibliotext::Error;
using bibliotext::ErrorCode;
using nlohmann::json;

enum ExitCode { kOk = 0, kFailure = 1, kParseFailure = 2, kIneligible = 3, kBadParams = 4 };

int ExitFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUndecodableFile:
    case ErrorCode::kEmptyFile:
    case ErrorCode::kMissingHeader:
    case ErrorCode::kMalformedRow:
      return kParseFailure;
    case ErrorCode::kNotEligible:
    case ErrorCode::kNoKeywordColumns:
    case ErrorCode::kNoMultivalueContent:
      return kIneligible;
    case ErrorCode::kInvalidParams:
    case ErrorCode::kInvalidLambda:
    case ErrorCode::kInvalidSupport:
    case ErrorCode::kInvalidConfidence:
    case ErrorCode::kUnknownColumn:
    case ErrorCode::kNonTextColumn:
      return kBadParams;
    default:
      return kFailure;
  }
}

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Options every subcommand shares.
struct Common {
  std::string input;
  std::string source;
  std::string out = "bibliotext_out";
  bool json_output = false;
};

// Flags carry API parameter names one to one; only flags the user passed
// make it into the request so defaults stay in one place.
class ParamFlags {
 public:
  explicit ParamFlags(CLI::App* app) : app_(app) {}

  template <typename T>
  void Add(const std::string& name, const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* option = app_->add_option("--" + name, *value, help);
    setters_.push_back([name, option, value](json& params) {
      if (option->count() > 0) params[name] = *value;
    });
  }

  void AddList(const std::string& name, const std::string& help) {
    auto value = std::make_shared<std::vector<std::string>>();
    CLI::Option* option =
        app_->add_option("--" + name, *value, help)->delimiter(',');
    setters_.push_back([name, option, value](json& params) {
      if (option->count() > 0) params[name] = *value;
    });
  }

  json Collect() const {
    json params = json::object();
    for (const auto& set : setters_) set(params);
    return params;
  }

 private:
  CLI::App* app_;
  std::vector<std::function<void(json&)>> setters_;
};

void AddCommon(CLI::App* app, Common& common, bool with_out) {
  app->add_option("input", common.input, "Export file (Scopus, WoS, Lens or custom)")
      ->required();
  app->add_option("--source", common.source,
                  "Force the source kind instead of detecting it")
      ->check(CLI::IsMember({"scopus", "wos", "lens", "custom"}));
  if (with_out) {
    app->add_option("--out", common.out, "Output directory")->capture_default_str();
  }
  app->add_flag("--json", common.json_output, "Print machine-readable JSON to stdout");
}

bibliotext::Dataset Load(const Common& common,
                         const bibliotext::Resources& resources) {
  const std::string raw = ReadFileOrThrow(common.input);
  const std::string filename = fs::path(common.input).filename().string();
  if (common.source.empty()) {
    return bibliotext::LoadDataset(raw, filename, resources.mappings);
  }
  const auto kind = *bibliotext::ParseSourceKind(common.source);
  return bibliotext::ParseDataset(raw, kind, resources.mappings.For(kind));
}

void AddTextFlags(ParamFlags& flags) {
  flags.Add<std::string>("column", "Text column (default: Abstract, else Title)");
  flags.Add<std::string>("normalization", "none, lemmatize or stem");
  flags.Add<bool>("lowercase", "Case-fold text (true/false)");
  flags.Add<bool>("remove_punctuation", "Replace punctuation with spaces (true/false)");
  flags.Add<bool>("remove_copyright", "Drop copyright sentences (true/false)");
  flags.AddList("stopwords", "Extra stopwords, comma separated");
}

void AddTopicFlags(ParamFlags& flags) {
  flags.Add<std::int64_t>("k", "Topic count (>= 2)");
  flags.Add<double>("alpha", "Document-topic prior");
  flags.Add<double>("beta", "Topic-term prior");
  flags.Add<std::int64_t>("iterations", "Gibbs sweeps");
  flags.Add<std::uint64_t>("seed", "Random seed");
  flags.Add<std::int64_t>("top_n", "Terms reported per topic");
  flags.Add<double>("lambda", "Relevance weight in [0, 1]");
  AddTextFlags(flags);
}

int RunCheck(const Common& common, const bibliotext::Resources& resources) {
  const bibliotext::Dataset dataset = Load(common, resources);
  const bibliotext::CapabilityReport report = bibliotext::CheckCapabilities(dataset);
  if (common.json_output) {
    std::cout << report.ToJson().dump(2) << "\n";
  } else {
    std::cout << "source: " << bibliotext::SourceKindName(dataset.source())
              << ", rows: " << dataset.row_count() << "\n"
              << bibliotext::RenderCapabilityTable(report);
  }
  for (const auto& warning : dataset.warnings()) std::cerr << "warning: " << warning << "\n";
  return kOk;
}

int RunJob(const Common& common, AnalysisKind kind, json params,
           const std::string& embeddings_path, const bibliotext::Resources& resources) {
  if (!embeddings_path.empty()) params["embeddings_csv"] = ReadFileOrThrow(embeddings_path);
  const bibliotext::Dataset dataset = Load(common, resources);
  const bibliotext::AnalysisOutput output =
      bibliotext::RunAnalysis(dataset, kind, params, resources);

  fs::create_directories(common.out);
  std::vector<bibliotext::OutputFile> files = output.files;
  files.insert(files.begin(), {"result.json", bibliotext::SerializeResult(output.result)});
  for (const auto& file : files) {
    const fs::path path = fs::path(common.out) / file.name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(file.content.data(), static_cast<std::streamsize>(file.content.size()));
    if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
    if (!common.json_output) {
      std::cout << "wrote " << path.string() << " (" << file.content.size() << " bytes)\n";
    }
  }
  if (common.json_output) std::cout << bibliotext::SerializeResult(output.result);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bibliometric text analysis: file checker, keyword stemming, topic "
               "models, association networks and sunburst data."};
  app.require_subcommand(1);
  app.set_version_flag("--version", "bibliotext 0.1.0");

  struct Sub {
    CLI::App* app;
    Common common;
    std::unique_ptr<ParamFlags> flags;
    std::optional<AnalysisKind> kind;
    std::string embeddings;
  };
  std::vector<std::unique_ptr<Sub>> subs;
  auto add = [&](const std::string& name, const std::string& help,
                 std::optional<AnalysisKind> kind) -> Sub& {
    auto sub = std::make_unique<Sub>();
    sub->app = app.add_subcommand(name, help);
    sub->kind = kind;
    sub->flags = std::make_unique<ParamFlags>(sub->app);
    AddCommon(sub->app, sub->common, kind.has_value());
    subs.push_back(std::move(sub));
    return *subs.back();
  };

  add("check", "Report which analyses the file supports", std::nullopt);

  Sub& stem = add("stem", "Lemmatize or stem keyword columns", AnalysisKind::kKeywordsStem);
  stem.flags->Add<std::string>("method", "lemmatize or stem");
  stem.flags->AddList("columns", "Keyword columns, comma separated (default: all)");

  Sub& lda = add("lda", "Latent Dirichlet allocation (collapsed Gibbs)",
                 AnalysisKind::kTopicLda);
  AddTopicFlags(*lda.flags);

  Sub& btm = add("btm", "Biterm topic model for short texts", AnalysisKind::kTopicBtm);
  AddTopicFlags(*btm.flags);

  Sub& ctfidf = add("ctfidf", "k-means over document embeddings with c-TF-IDF labels",
                    AnalysisKind::kTopicCtfidf);
  ctfidf.flags->Add<std::int64_t>("k", "Cluster count (>= 2)");
  ctfidf.flags->Add<std::uint64_t>("seed", "Random seed");
  ctfidf.flags->Add<std::int64_t>("top_n", "Terms reported per cluster");
  AddTextFlags(*ctfidf.flags);
  ctfidf.app
      ->add_option("--embeddings_csv", ctfidf.embeddings,
                   "Embeddings sidecar: row_index,v0,...,v{dim-1}")
      ->required();

  Sub& net = add("net", "Association rules and the bidirectional keyword network",
                 AnalysisKind::kNetwork);
  net.flags->Add<std::string>("column", "Semicolon-delimited column");
  net.flags->Add<double>("min_support", "Minimum itemset support in (0, 1]");
  net.flags->Add<double>("min_confidence", "Minimum rule confidence in (0, 1]");
  net.flags->AddList("selected_nodes", "Keep only these nodes, comma separated");

  Sub& sunburst = add("sunburst", "Document type / source / year hierarchy",
                      AnalysisKind::kSunburst);
  sunburst.flags->Add<std::int64_t>("year_min", "First year included");
  sunburst.flags->Add<std::int64_t>("year_max", "Last year included");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadParams;
  }

  try {
    const bibliotext::Resources& resources = bibliotext::Resources::Default();
    for (const auto& sub : subs) {
      if (!sub->app->parsed()) continue;
      if (!sub->kind) return RunCheck(sub->common, resources);
      return RunJob(sub->common, *sub->kind, sub->flags->Collect(), sub->embeddings,
                    resources);
    }
  } catch (const bibliotext::MalformedRowError& e) {
    std::cerr << "error: " << bibliotext::ErrorCodeName(e.code()) << " at row " << e.row()
              << ": " << e.what() << "\n";
    return ExitFor(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << bibliotext::ErrorCodeName(e.code()) << ": " << e.what()
              << "\n";
    return ExitFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
