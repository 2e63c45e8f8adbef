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

#include <sys/wait.h>

#include <cstdlib>

#include "test_support.hpp"

namespace bt_test = bibliotext::testing;

namespace {

int Run(const std::string& args) {
  const std::string command =
      std::string("\"") + BIBLIOTEXT_CLI_PATH + "\" " + args + " > /dev/null 2>&1";
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

std::string Fixture(const std::string& name) {
  return "\"" + bt_test::FixturePath(name).string() + "\"";
}

}  // namespace

TEST_CASE("check succeeds on every fixture") {
  for (const auto& name : bt_test::FixtureNames()) {
    CAPTURE(name);
    CHECK(Run("check " + Fixture(name)) == 0);
    CHECK(Run("check --json " + Fixture(name)) == 0);
  }
}

TEST_CASE("analyses write their files") {
  bt_test::TempDir dir("cli-out");
  const std::string out = " --out \"" + dir.path().string() + "\"";
  REQUIRE(Run("lda " + Fixture("scopus.csv") + " --k 2 --iterations 20" + out) == 0);
  for (const char* name : {"result.json", "phi.csv", "theta.csv", "top_terms.csv"}) {
    CHECK(std::filesystem::exists(dir.path() / name));
  }
  const auto embeddings = dir.path() / "emb.csv";
  bt_test::WriteFile(embeddings, bt_test::SyntheticEmbeddingsCsv(40, 3, 2, 4));
  CHECK(Run("ctfidf " + Fixture("scopus.csv") + " --k 2 --embeddings_csv \"" +
            embeddings.string() + "\"" + out) == 0);
  CHECK(std::filesystem::exists(dir.path() / "labels.csv"));
  CHECK(Run("net " + Fixture("wos.txt") + out) == 0);
  CHECK(std::filesystem::exists(dir.path() / "graph.graphml"));
  CHECK(Run("sunburst " + Fixture("lens.csv") + out) == 0);
  CHECK(Run("stem " + Fixture("wos_tagged.txt") + " --method lemmatize" + out) == 0);
  CHECK(Run("btm " + Fixture("custom_survey.csv") + " --k 2 --iterations 20" + out) == 0);
}

TEST_CASE("exit codes") {
  bt_test::TempDir dir("cli-codes");
  const std::string out = " --out \"" + dir.path().string() + "\"";
  CHECK(Run("check /dev/null") == 2);
  CHECK(Run("check \"" + (dir.path() / "missing.csv").string() + "\"") == 1);
  CHECK(Run("sunburst " + Fixture("custom_minimal.csv") + out) == 3);
  CHECK(Run("stem " + Fixture("custom_minimal.csv") + out) == 3);
  CHECK(Run("lda " + Fixture("scopus.csv") + " --k 1" + out) == 4);
  CHECK(Run("lda " + Fixture("scopus.csv") + " --lambda 2" + out) == 4);
  CHECK(Run("lda " + Fixture("scopus.csv") + " --no-such-flag" + out) == 4);
  CHECK(Run("ctfidf " + Fixture("scopus.csv") + out) == 4);
  CHECK(Run("") == 4);
}
