// Copyright 2026 The kgmine Authors.
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


#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "kgmine/pipeline.h"
#include "kgmine/text.h"
#include "testing.h"

namespace kgmine {
namespace {

namespace fs = std::filesystem;

const std::string kMini = std::string(KGMINE_DATA_DIR) + "/mini";
const char *kCapable = "H0|T0;T0-nsubj->H0";
const char *kFor = "H0|I0=for|T0;H0-prep->I0;I0-pobj->T0";

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult Run(std::vector<std::string> args) {
  args.insert(args.begin(), "kgmine");
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string FreshDir(const std::string &name) {
  std::string dir = testing::TempPath("cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::vector<std::string> Stage(const std::string &stage, const std::string &out,
                               std::vector<std::string> extra = {}) {
  std::vector<std::string> args = {stage, "--config", kMini + "/config.txt", "--out", out};
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

// Runs all six stages and returns the concatenated output files.
std::string RunAll(const std::string &out, const std::string &workers) {
  const std::vector<std::string> w = {"--workers", workers};
  REQUIRE(Run(Stage("extract-patterns", out, w)).code == 0);
  REQUIRE(Run(Stage("select-patterns", out, w)).code == 0);
  REQUIRE(Run(Stage("extract-knowledge", out, w)).code == 0);
  std::vector<std::string> train = Stage("train-ranker", out, w);
  train.push_back(kMini + "/annotations.tsv");
  REQUIRE(Run(train).code == 0);
  REQUIRE(Run(Stage("rank", out, w)).code == 0);
  REQUIRE(Run(Stage("stats", out, w)).code == 0);
  std::string all;
  for (const char *name : {files::kPatterns, files::kPatternStats, files::kSelectedPatterns,
                           files::kKnowledge, files::kAnnotationSample, files::kCheckpoint,
                           files::kRankedKnowledge, files::kTopKnowledge, files::kNoveltyText,
                           files::kNoveltyJson}) {
    all += std::string("== ") + name + "\n" + ReadFile((fs::path(out) / name).string());
  }
  return all;
}

TEST_CASE("config file parsing") {
  PipelineConfig config;
  ApplyConfigText("# comment\ncorpus = c.jsonl\nthreshold=0.2  # trailing\n\nworkers=3\n", &config);
  CHECK(config.corpus_path == "c.jsonl");
  CHECK(config.pattern_threshold == 0.2);
  CHECK(config.workers == 3);
  CHECK(config.epochs == 100);

  PipelineConfig based;
  ApplyConfigText("corpus=c.jsonl\nout=/abs/out\n", &based, "/data/x");
  CHECK(based.corpus_path == "/data/x/c.jsonl");
  CHECK(based.output_dir == "/abs/out");

  CHECK_THROWS(ApplyConfigText("bogus=1\n", &config));
  CHECK_THROWS(ApplyConfigText("threshold=abc\n", &config));
  CHECK_THROWS(ApplyConfigText("just words\n", &config));
}

TEST_CASE("flags override the config file") {
  std::string dir = FreshDir("override");
  testing::WriteText(dir + "/config.txt", "corpus=" + kMini + "/corpus.jsonl\nseed-kb=" + kMini +
                                              "/seed_kb.tsv\nthreshold=0.99\n");
  const std::vector<std::string> base = {"--config", dir + "/config.txt", "--out", dir};
  std::vector<std::string> args = {"extract-patterns"};
  args.insert(args.end(), base.begin(), base.end());
  REQUIRE(Run(args).code == 0);

  args[0] = "select-patterns";
  REQUIRE(Run(args).code == 0);
  std::string strict = ReadFile(dir + "/" + files::kSelectedPatterns);
  args.insert(args.end(), {"--threshold", "0.05"});
  REQUIRE(Run(args).code == 0);
  std::string loose = ReadFile(dir + "/" + files::kSelectedPatterns);
  CHECK(strict.find("HasProperty") == std::string::npos);
  CHECK(loose.find("HasProperty") != std::string::npos);
  CHECK(loose.find(std::string("CapableOf\t") + kCapable + "\t") != std::string::npos);
}

TEST_CASE("exit codes") {
  std::string dir = FreshDir("codes");
  CHECK(Run({"extract-patterns", "--no-such-flag"}).code == 1);
  CHECK(Run({}).code == 1);
  CliResult missing = Run({"extract-patterns", "--corpus", dir + "/nope.jsonl", "--seed-kb",
                           kMini + "/seed_kb.tsv", "--out", dir});
  CHECK(missing.code == 2);
  CHECK_FALSE(missing.err.empty());

  testing::WriteText(dir + "/bad.jsonl", "{\"id\": \"x\"}\n");
  CHECK(Run({"extract-patterns", "--corpus", dir + "/bad.jsonl", "--seed-kb",
             kMini + "/seed_kb.tsv", "--out", dir})
            .code == 1);
  CHECK(Run(Stage("select-patterns", dir + "/empty_out")).code == 2);
  CHECK(Run(Stage("extract-patterns", dir, {"--workers", "0"})).code == 1);
  CHECK(Run(Stage("extract-patterns", dir, {"--threshold", "-1"})).code == 1);

  // Unknown graph ids in annotations are listed.
  testing::WriteText(dir + "/ann.tsv", "dog\tCapableOf\tbark\t1\tg000,zz9\n");
  CliResult train = Run(Stage("train-ranker", dir, {dir + "/ann.tsv"}));
  CHECK(train.code == 1);
  CHECK(train.err.find("zz9") != std::string::npos);

  // The installed binary maps errors to the same codes.
  std::string cmd = std::string(KGMINE_CLI_PATH) + " stats --seed-kb " + kMini +
                    "/seed_kb.tsv --out " + dir + "/void >/dev/null 2>&1";
  int status = std::system(cmd.c_str());
  CHECK(WEXITSTATUS(status) == 2);
  status = std::system((std::string(KGMINE_CLI_PATH) + " --help >/dev/null 2>&1").c_str());
  CHECK(WEXITSTATUS(status) == 0);
}

TEST_CASE("empty seed kb") {
  std::string dir = FreshDir("empty");
  testing::WriteText(dir + "/seed.tsv", "");
  REQUIRE(Run({"extract-patterns", "--corpus", kMini + "/corpus.jsonl", "--seed-kb",
               dir + "/seed.tsv", "--out", dir})
              .code == 0);
  CHECK(ReadFile(dir + "/" + files::kPatterns).empty());
  std::string stats = ReadFile(dir + "/" + files::kPatternStats);
  CHECK(stats.find("\"ambiguous\": 0") != std::string::npos);
  CHECK(stats.find("\"missing\": 0") != std::string::npos);
}

TEST_CASE("select-patterns on the worked example") {
  std::string dir = FreshDir("worked");
  testing::WriteText(dir + "/" + files::kPatterns,
                     std::string("r1\t") + kCapable + "\t\nr1\t" + kFor + "\t\nr2\t" + kCapable + "\t\n");
  testing::WriteText(dir + "/" + files::kPatternStats,
                     std::string(R"({"relation_sizes": {"r1": 4, "r2": 9}, "patterns": [)") +
                         R"({"relation": "r1", "key": ")" + kCapable + R"(", "count": 2, "length": 1},)" +
                         R"({"relation": "r2", "key": ")" + kCapable + R"(", "count": 3, "length": 1},)" +
                         R"({"relation": "r1", "key": ")" + kFor + R"(", "count": 2, "length": 2}]})");
  REQUIRE(Run({"select-patterns", "--out", dir}).code == 0);
  std::string text = ReadFile(dir + "/" + files::kSelectedPatterns);
  CHECK(text == std::string("r1\t") + kFor + "\t0.8\nr1\t" + kCapable + "\t0.2\nr2\t" + kCapable + "\t1\n");

  REQUIRE(Run({"select-patterns", "--out", dir, "--threshold", "0.5"}).code == 0);
  CHECK(ReadFile(dir + "/" + files::kSelectedPatterns) ==
        std::string("r1\t") + kFor + "\t0.8\nr2\t" + kCapable + "\t1\n");
}

TEST_CASE("pipeline reruns are byte-identical and independent of workers") {
  std::string a = RunAll(FreshDir("run_a"), "1");
  std::string b = RunAll(FreshDir("run_b"), "1");
  std::string c = RunAll(FreshDir("run_c"), "4");
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.find(std::string("CapableOf\t") + kCapable) != std::string::npos);
}

}  // namespace
}  // namespace kgmine
