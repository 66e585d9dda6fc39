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


// Stage-per-command pipeline: extract-patterns, select-patterns,
// extract-knowledge, train-ranker, rank, stats. Every stage reads its inputs
// from the configured paths and the output directory, computes everything in
// memory, and only then writes its outputs.

#ifndef KGMINE_PIPELINE_H_
#define KGMINE_PIPELINE_H_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace kgmine {

struct PipelineConfig {
  std::string corpus_path;
  std::string seed_kb_path;
  std::string output_dir = "out";
  double pattern_threshold = 0.05;
  double top_percent = 1.0;
  int embed_dim = 32;
  int encoder_layers = 1;
  double learning_rate = 0.1;
  int epochs = 100;
  uint64_t rng_seed = 1;
  bool positional = false;
  int workers = 1;
  int annotate_per_relation = 1000;

  // Throws ValidationError.
  void Validate() const;
};

// Applies a flat key=value config (keys named like the CLI flags, '#'
// comments allowed). Relative corpus, seed-kb and out paths are taken
// relative to base_dir when it is non-empty. Throws ValidationError on
// unknown keys or bad values.
void ApplyConfigText(const std::string &text, PipelineConfig *config,
                     const std::string &base_dir = "");
void ApplyConfigValue(const std::string &key, const std::string &value, PipelineConfig *config);

// Output file names inside output_dir.
namespace files {
inline constexpr const char *kPatterns = "patterns.tsv";
inline constexpr const char *kPatternStats = "pattern_stats.json";
inline constexpr const char *kSelectedPatterns = "patterns.selected.tsv";
inline constexpr const char *kKnowledge = "knowledge.tsv";
inline constexpr const char *kAnnotationSample = "annotation_sample.tsv";
inline constexpr const char *kCheckpoint = "ranker.json";
inline constexpr const char *kRankedKnowledge = "knowledge.ranked.tsv";
inline constexpr const char *kTopKnowledge = "knowledge.top.tsv";
inline constexpr const char *kNoveltyText = "novelty.txt";
inline constexpr const char *kNoveltyJson = "novelty.json";
}  // namespace files

void RunExtractPatterns(const PipelineConfig &config, std::ostream &out, std::ostream &err);
void RunSelectPatterns(const PipelineConfig &config, std::ostream &out, std::ostream &err);
void RunExtractKnowledge(const PipelineConfig &config, std::ostream &out, std::ostream &err);
void RunTrainRanker(const PipelineConfig &config, const std::string &annotations_path,
                    std::ostream &out, std::ostream &err);
void RunRank(const PipelineConfig &config, const std::string &checkpoint_path, std::ostream &out,
             std::ostream &err);
void RunStats(const PipelineConfig &config, std::ostream &out, std::ostream &err);

// Full command line (args[0] is the program name). Returns the exit code:
// 0 success, 1 validation error, 2 I/O error.
int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace kgmine

#endif  // KGMINE_PIPELINE_H_
