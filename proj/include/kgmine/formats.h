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


// Row types and readers/writers for the TSV files exchanged between stages:
//
//   patterns:    relation  key  plausibility
//   knowledge:   head  relation  tail  support_count  pattern_keys  score
//   annotations: head  relation  tail  label  graph_ids
//
// Optional numeric columns are written blank when absent. Lists are
// comma-joined.

#ifndef KGMINE_FORMATS_H_
#define KGMINE_FORMATS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgmine {

struct PatternRow {
  std::string relation;
  std::string key;
  std::optional<double> plausibility;
};

struct KnowledgeRow {
  std::string head;
  std::string relation;
  std::string tail;
  int support_count = 0;
  std::vector<std::string> pattern_keys;
  std::optional<double> score;
};

struct AnnotationRow {
  std::string head;
  std::string relation;
  std::string tail;
  std::optional<int> label;
  std::vector<std::string> graph_ids;
};

std::string FormatPatternRows(const std::vector<PatternRow> &rows);
std::vector<PatternRow> ParsePatternRows(std::string_view content);

std::string FormatKnowledgeRows(const std::vector<KnowledgeRow> &rows);
std::vector<KnowledgeRow> ParseKnowledgeRows(std::string_view content);

std::string FormatAnnotationRows(const std::vector<AnnotationRow> &rows);
// When require_label is set, every row must carry a 0/1 label.
std::vector<AnnotationRow> ParseAnnotationRows(std::string_view content, bool require_label);

}  // namespace kgmine

#endif  // KGMINE_FORMATS_H_
