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


#include "kgmine/formats.h"

#include <cerrno>
#include <charconv>
#include <cmath>

#include "kgmine/errors.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

std::vector<std::vector<std::string>> Rows(std::string_view content, size_t columns,
                                           std::string_view what) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> lines = Split(content, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != columns) {
      throw ValidationError(std::string(what) + " line " + std::to_string(i + 1) + ": expected " +
                            std::to_string(columns) + " columns, found " +
                            std::to_string(fields.size()));
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

std::optional<double> ParseOptionalReal(const std::string &text, std::string_view what) {
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  auto result = std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size() || !std::isfinite(value)) {
    throw ValidationError(std::string(what) + ": bad number '" + text + "'");
  }
  return value;
}

std::string OptionalReal(const std::optional<double> &value) {
  return value ? FormatReal(*value) : std::string();
}

std::vector<std::string> SplitList(const std::string &text) {
  if (text.empty()) return {};
  return Split(text, ',');
}

}  // namespace

std::string FormatPatternRows(const std::vector<PatternRow> &rows) {
  std::string out;
  for (const PatternRow &row : rows) {
    out += row.relation + "\t" + row.key + "\t" + OptionalReal(row.plausibility) + "\n";
  }
  return out;
}

std::vector<PatternRow> ParsePatternRows(std::string_view content) {
  std::vector<PatternRow> rows;
  for (auto &fields : Rows(content, 3, "pattern file")) {
    if (fields[0].empty() || fields[1].empty()) throw ValidationError("pattern file: empty field");
    rows.push_back({fields[0], fields[1], ParseOptionalReal(fields[2], "pattern file")});
  }
  return rows;
}

std::string FormatKnowledgeRows(const std::vector<KnowledgeRow> &rows) {
  std::string out;
  for (const KnowledgeRow &row : rows) {
    out += row.head + "\t" + row.relation + "\t" + row.tail + "\t" +
           std::to_string(row.support_count) + "\t" + Join(row.pattern_keys, ",") + "\t" +
           OptionalReal(row.score) + "\n";
  }
  return out;
}

std::vector<KnowledgeRow> ParseKnowledgeRows(std::string_view content) {
  std::vector<KnowledgeRow> rows;
  for (auto &fields : Rows(content, 6, "knowledge file")) {
    KnowledgeRow row;
    row.head = fields[0];
    row.relation = fields[1];
    row.tail = fields[2];
    if (row.head.empty() || row.relation.empty() || row.tail.empty()) {
      throw ValidationError("knowledge file: empty head, relation or tail");
    }
    auto count = ParseOptionalReal(fields[3], "knowledge file support_count");
    if (!count || *count < 0 || *count != std::floor(*count)) {
      throw ValidationError("knowledge file: bad support_count '" + fields[3] + "'");
    }
    row.support_count = static_cast<int>(*count);
    row.pattern_keys = SplitList(fields[4]);
    row.score = ParseOptionalReal(fields[5], "knowledge file score");
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatAnnotationRows(const std::vector<AnnotationRow> &rows) {
  std::string out;
  for (const AnnotationRow &row : rows) {
    out += row.head + "\t" + row.relation + "\t" + row.tail + "\t" +
           (row.label ? std::to_string(*row.label) : std::string()) + "\t" +
           Join(row.graph_ids, ",") + "\n";
  }
  return out;
}

std::vector<AnnotationRow> ParseAnnotationRows(std::string_view content, bool require_label) {
  std::vector<AnnotationRow> rows;
  int line = 0;
  for (auto &fields : Rows(content, 5, "annotation file")) {
    ++line;
    const std::string where = "annotation row " + std::to_string(line) + ": ";
    AnnotationRow row;
    row.head = fields[0];
    row.relation = fields[1];
    row.tail = fields[2];
    if (SplitWords(row.head).empty() || row.relation.empty() || SplitWords(row.tail).empty()) {
      throw ValidationError(where + "empty head, relation or tail");
    }
    if (fields[3] == "0" || fields[3] == "1") {
      row.label = fields[3] == "1" ? 1 : 0;
    } else if (!fields[3].empty() || require_label) {
      throw ValidationError(where + "label must be 0 or 1, found '" + fields[3] + "'");
    }
    row.graph_ids = SplitList(fields[4]);
    if (row.graph_ids.empty()) throw ValidationError(where + "no supporting graph ids");
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace kgmine
