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


#include "kgmine/metrics.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"
#include "kgmine/errors.h"
#include "kgmine/random.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

double Ratio(long num, long den) {
  return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

NoveltyReport Novelty(const std::vector<TupleText> &candidates, const SeedKB &seed) {
  std::set<std::tuple<std::string, std::string, std::string>> seed_tuples;
  std::set<std::string> seed_concepts;
  for (const SeedTuple &t : seed.tuples()) {
    std::string head = Join(t.head, " ");
    std::string tail = Join(t.tail, " ");
    seed_tuples.emplace(head, t.relation, tail);
    seed_concepts.insert(head);
    seed_concepts.insert(tail);
  }

  NoveltyReport report;
  std::set<std::string> concepts;
  std::set<std::string> words;
  for (const TupleText &c : candidates) {
    ++report.tuple_count;
    if (!seed_tuples.count({c.head, c.relation, c.tail})) ++report.novel_tuple_count;
    concepts.insert(c.head);
    concepts.insert(c.tail);
    for (const std::string &w : SplitWords(c.head)) words.insert(w);
    for (const std::string &w : SplitWords(c.tail)) words.insert(w);
  }
  report.concept_count = static_cast<long>(concepts.size());
  for (const std::string &concept_text : concepts) {
    if (!seed_concepts.count(concept_text)) ++report.novel_concept_count;
  }
  report.vocab_count = static_cast<long>(words.size());
  report.novel_t = Ratio(report.novel_tuple_count, report.tuple_count);
  report.novel_c = Ratio(report.novel_concept_count, report.concept_count);
  return report;
}

std::string FormatNoveltyText(const NoveltyReport &r) {
  std::string out;
  out += "tuples=" + std::to_string(r.tuple_count) + "\n";
  out += "vocab=" + std::to_string(r.vocab_count) + "\n";
  out += "concepts=" + std::to_string(r.concept_count) + "\n";
  out += "novel_tuples=" + std::to_string(r.novel_tuple_count) + "\n";
  out += "novel_concepts=" + std::to_string(r.novel_concept_count) + "\n";
  out += "novel_t=" + FormatFixed(r.novel_t, 4) + "\n";
  out += "novel_c=" + FormatFixed(r.novel_c, 4) + "\n";
  return out;
}

std::string FormatNoveltyJson(const NoveltyReport &r) {
  nlohmann::json doc = {{"tuple_count", r.tuple_count},
                        {"vocab_count", r.vocab_count},
                        {"concept_count", r.concept_count},
                        {"novel_tuple_count", r.novel_tuple_count},
                        {"novel_concept_count", r.novel_concept_count},
                        {"novel_t", r.novel_t},
                        {"novel_c", r.novel_c},
                        {"novel_t_display", FormatFixed(r.novel_t, 4)},
                        {"novel_c_display", FormatFixed(r.novel_c, 4)}};
  return doc.dump(2) + "\n";
}

std::vector<AnnotationRow> SampleForAnnotation(const std::vector<SupportSet> &candidates,
                                               int per_relation, uint64_t seed) {
  if (per_relation < 1) throw ValidationError("per-relation sample size must be >= 1");
  std::map<std::string, std::vector<const SupportSet *>> by_relation;
  for (const SupportSet &c : candidates) by_relation[c.relation].push_back(&c);

  std::vector<AnnotationRow> rows;
  for (auto &[relation, group] : by_relation) {
    std::sort(group.begin(), group.end(), [](const SupportSet *a, const SupportSet *b) {
      return std::tie(a->head, a->tail) < std::tie(b->head, b->tail);
    });
    std::vector<size_t> picked(group.size());
    for (size_t i = 0; i < picked.size(); ++i) picked[i] = i;
    const size_t take = std::min(group.size(), static_cast<size_t>(per_relation));
    if (take < group.size()) {
      Rng rng(SplitMix64(seed ^ Fnv1a(relation)));
      for (size_t i = 0; i < take; ++i) {
        std::swap(picked[i], picked[i + rng.Below(picked.size() - i)]);
      }
      picked.resize(take);
      std::sort(picked.begin(), picked.end());
    }
    for (size_t i : picked) {
      const SupportSet &c = *group[i];
      rows.push_back({c.head, c.relation, c.tail, std::nullopt, c.GraphIds()});
    }
  }
  return rows;
}

}  // namespace kgmine
