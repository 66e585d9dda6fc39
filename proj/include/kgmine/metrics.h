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


// Quantity and novelty statistics over extracted knowledge, and sampling of
// candidates for annotation.

#ifndef KGMINE_METRICS_H_
#define KGMINE_METRICS_H_

#include <cstdint>
#include <string>
#include <vector>

#include "kgmine/formats.h"
#include "kgmine/graph_model.h"
#include "kgmine/knowledge_extract.h"

namespace kgmine {

struct TupleText {
  std::string head;  // space-joined words
  std::string relation;
  std::string tail;
};

// Rates are exact ratios of the integer counts (0 when the denominator is 0).
struct NoveltyReport {
  long tuple_count = 0;
  long novel_tuple_count = 0;
  long concept_count = 0;  // distinct head and tail phrases
  long novel_concept_count = 0;
  long vocab_count = 0;  // distinct words over all heads and tails
  double novel_t = 0.0;
  double novel_c = 0.0;
};

// A tuple is novel if its exact (head, relation, tail) strings are not a seed
// tuple; a concept is novel if no seed head or tail has the same string.
NoveltyReport Novelty(const std::vector<TupleText> &candidates, const SeedKB &seed);

// key=value lines; rates with 4 decimals.
std::string FormatNoveltyText(const NoveltyReport &report);
std::string FormatNoveltyJson(const NoveltyReport &report);

// Uniform sample without replacement of up to per_relation candidates of
// each relation (all of them when fewer exist). Candidates are put in
// (relation, head, tail) order first, so the result depends only on the set
// of candidates and the seed. Rows come back grouped by relation with blank
// labels.
std::vector<AnnotationRow> SampleForAnnotation(const std::vector<SupportSet> &candidates,
                                               int per_relation, uint64_t seed);

}  // namespace kgmine

#endif  // KGMINE_METRICS_H_
