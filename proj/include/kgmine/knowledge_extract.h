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


// Applying selected patterns to a graph corpus and grouping the extracted
// tuples by identity.

#ifndef KGMINE_KNOWLEDGE_EXTRACT_H_
#define KGMINE_KNOWLEDGE_EXTRACT_H_

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "kgmine/graph_model.h"
#include "kgmine/pattern_extract.h"

namespace kgmine {

// Injective map from pattern nodes (by index) to graph nodes.
struct Match {
  std::vector<int> assignment;
  std::string graph_id;

  bool operator==(const Match &other) const = default;
};

// Every injective embedding of the pattern into the graph that preserves
// edge labels and directions and the literal words of internal nodes.
// Ordered lexicographically by assignment in the search order (graph nodes
// are tried in ascending index).
std::vector<Match> MatchPattern(const Pattern &pattern, const LinguisticGraph &graph);

// True if the match satisfies every Match invariant for this pattern.
bool IsValidMatch(const Pattern &pattern, const LinguisticGraph &graph, const Match &match);

struct CandidateTuple {
  std::vector<std::string> head;  // by ascending matched node index
  std::string relation;
  std::vector<std::string> tail;
  std::string pattern_key;

  std::string HeadText() const;
  std::string TailText() const;
};

// A candidate together with the graph and node assignment it came from.
struct RawCandidate {
  CandidateTuple tuple;
  std::string graph_id;
  std::vector<int> head_nodes;  // ascending
  std::vector<int> tail_nodes;  // ascending
};

// A selected pattern ready for matching.
struct PatternRule {
  std::string key;
  Pattern pattern;
};

CandidateTuple CandidateFromMatch(const Pattern &pattern, const std::string &key,
                                  const LinguisticGraph &graph, const Match &match);

// One candidate per match, ordered by graph (corpus order), then pattern
// (input order), then match. Graphs are processed on `workers` threads;
// the output does not depend on the worker count.
std::vector<RawCandidate> ExtractKnowledge(const std::vector<PatternRule> &rules,
                                           const GraphCorpus &corpus, int workers = 1);

struct SupportSet {
  std::string head;  // space-joined words
  std::string relation;
  std::string tail;
  std::set<std::pair<std::string, std::string>> supports;  // (graph id, pattern key)

  std::vector<std::string> GraphIds() const;  // distinct, sorted
  std::vector<std::string> PatternKeys() const;  // distinct, sorted
};

// Groups by exact (head, relation, tail); sorted by (relation, head, tail).
std::vector<SupportSet> AggregateSupport(const std::vector<RawCandidate> &raw);

}  // namespace kgmine

#endif  // KGMINE_KNOWLEDGE_EXTRACT_H_
