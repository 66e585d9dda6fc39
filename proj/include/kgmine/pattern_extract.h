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


// Pattern extraction from a (seed tuple, graph) pair. A pattern has a head
// structure and a tail structure (minimal trees over the phrase words, which
// become wildcard slots) joined by the shortest path between them, whose
// interior words become literal anchors.

#ifndef KGMINE_PATTERN_EXTRACT_H_
#define KGMINE_PATTERN_EXTRACT_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kgmine/graph_model.h"

namespace kgmine {

enum class SlotRole { kHead, kInternal, kTail };

struct PatternNode {
  SlotRole role = SlotRole::kHead;
  int ordinal = 0;      // k in H<k>, I<k>, T<k>
  std::string literal;  // only for kInternal

  // "H0", "I1", "T0", ...
  std::string SlotId() const;
  bool operator==(const PatternNode &other) const = default;
};

// Edge between pattern nodes; src/dst index Pattern::nodes.
struct PatternEdge {
  int src = 0;
  int dst = 0;
  std::string label;

  bool operator==(const PatternEdge &other) const = default;
};

struct Pattern {
  std::vector<PatternNode> nodes;
  std::vector<PatternEdge> edges;
  std::string relation;

  // L(P): number of edges.
  int Length() const { return static_cast<int>(edges.size()); }
  int CountRole(SlotRole role) const;
};

// Throws ValidationError when the pattern breaks a structural invariant:
// unique slot ids, literals exactly on internal nodes, at least one head and
// one tail slot, tree-shaped head and tail parts, weak connectivity, and
// internal nodes on a single head-to-tail chain.
void ValidatePattern(const Pattern &pattern);

// Edges of a structure or path, referring to graph node indices, in their
// original direction.
struct SubStructure {
  std::vector<int> nodes;
  std::vector<GraphEdge> edges;
};

// BFS from the first position over edges in either direction, visiting only
// the given positions. Returns nullopt unless every position is reached.
// Nodes keep the input order; edges are the BFS tree edges.
std::optional<SubStructure> ExtractHeadStructure(const LinguisticGraph &graph,
                                                 const std::vector<int> &positions);

struct InternalPath {
  std::vector<int> nodes;  // head endpoint, interior..., tail endpoint
  std::vector<GraphEdge> edges;

  int InteriorCount() const { return static_cast<int>(nodes.size()) - 2; }
};

// Shortest path between the two node sets with both sets collapsed to single
// nodes; interior nodes avoid both sets. Among shortest paths the
// lexicographically least node sequence wins, and among parallel edges the
// lowest edge index. nullopt if the sets are not connected.
std::optional<InternalPath> ExtractInternalPath(const LinguisticGraph &graph,
                                                const std::vector<int> &head_nodes,
                                                const std::vector<int> &tail_nodes);

enum class DiscardCause { kNone, kAmbiguous, kMissing, kDisconnected, kOverlap };

std::string_view DiscardCauseName(DiscardCause cause);

struct ExtractionResult {
  std::optional<Pattern> pattern;
  DiscardCause cause = DiscardCause::kNone;
};

ExtractionResult TryExtractPattern(const SeedTuple &tuple, const LinguisticGraph &graph);

inline std::optional<Pattern> ExtractPattern(const SeedTuple &tuple,
                                             const LinguisticGraph &graph) {
  return TryExtractPattern(tuple, graph).pattern;
}

// Canonical string key: node tokens (H slots, I<k>=word literals, T slots)
// joined by '|', then each edge as "src-label->dst" sorted by
// (src id, label, dst id), all segments joined by ';'. Reserved characters
// in labels and literals are percent-escaped.
std::string Canonicalize(const Pattern &pattern);

// Inverse of Canonicalize. Throws ValidationError on malformed keys or
// patterns that break an invariant.
Pattern ParsePatternKey(std::string_view key, const std::string &relation);

}  // namespace kgmine

#endif  // KGMINE_PATTERN_EXTRACT_H_
