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


// Core data types: linguistic graphs, the graph corpus, and the seed
// knowledge base of (head, relation, tail) tuples.

#ifndef KGMINE_GRAPH_MODEL_H_
#define KGMINE_GRAPH_MODEL_H_

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace kgmine {

enum class GraphType { kEventuality, kDiscourse };

std::string_view GraphTypeName(GraphType type);

struct GraphNode {
  int index = 0;
  std::string word;
};

// Directed labeled edge from governor to dependent.
struct GraphEdge {
  int src = 0;
  int dst = 0;
  std::string label;

  bool operator==(const GraphEdge &other) const = default;
};

// An edge seen from one of its endpoints.
struct Incidence {
  int neighbor = 0;
  int edge = 0;       // index into edges()
  bool outgoing = false;  // true if this endpoint is the edge's src
};

// A directed graph of word nodes with labeled edges. Construction validates
// every invariant and throws ValidationError naming the graph on failure:
// contiguous node indices, non-empty whitespace-free words, valid and unique
// edges without self loops, freq >= 1, and weak connectivity.
class LinguisticGraph {
 public:
  LinguisticGraph(std::string id, GraphType type, int freq,
                  std::vector<GraphNode> nodes, std::vector<GraphEdge> edges);

  const std::string &id() const { return id_; }
  GraphType type() const { return type_; }
  int freq() const { return freq_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<GraphNode> &nodes() const { return nodes_; }
  const std::vector<GraphEdge> &edges() const { return edges_; }
  const std::string &word(int node) const { return nodes_[node].word; }

  // Incident edges of a node in both directions, ordered by
  // (neighbor index, edge index).
  const std::vector<Incidence> &incidences(int node) const { return adjacency_[node]; }

  // Sorted, de-duplicated neighbor indices (either edge direction).
  std::vector<int> Neighbors(int node) const;

  bool HasEdge(int src, int dst, std::string_view label) const;

 private:
  std::string id_;
  GraphType type_;
  int freq_;
  std::vector<GraphNode> nodes_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<Incidence>> adjacency_;
};

// Immutable list of graphs with unique ids, in load order.
class GraphCorpus {
 public:
  GraphCorpus() = default;
  explicit GraphCorpus(std::vector<LinguisticGraph> graphs);

  const std::vector<LinguisticGraph> &graphs() const { return graphs_; }
  int size() const { return static_cast<int>(graphs_.size()); }

  // Returns nullptr when the id is unknown.
  const LinguisticGraph *Find(const std::string &id) const;

 private:
  std::vector<LinguisticGraph> graphs_;
  std::unordered_map<std::string, int> by_id_;
};

// Parses one JSON Lines graph record. Throws ValidationError.
LinguisticGraph ParseGraphRecord(std::string_view json_line);

// Serializes a graph as a single JSON Lines record.
std::string GraphRecord(const LinguisticGraph &graph);

// Loads a JSON Lines corpus; blank lines are ignored. Errors carry the line
// number and, when known, the offending graph id.
GraphCorpus LoadCorpus(const std::string &path);
GraphCorpus ParseCorpus(std::string_view content);

struct SeedTuple {
  std::vector<std::string> head;
  std::string relation;
  std::vector<std::string> tail;

  auto operator<=>(const SeedTuple &other) const = default;
};

// Seed tuples, de-duplicated, in first-seen order. The relation vocabulary is
// whatever the input contains.
class SeedKB {
 public:
  SeedKB() = default;
  explicit SeedKB(std::vector<SeedTuple> tuples);

  const std::vector<SeedTuple> &tuples() const { return tuples_; }
  const std::set<std::string> &relations() const { return relations_; }
  // |C^r|; zero for an unknown relation.
  int RelationSize(const std::string &relation) const;
  // Indices into tuples() for one relation.
  const std::vector<int> &TuplesOf(const std::string &relation) const;

 private:
  std::vector<SeedTuple> tuples_;
  std::set<std::string> relations_;
  std::map<std::string, std::vector<int>> by_relation_;
};

SeedKB LoadSeedKB(const std::string &path);
SeedKB ParseSeedKB(std::string_view content);

// Result of looking up a phrase's words among a graph's nodes.
struct PhraseLocation {
  enum class Kind { kUnique, kAmbiguous, kMissing };
  Kind kind = Kind::kMissing;
  std::vector<int> positions;  // phrase order; only set for kUnique

  bool unique() const { return kind == Kind::kUnique; }
};

// Unique iff every phrase word occurs exactly once in the graph. A word
// occurring twice (or a phrase repeating a word) is Ambiguous; Ambiguous is
// reported ahead of Missing.
PhraseLocation LocatePhrase(const LinguisticGraph &graph,
                            const std::vector<std::string> &phrase);

}  // namespace kgmine

#endif  // KGMINE_GRAPH_MODEL_H_
