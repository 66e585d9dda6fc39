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


// Shared test fixtures, random generators, and brute-force oracles. The
// oracles enumerate exhaustively and share no code with the library paths
// they check.

#ifndef KGMINE_TESTS_TESTING_H_
#define KGMINE_TESTS_TESTING_H_

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "kgmine/graph_model.h"
#include "kgmine/pattern_extract.h"
#include "kgmine/pattern_score.h"
#include "kgmine/random.h"
#include "kgmine/ranker.h"

namespace kgmine::testing {

struct EdgeSpec {
  int src;
  int dst;
  std::string label;
};

LinguisticGraph MakeGraph(const std::string &id, const std::vector<std::string> &words,
                          const std::vector<EdgeSpec> &edges, int freq = 1,
                          GraphType type = GraphType::kEventuality);

SeedTuple MakeTuple(const std::string &head, const std::string &relation, const std::string &tail);

// "human have something" with have-nsubj->human and have-dobj->something.
LinguisticGraph HumanHaveSomething(const std::string &id = "g0");

struct RoundTripCase {
  SeedTuple tuple;
  LinguisticGraph graph;
  int internal_nodes;
};

// Hand-built (tuple, graph) pairs with 1-3 word heads and tails and 0-2
// internal nodes. Phrase words follow graph word order.
std::vector<RoundTripCase> RoundTripFixtures();

// Random weakly connected graph with 1..max_nodes nodes: a random tree plus
// extra edges. Labels come from `labels`, words from `words`.
LinguisticGraph RandomGraph(Rng &rng, const std::string &id, int min_nodes, int max_nodes,
                            const std::vector<std::string> &words,
                            const std::vector<std::string> &labels = {"a", "b", "c"},
                            double extra_edge_prob = 0.25);

// k distinct random node indices.
std::vector<int> RandomPositions(Rng &rng, int n, int k, const std::vector<int> &exclude = {});

// ---- Oracles ----

// Exhaustive subset enumeration: the smallest node set that contains every
// position, contains only positions, and induces a connected subgraph.
std::optional<std::set<int>> OracleMinimalStructure(const LinguisticGraph &graph,
                                                    const std::vector<int> &positions);

// True if `edges` are graph edges among `nodes` forming a spanning tree.
bool IsSpanningTree(const LinguisticGraph &graph, const std::vector<int> &nodes,
                    const std::vector<GraphEdge> &edges);

// Enumerates every simple path from a head node to a tail node whose
// interior avoids both sets; returns the lexicographically least shortest
// node sequence.
std::optional<std::vector<int>> OracleShortestPath(const LinguisticGraph &graph,
                                                   const std::vector<int> &head,
                                                   const std::vector<int> &tail);

// Floyd-Warshall distance between the two sets after collapsing each to a
// single node; -1 if unreachable.
int OracleCollapsedDistance(const LinguisticGraph &graph, const std::vector<int> &head,
                            const std::vector<int> &tail);

// Every injective assignment of pattern nodes to graph nodes that satisfies
// edges (label and direction) and literals, found by trying all n^k maps.
std::set<std::vector<int>> OracleMatches(const Pattern &pattern, const LinguisticGraph &graph);

// Random valid pattern with at most max_slots nodes over the given labels
// and literal words.
Pattern RandomPattern(Rng &rng, int max_slots, const std::vector<std::string> &labels,
                      const std::vector<std::string> &words);

// Random counts for 1-8 keys over 1-4 relations with sizes in [1, 50].
PatternStats RandomStats(Rng &rng);

// Linearly separable ranking data: tuple i lives in one graph
// "h<i> -nsubj-> v<i mod 7> -dobj-> t<i>" where the verb also governs a
// marker word, "zz" for positives and "qq" for negatives. Labels alternate.
struct MarkerData {
  std::vector<LinguisticGraph> graphs;
  std::vector<AnnotatedExample> examples;
};
MarkerData MarkerDataset(int tuples, const std::string &relation = "CapableOf");

std::string TempPath(const std::string &name);
void WriteText(const std::string &path, const std::string &text);

}  // namespace kgmine::testing

#endif  // KGMINE_TESTS_TESTING_H_
