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


#include "testing.h"

#include <algorithm>
#include <climits>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>

#include "kgmine/text.h"

namespace kgmine::testing {

LinguisticGraph MakeGraph(const std::string &id, const std::vector<std::string> &words,
                          const std::vector<EdgeSpec> &edges, int freq, GraphType type) {
  std::vector<GraphNode> nodes;
  for (int i = 0; i < static_cast<int>(words.size()); ++i) nodes.push_back({i, words[i]});
  std::vector<GraphEdge> graph_edges;
  for (const EdgeSpec &e : edges) graph_edges.push_back({e.src, e.dst, e.label});
  return LinguisticGraph(id, type, freq, std::move(nodes), std::move(graph_edges));
}

SeedTuple MakeTuple(const std::string &head, const std::string &relation, const std::string &tail) {
  return SeedTuple{SplitWords(head), relation, SplitWords(tail)};
}

LinguisticGraph HumanHaveSomething(const std::string &id) {
  return MakeGraph(id, {"human", "have", "something"}, {{1, 0, "nsubj"}, {1, 2, "dobj"}});
}

std::vector<RoundTripCase> RoundTripFixtures() {
  std::vector<RoundTripCase> cases;
  auto add = [&](const std::string &head, const std::string &relation, const std::string &tail,
                 const std::vector<std::string> &words, const std::vector<EdgeSpec> &edges,
                 int internal, GraphType type = GraphType::kEventuality) {
    std::string id = "rt" + std::to_string(cases.size());
    cases.push_back({MakeTuple(head, relation, tail), MakeGraph(id, words, edges, 1, type), internal});
  };
  add("human", "CapableOf", "have", {"human", "have", "something"},
      {{1, 0, "nsubj"}, {1, 2, "dobj"}}, 0);
  add("dog", "CapableOf", "bark", {"dog", "bark"}, {{1, 0, "nsubj"}}, 0);
  add("knife", "UsedFor", "cut", {"knife", "be", "use", "for", "cut"},
      {{2, 0, "nsubjpass"}, {2, 1, "auxpass"}, {2, 3, "prep"}, {3, 4, "pobj"}}, 2);
  add("sky", "HasProperty", "blue", {"sky", "look", "blue"}, {{1, 0, "nsubj"}, {1, 2, "xcomp"}}, 1);
  add("ice cream", "HasProperty", "cold", {"ice", "cream", "be", "cold"},
      {{1, 0, "compound"}, {3, 1, "nsubj"}, {3, 2, "cop"}}, 0);
  add("song", "UsedFor", "sing", {"people", "sing", "song"}, {{1, 0, "nsubj"}, {1, 2, "dobj"}}, 0);
  add("pen", "UsedFor", "write letter", {"pen", "be", "use", "to", "write", "letter"},
      {{2, 0, "nsubjpass"}, {2, 1, "auxpass"}, {4, 3, "mark"}, {2, 4, "xcomp"}, {4, 5, "dobj"}}, 1);
  add("cat", "CapableOf", "catch mouse", {"cat", "catch", "mouse"},
      {{1, 0, "nsubj"}, {1, 2, "dobj"}}, 0);
  add("hot dog", "IsA", "food", {"hot", "dog", "be", "food"},
      {{1, 0, "amod"}, {3, 1, "nsubj"}, {3, 2, "cop"}}, 0);
  add("bird", "CapableOf", "fly", {"bird", "can", "fly"}, {{2, 0, "nsubj"}, {2, 1, "aux"}}, 0);
  add("red apple", "HasProperty", "sweet", {"red", "apple", "taste", "sweet"},
      {{1, 0, "amod"}, {2, 1, "nsubj"}, {2, 3, "acomp"}}, 1);
  add("student", "Desires", "pass exam", {"student", "want", "to", "pass", "exam"},
      {{1, 0, "nsubj"}, {3, 2, "mark"}, {1, 3, "xcomp"}, {3, 4, "dobj"}}, 1);
  add("fire", "Causes", "heat", {"fire", "burn", "heat", "rise"},
      {{1, 0, "nsubj"}, {1, 3, "Result"}, {3, 2, "nsubj"}}, 2, GraphType::kDiscourse);
  add("new york city", "HasProperty", "big", {"new", "york", "city", "be", "big"},
      {{2, 0, "amod"}, {2, 1, "compound"}, {4, 2, "nsubj"}, {4, 3, "cop"}}, 0);
  add("chef", "CapableOf", "cook good meal", {"chef", "cook", "good", "meal"},
      {{1, 0, "nsubj"}, {1, 3, "dobj"}, {3, 2, "amod"}}, 0);
  add("big brown dog", "CapableOf", "chase small cat",
      {"big", "brown", "dog", "chase", "small", "cat"},
      {{2, 0, "amod"}, {2, 1, "amod"}, {3, 2, "nsubj"}, {3, 5, "dobj"}, {5, 4, "amod"}}, 0);
  add("water", "UsedFor", "drink", {"person", "drink", "water", "every", "day"},
      {{1, 0, "nsubj"}, {1, 2, "dobj"}, {4, 3, "det"}, {1, 4, "tmod"}}, 0);
  add("car", "AtLocation", "garage", {"car", "park", "in", "garage"},
      {{1, 0, "nsubjpass"}, {1, 2, "prep"}, {2, 3, "pobj"}}, 2);
  add("book", "AtLocation", "library", {"book", "be", "in", "library"},
      {{1, 0, "nsubj"}, {1, 2, "prep"}, {2, 3, "pobj"}}, 2);
  add("exercise", "Causes", "sweat", {"exercise", "make", "people", "sweat"},
      {{1, 0, "nsubj"}, {1, 3, "ccomp"}, {3, 2, "nsubj"}}, 1);
  add("baby", "CapableOf", "cry loudly", {"baby", "cry", "loudly"},
      {{1, 0, "nsubj"}, {1, 2, "advmod"}}, 0);
  add("rain", "Causes", "wet ground", {"rain", "make", "wet", "ground"},
      {{1, 0, "nsubj"}, {1, 3, "dobj"}, {3, 2, "amod"}}, 1);
  return cases;
}

LinguisticGraph RandomGraph(Rng &rng, const std::string &id, int min_nodes, int max_nodes,
                            const std::vector<std::string> &words,
                            const std::vector<std::string> &labels, double extra_edge_prob) {
  int n = min_nodes + static_cast<int>(rng.Below(max_nodes - min_nodes + 1));
  std::vector<std::string> node_words;
  for (int i = 0; i < n; ++i) node_words.push_back(words[rng.Below(words.size())]);
  std::vector<EdgeSpec> edges;
  std::set<std::tuple<int, int, std::string>> seen;
  auto add = [&](int a, int b) {
    std::string label = labels[rng.Below(labels.size())];
    if (rng.Below(2)) std::swap(a, b);
    if (seen.emplace(a, b, label).second) edges.push_back({a, b, label});
  };
  for (int i = 1; i < n; ++i) add(i, static_cast<int>(rng.Below(i)));
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (rng.Uniform(0, 1) < extra_edge_prob) add(a, b);
    }
  }
  return MakeGraph(id, node_words, edges, 1 + static_cast<int>(rng.Below(20)),
                   rng.Below(2) ? GraphType::kEventuality : GraphType::kDiscourse);
}

std::vector<int> RandomPositions(Rng &rng, int n, int k, const std::vector<int> &exclude) {
  std::vector<int> pool;
  for (int i = 0; i < n; ++i) {
    if (std::find(exclude.begin(), exclude.end(), i) == exclude.end()) pool.push_back(i);
  }
  std::vector<int> out;
  for (int j = 0; j < k && !pool.empty(); ++j) {
    size_t pick = rng.Below(pool.size());
    out.push_back(pool[pick]);
    pool.erase(pool.begin() + static_cast<long>(pick));
  }
  return out;
}

namespace {

bool InducedConnected(const LinguisticGraph &graph, unsigned mask) {
  int first = -1;
  for (int i = 0; i < graph.size(); ++i) {
    if (mask & (1u << i)) {
      first = i;
      break;
    }
  }
  if (first < 0) return false;
  unsigned seen = 1u << first;
  bool grew = true;
  while (grew) {
    grew = false;
    for (const GraphEdge &e : graph.edges()) {
      unsigned s = 1u << e.src, d = 1u << e.dst;
      if (!(mask & s) || !(mask & d)) continue;
      if ((seen & s) && !(seen & d)) {
        seen |= d;
        grew = true;
      } else if ((seen & d) && !(seen & s)) {
        seen |= s;
        grew = true;
      }
    }
  }
  return seen == mask;
}

}  // namespace

std::optional<std::set<int>> OracleMinimalStructure(const LinguisticGraph &graph,
                                                    const std::vector<int> &positions) {
  const int n = graph.size();
  unsigned required = 0;
  for (int p : positions) required |= 1u << p;
  std::optional<std::set<int>> best;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    if ((mask & required) != required) continue;   // covers all positions
    if ((mask & ~required) != 0) continue;         // and only positions
    if (!InducedConnected(graph, mask)) continue;
    std::set<int> nodes;
    for (int i = 0; i < n; ++i) {
      if (mask & (1u << i)) nodes.insert(i);
    }
    if (!best || nodes.size() < best->size()) best = nodes;
  }
  return best;
}

bool IsSpanningTree(const LinguisticGraph &graph, const std::vector<int> &nodes,
                    const std::vector<GraphEdge> &edges) {
  if (edges.size() + 1 != nodes.size()) return false;
  std::set<int> members(nodes.begin(), nodes.end());
  std::map<int, int> parent;
  for (int v : nodes) parent[v] = v;
  std::function<int(int)> find = [&](int v) { return parent[v] == v ? v : parent[v] = find(parent[v]); };
  for (const GraphEdge &e : edges) {
    if (!members.count(e.src) || !members.count(e.dst)) return false;
    if (!graph.HasEdge(e.src, e.dst, e.label)) return false;
    int a = find(e.src), b = find(e.dst);
    if (a == b) return false;
    parent[a] = b;
  }
  return true;
}

std::optional<std::vector<int>> OracleShortestPath(const LinguisticGraph &graph,
                                                   const std::vector<int> &head,
                                                   const std::vector<int> &tail) {
  std::set<int> in_head(head.begin(), head.end()), in_tail(tail.begin(), tail.end());
  std::vector<std::vector<int>> found;
  std::vector<int> path;
  std::vector<bool> on_path(graph.size(), false);
  std::function<void(int)> dfs = [&](int u) {
    for (const GraphEdge &e : graph.edges()) {
      int v;
      if (e.src == u) {
        v = e.dst;
      } else if (e.dst == u) {
        v = e.src;
      } else {
        continue;
      }
      if (on_path[v] || in_head.count(v)) continue;
      path.push_back(v);
      if (in_tail.count(v)) {
        found.push_back(path);
      } else {
        on_path[v] = true;
        dfs(v);
        on_path[v] = false;
      }
      path.pop_back();
    }
  };
  for (int h : head) {
    path = {h};
    on_path.assign(graph.size(), false);
    on_path[h] = true;
    dfs(h);
  }
  if (found.empty()) return std::nullopt;
  size_t shortest = SIZE_MAX;
  for (const auto &p : found) shortest = std::min(shortest, p.size());
  std::optional<std::vector<int>> best;
  for (const auto &p : found) {
    if (p.size() == shortest && (!best || p < *best)) best = p;
  }
  return best;
}

int OracleCollapsedDistance(const LinguisticGraph &graph, const std::vector<int> &head,
                            const std::vector<int> &tail) {
  const int n = graph.size();
  // Node n stands for the head set, n + 1 for the tail set.
  auto map_node = [&](int v) {
    if (std::find(head.begin(), head.end(), v) != head.end()) return n;
    if (std::find(tail.begin(), tail.end(), v) != tail.end()) return n + 1;
    return v;
  };
  const int m = n + 2;
  const int kInf = INT_MAX / 4;
  std::vector<std::vector<int>> dist(m, std::vector<int>(m, kInf));
  for (int i = 0; i < m; ++i) dist[i][i] = 0;
  for (const GraphEdge &e : graph.edges()) {
    int a = map_node(e.src), b = map_node(e.dst);
    if (a == b) continue;
    dist[a][b] = dist[b][a] = 1;
  }
  for (int k = 0; k < m; ++k) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
    }
  }
  return dist[n][n + 1] >= kInf ? -1 : dist[n][n + 1];
}

std::set<std::vector<int>> OracleMatches(const Pattern &pattern, const LinguisticGraph &graph) {
  const int k = static_cast<int>(pattern.nodes.size());
  const int n = graph.size();
  std::set<std::vector<int>> out;
  std::vector<int> assignment(k, 0);
  long total = 1;
  for (int i = 0; i < k; ++i) total *= n;
  for (long code = 0; code < total; ++code) {
    long c = code;
    for (int i = 0; i < k; ++i) {
      assignment[i] = static_cast<int>(c % n);
      c /= n;
    }
    std::set<int> distinct(assignment.begin(), assignment.end());
    if (static_cast<int>(distinct.size()) != k) continue;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (pattern.nodes[i].role == SlotRole::kInternal &&
          graph.nodes()[assignment[i]].word != pattern.nodes[i].literal) {
        ok = false;
      }
    }
    for (const PatternEdge &pe : pattern.edges) {
      if (!ok) break;
      bool present = false;
      for (const GraphEdge &ge : graph.edges()) {
        if (ge.src == assignment[pe.src] && ge.dst == assignment[pe.dst] && ge.label == pe.label) {
          present = true;
        }
      }
      ok = present;
    }
    if (ok) out.insert(assignment);
  }
  return out;
}

Pattern RandomPattern(Rng &rng, int max_slots, const std::vector<std::string> &labels,
                      const std::vector<std::string> &words) {
  int heads = 1 + static_cast<int>(rng.Below(2));
  int tails = 1 + static_cast<int>(rng.Below(2));
  while (heads + tails > max_slots) (heads > 1 ? heads : tails)--;
  int internals = static_cast<int>(rng.Below(max_slots - heads - tails + 1));
  Pattern p;
  p.relation = "R";
  for (int i = 0; i < heads; ++i) p.nodes.push_back({SlotRole::kHead, i, ""});
  for (int i = 0; i < internals; ++i) {
    p.nodes.push_back({SlotRole::kInternal, i, words[rng.Below(words.size())]});
  }
  for (int i = 0; i < tails; ++i) p.nodes.push_back({SlotRole::kTail, i, ""});
  auto edge = [&](int a, int b) {
    if (rng.Below(2)) std::swap(a, b);
    p.edges.push_back({a, b, labels[rng.Below(labels.size())]});
  };
  for (int i = 1; i < heads; ++i) edge(i, static_cast<int>(rng.Below(i)));
  const int first_tail = heads + internals;
  for (int i = 1; i < tails; ++i) edge(first_tail + i, first_tail + static_cast<int>(rng.Below(i)));
  int previous = static_cast<int>(rng.Below(heads));
  for (int i = 0; i < internals; ++i) {
    edge(previous, heads + i);
    previous = heads + i;
  }
  edge(previous, first_tail + static_cast<int>(rng.Below(tails)));
  ValidatePattern(p);
  return p;
}

PatternStats RandomStats(Rng &rng) {
  PatternStats stats;
  const int relations = 1 + static_cast<int>(rng.Below(4));
  const int keys = 1 + static_cast<int>(rng.Below(8));
  for (int r = 0; r < relations; ++r)
    stats.SetRelationSize("r" + std::to_string(r), 1 + static_cast<int>(rng.Below(50)));
  for (int k = 0; k < keys; ++k) {
    int length = 1 + static_cast<int>(rng.Below(5));
    for (int r = 0; r < relations; ++r) {
      if (rng.Below(3) == 0) continue;
      stats.Add("k" + std::to_string(k), "r" + std::to_string(r), length,
                1 + static_cast<long>(rng.Below(20)));
    }
  }
  return stats;
}

MarkerData MarkerDataset(int tuples, const std::string &relation) {
  MarkerData data;
  for (int i = 0; i < tuples; ++i) {
    const std::string n = std::to_string(i);
    const int label = i % 2 == 0 ? 1 : 0;
    data.graphs.push_back(MakeGraph("m" + n,
                                    {"h" + n, "v" + std::to_string(i % 7), "t" + n,
                                     label == 1 ? "zz" : "qq"},
                                    {{1, 0, "nsubj"}, {1, 2, "dobj"}, {1, 3, "advmod"}}));
    data.examples.push_back({{"h" + n}, relation, {"t" + n}, label, {"m" + n}});
  }
  return data;
}

std::string TempPath(const std::string &name) {
  auto dir = std::filesystem::temp_directory_path() / "kgmine_tests";
  std::filesystem::create_directories(dir);
  return (dir / name).string();
}

void WriteText(const std::string &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
}

}  // namespace kgmine::testing
