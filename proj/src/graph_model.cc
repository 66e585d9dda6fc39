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


#include "kgmine/graph_model.h"

#include <algorithm>
#include <tuple>
#include <utility>

#include "json.hpp"
#include "kgmine/errors.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

using json = nlohmann::json;

[[noreturn]] void Fail(const std::string &graph_id, const std::string &what) {
  throw ValidationError("graph '" + graph_id + "': " + what);
}

}  // namespace

std::string_view GraphTypeName(GraphType type) {
  return type == GraphType::kEventuality ? "eventuality" : "discourse";
}

LinguisticGraph::LinguisticGraph(std::string id, GraphType type, int freq,
                                 std::vector<GraphNode> nodes,
                                 std::vector<GraphEdge> edges)
    : id_(std::move(id)),
      type_(type),
      freq_(freq),
      nodes_(std::move(nodes)),
      edges_(std::move(edges)) {
  if (id_.empty()) throw ValidationError("graph with empty id");
  if (ContainsWhitespace(id_) || id_.find(',') != std::string::npos) {
    Fail(id_, "id must not contain whitespace or commas");
  }
  if (freq_ < 1) Fail(id_, "freq must be >= 1");
  if (nodes_.empty()) Fail(id_, "graph has no nodes");
  const int n = size();
  for (int i = 0; i < n; ++i) {
    GraphNode &node = nodes_[i];
    if (node.index != i) {
      Fail(id_, "node indices must be contiguous from 0 (found " +
                    std::to_string(node.index) + " at position " + std::to_string(i) + ")");
    }
    if (node.word.empty()) Fail(id_, "node " + std::to_string(i) + " has an empty word");
    if (ContainsWhitespace(node.word)) {
      Fail(id_, "node " + std::to_string(i) + " word contains whitespace");
    }
    node.word = ToLower(node.word);
  }

  std::set<std::tuple<int, int, std::string>> seen;
  adjacency_.assign(n, {});
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const GraphEdge &edge = edges_[e];
    if (edge.src < 0 || edge.src >= n || edge.dst < 0 || edge.dst >= n) {
      Fail(id_, "edge " + std::to_string(e) + " references a dangling node index (" +
                    std::to_string(edge.src) + "->" + std::to_string(edge.dst) + ")");
    }
    if (edge.src == edge.dst) Fail(id_, "edge " + std::to_string(e) + " is a self loop");
    if (edge.label.empty() || ContainsWhitespace(edge.label)) {
      Fail(id_, "edge " + std::to_string(e) + " has an empty or whitespace label");
    }
    if (!seen.emplace(edge.src, edge.dst, edge.label).second) {
      Fail(id_, "duplicate edge " + std::to_string(edge.src) + "-" + edge.label + "->" +
                    std::to_string(edge.dst));
    }
    adjacency_[edge.src].push_back({edge.dst, e, true});
    adjacency_[edge.dst].push_back({edge.src, e, false});
  }
  for (auto &list : adjacency_) {
    std::sort(list.begin(), list.end(), [](const Incidence &a, const Incidence &b) {
      return std::tie(a.neighbor, a.edge) < std::tie(b.neighbor, b.edge);
    });
  }

  // Weak connectivity.
  std::vector<bool> visited(n, false);
  std::vector<int> stack = {0};
  visited[0] = true;
  int reached = 1;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (const Incidence &inc : adjacency_[u]) {
      if (!visited[inc.neighbor]) {
        visited[inc.neighbor] = true;
        ++reached;
        stack.push_back(inc.neighbor);
      }
    }
  }
  if (reached != n) Fail(id_, "graph is not weakly connected");
}

std::vector<int> LinguisticGraph::Neighbors(int node) const {
  std::vector<int> out;
  for (const Incidence &inc : adjacency_[node]) {
    if (out.empty() || out.back() != inc.neighbor) out.push_back(inc.neighbor);
  }
  return out;
}

bool LinguisticGraph::HasEdge(int src, int dst, std::string_view label) const {
  for (const Incidence &inc : adjacency_[src]) {
    if (inc.neighbor == dst && inc.outgoing && edges_[inc.edge].label == label) return true;
  }
  return false;
}

GraphCorpus::GraphCorpus(std::vector<LinguisticGraph> graphs) : graphs_(std::move(graphs)) {
  for (int i = 0; i < static_cast<int>(graphs_.size()); ++i) {
    if (!by_id_.emplace(graphs_[i].id(), i).second) {
      throw ValidationError("duplicate graph id '" + graphs_[i].id() + "'");
    }
  }
}

const LinguisticGraph *GraphCorpus::Find(const std::string &id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &graphs_[it->second];
}

LinguisticGraph ParseGraphRecord(std::string_view json_line) {
  json record;
  try {
    record = json::parse(json_line);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
  if (!record.is_object()) throw ValidationError("graph record is not a JSON object");
  std::string id = "?";
  try {
    id = record.at("id").get<std::string>();
    std::string type_name = record.at("type").get<std::string>();
    GraphType type;
    if (type_name == "eventuality") {
      type = GraphType::kEventuality;
    } else if (type_name == "discourse") {
      type = GraphType::kDiscourse;
    } else {
      Fail(id, "unknown graph type '" + type_name + "'");
    }
    int freq = record.at("freq").get<int>();
    std::vector<GraphNode> nodes;
    for (const json &node : record.at("nodes")) {
      nodes.push_back({node.at("i").get<int>(), node.at("w").get<std::string>()});
    }
    std::vector<GraphEdge> edges;
    for (const json &edge : record.at("edges")) {
      edges.push_back({edge.at("src").get<int>(), edge.at("dst").get<int>(),
                       edge.at("label").get<std::string>()});
    }
    return LinguisticGraph(std::move(id), type, freq, std::move(nodes), std::move(edges));
  } catch (const json::exception &e) {
    Fail(id, std::string("bad field: ") + e.what());
  }
}

std::string GraphRecord(const LinguisticGraph &graph) {
  json nodes = json::array();
  for (const GraphNode &node : graph.nodes()) nodes.push_back({{"i", node.index}, {"w", node.word}});
  json edges = json::array();
  for (const GraphEdge &edge : graph.edges()) {
    edges.push_back({{"src", edge.src}, {"dst", edge.dst}, {"label", edge.label}});
  }
  json record = {{"id", graph.id()},
                 {"type", GraphTypeName(graph.type())},
                 {"freq", graph.freq()},
                 {"nodes", nodes},
                 {"edges", edges}};
  return record.dump();
}

GraphCorpus ParseCorpus(std::string_view content) {
  std::vector<LinguisticGraph> graphs;
  std::vector<std::string> lines = Split(content, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (SplitWords(line).empty()) continue;
    try {
      graphs.push_back(ParseGraphRecord(line));
    } catch (const ValidationError &e) {
      throw ValidationError("line " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return GraphCorpus(std::move(graphs));
}

GraphCorpus LoadCorpus(const std::string &path) {
  std::string content = ReadFile(path);
  try {
    return ParseCorpus(content);
  } catch (const ValidationError &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

SeedKB::SeedKB(std::vector<SeedTuple> tuples) {
  std::set<SeedTuple> seen;
  for (SeedTuple &tuple : tuples) {
    if (tuple.head.empty()) throw ValidationError("seed tuple with empty head");
    if (tuple.tail.empty()) throw ValidationError("seed tuple with empty tail");
    if (tuple.relation.empty()) throw ValidationError("seed tuple with empty relation");
    if (!seen.insert(tuple).second) continue;
    relations_.insert(tuple.relation);
    by_relation_[tuple.relation].push_back(static_cast<int>(tuples_.size()));
    tuples_.push_back(std::move(tuple));
  }
}

int SeedKB::RelationSize(const std::string &relation) const {
  auto it = by_relation_.find(relation);
  return it == by_relation_.end() ? 0 : static_cast<int>(it->second.size());
}

const std::vector<int> &SeedKB::TuplesOf(const std::string &relation) const {
  static const std::vector<int> kEmpty;
  auto it = by_relation_.find(relation);
  return it == by_relation_.end() ? kEmpty : it->second;
}

SeedKB ParseSeedKB(std::string_view content) {
  std::vector<SeedTuple> tuples;
  std::vector<std::string> lines = Split(content, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    std::vector<std::string> fields = Split(line, '\t');
    if (fields.size() != 3) {
      throw ValidationError(where + "expected 3 tab-separated fields, found " +
                            std::to_string(fields.size()));
    }
    SeedTuple tuple;
    tuple.head = SplitWords(ToLower(fields[0]));
    tuple.relation = fields[1];
    tuple.tail = SplitWords(ToLower(fields[2]));
    if (tuple.head.empty()) throw ValidationError(where + "empty head");
    if (tuple.tail.empty()) throw ValidationError(where + "empty tail");
    if (tuple.relation.empty() || ContainsWhitespace(tuple.relation)) {
      throw ValidationError(where + "empty or malformed relation");
    }
    tuples.push_back(std::move(tuple));
  }
  return SeedKB(std::move(tuples));
}

SeedKB LoadSeedKB(const std::string &path) {
  std::string content = ReadFile(path);
  try {
    return ParseSeedKB(content);
  } catch (const ValidationError &e) {
    throw ValidationError(path + ": " + e.what());
  }
}

PhraseLocation LocatePhrase(const LinguisticGraph &graph,
                            const std::vector<std::string> &phrase) {
  PhraseLocation result;
  std::set<std::string_view> distinct(phrase.begin(), phrase.end());
  if (distinct.size() != phrase.size()) {
    result.kind = PhraseLocation::Kind::kAmbiguous;
    return result;
  }
  std::vector<int> positions;
  bool missing = false;
  for (const std::string &word : phrase) {
    int found = -1;
    int count = 0;
    for (const GraphNode &node : graph.nodes()) {
      if (node.word == word) {
        found = node.index;
        ++count;
      }
    }
    if (count >= 2) {
      result.kind = PhraseLocation::Kind::kAmbiguous;
      return result;
    }
    if (count == 0) missing = true;
    positions.push_back(found);
  }
  if (missing) {
    result.kind = PhraseLocation::Kind::kMissing;
    return result;
  }
  result.kind = PhraseLocation::Kind::kUnique;
  result.positions = std::move(positions);
  return result;
}

}  // namespace kgmine
