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


#include "kgmine/knowledge_extract.h"

#include <algorithm>
#include <deque>
#include <map>
#include <tuple>

#include "kgmine/parallel.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

struct SearchStep {
  int node = 0;         // pattern node placed at this step
  int anchor_edge = -1; // pattern edge to an earlier node; -1 for the root
  std::vector<int> checks;  // pattern edges to verify once placed
};

// Orders pattern nodes so every node after the first touches an earlier one.
std::vector<SearchStep> PlanSearch(const Pattern &pattern) {
  const int n = static_cast<int>(pattern.nodes.size());
  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < static_cast<int>(pattern.edges.size()); ++e) {
    incident[pattern.edges[e].src].push_back(e);
    incident[pattern.edges[e].dst].push_back(e);
  }
  std::vector<int> order;
  std::vector<bool> queued(n, false);
  for (int root = 0; root < n; ++root) {
    if (queued[root]) continue;
    std::deque<int> queue = {root};
    queued[root] = true;
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      order.push_back(u);
      std::vector<int> next;
      for (int e : incident[u]) {
        const PatternEdge &edge = pattern.edges[e];
        next.push_back(edge.src == u ? edge.dst : edge.src);
      }
      std::sort(next.begin(), next.end());
      for (int v : next) {
        if (!queued[v]) {
          queued[v] = true;
          queue.push_back(v);
        }
      }
    }
  }
  std::vector<int> step_of(n, -1);
  std::vector<SearchStep> plan;
  for (int k = 0; k < n; ++k) {
    SearchStep step;
    step.node = order[k];
    step_of[step.node] = k;
    for (int e : incident[step.node]) {
      const PatternEdge &edge = pattern.edges[e];
      int other = edge.src == step.node ? edge.dst : edge.src;
      if (step_of[other] < 0 || other == step.node) continue;
      if (step.anchor_edge < 0) {
        step.anchor_edge = e;
      } else {
        step.checks.push_back(e);
      }
    }
    plan.push_back(std::move(step));
  }
  return plan;
}

class Matcher {
 public:
  Matcher(const Pattern &pattern, const LinguisticGraph &graph)
      : pattern_(pattern),
        graph_(graph),
        plan_(PlanSearch(pattern)),
        assignment_(pattern.nodes.size(), -1),
        used_(graph.size(), false) {}

  std::vector<Match> Run() {
    if (!pattern_.nodes.empty()) Search(0);
    return std::move(matches_);
  }

 private:
  void Search(size_t depth) {
    if (depth == plan_.size()) {
      matches_.push_back({assignment_, graph_.id()});
      return;
    }
    const SearchStep &step = plan_[depth];
    auto try_node = [&](int v) {
      if (used_[v] || !Compatible(step, v)) return;
      assignment_[step.node] = v;
      used_[v] = true;
      Search(depth + 1);
      used_[v] = false;
      assignment_[step.node] = -1;
    };
    if (step.anchor_edge < 0) {
      for (int v = 0; v < graph_.size(); ++v) try_node(v);
      return;
    }
    const PatternEdge &anchor = pattern_.edges[step.anchor_edge];
    bool step_is_dst = anchor.dst == step.node;
    int from = assignment_[step_is_dst ? anchor.src : anchor.dst];
    for (const Incidence &inc : graph_.incidences(from)) {
      // Outgoing from the placed endpoint when the new node is the dependent.
      if (inc.outgoing != step_is_dst) continue;
      if (graph_.edges()[inc.edge].label != anchor.label) continue;
      try_node(inc.neighbor);
    }
  }

  bool Compatible(const SearchStep &step, int v) const {
    const PatternNode &node = pattern_.nodes[step.node];
    if (node.role == SlotRole::kInternal && graph_.word(v) != node.literal) return false;
    for (int e : step.checks) {
      const PatternEdge &edge = pattern_.edges[e];
      int src = edge.src == step.node ? v : assignment_[edge.src];
      int dst = edge.dst == step.node ? v : assignment_[edge.dst];
      if (!graph_.HasEdge(src, dst, edge.label)) return false;
    }
    return true;
  }

  const Pattern &pattern_;
  const LinguisticGraph &graph_;
  std::vector<SearchStep> plan_;
  std::vector<int> assignment_;
  std::vector<bool> used_;
  std::vector<Match> matches_;
};

std::vector<int> NodesWithRole(const Pattern &pattern, const Match &match, SlotRole role) {
  std::vector<int> nodes;
  for (size_t i = 0; i < pattern.nodes.size(); ++i) {
    if (pattern.nodes[i].role == role) nodes.push_back(match.assignment[i]);
  }
  std::sort(nodes.begin(), nodes.end());
  return nodes;
}

std::vector<std::string> WordsAt(const LinguisticGraph &graph, const std::vector<int> &nodes) {
  std::vector<std::string> words;
  for (int v : nodes) words.push_back(graph.word(v));
  return words;
}

}  // namespace

std::vector<Match> MatchPattern(const Pattern &pattern, const LinguisticGraph &graph) {
  return Matcher(pattern, graph).Run();
}

bool IsValidMatch(const Pattern &pattern, const LinguisticGraph &graph, const Match &match) {
  if (match.graph_id != graph.id() || match.assignment.size() != pattern.nodes.size()) return false;
  std::vector<int> seen;
  for (size_t i = 0; i < pattern.nodes.size(); ++i) {
    int v = match.assignment[i];
    if (v < 0 || v >= graph.size()) return false;
    if (std::find(seen.begin(), seen.end(), v) != seen.end()) return false;
    seen.push_back(v);
    if (pattern.nodes[i].role == SlotRole::kInternal && graph.word(v) != pattern.nodes[i].literal) {
      return false;
    }
  }
  for (const PatternEdge &edge : pattern.edges) {
    if (!graph.HasEdge(match.assignment[edge.src], match.assignment[edge.dst], edge.label)) {
      return false;
    }
  }
  return true;
}

std::string CandidateTuple::HeadText() const { return Join(head, " "); }
std::string CandidateTuple::TailText() const { return Join(tail, " "); }

CandidateTuple CandidateFromMatch(const Pattern &pattern, const std::string &key,
                                  const LinguisticGraph &graph, const Match &match) {
  CandidateTuple tuple;
  tuple.head = WordsAt(graph, NodesWithRole(pattern, match, SlotRole::kHead));
  tuple.relation = pattern.relation;
  tuple.tail = WordsAt(graph, NodesWithRole(pattern, match, SlotRole::kTail));
  tuple.pattern_key = key;
  return tuple;
}

std::vector<RawCandidate> ExtractKnowledge(const std::vector<PatternRule> &rules,
                                           const GraphCorpus &corpus, int workers) {
  std::vector<std::vector<RawCandidate>> per_graph(corpus.size());
  ParallelFor(corpus.size(), workers, [&](int g) {
    const LinguisticGraph &graph = corpus.graphs()[g];
    for (const PatternRule &rule : rules) {
      for (const Match &match : MatchPattern(rule.pattern, graph)) {
        RawCandidate raw;
        raw.tuple = CandidateFromMatch(rule.pattern, rule.key, graph, match);
        raw.graph_id = graph.id();
        raw.head_nodes = NodesWithRole(rule.pattern, match, SlotRole::kHead);
        raw.tail_nodes = NodesWithRole(rule.pattern, match, SlotRole::kTail);
        per_graph[g].push_back(std::move(raw));
      }
    }
  });
  std::vector<RawCandidate> out;
  for (auto &list : per_graph) {
    for (RawCandidate &raw : list) out.push_back(std::move(raw));
  }
  return out;
}

std::vector<std::string> SupportSet::GraphIds() const {
  std::vector<std::string> ids;
  for (const auto &[graph_id, key] : supports) ids.push_back(graph_id);
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

std::vector<std::string> SupportSet::PatternKeys() const {
  std::vector<std::string> keys;
  for (const auto &[graph_id, key] : supports) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  return keys;
}

std::vector<SupportSet> AggregateSupport(const std::vector<RawCandidate> &raw) {
  std::map<std::tuple<std::string, std::string, std::string>, SupportSet> groups;
  for (const RawCandidate &candidate : raw) {
    std::string head = candidate.tuple.HeadText();
    std::string tail = candidate.tuple.TailText();
    auto key = std::make_tuple(candidate.tuple.relation, head, tail);
    SupportSet &set = groups[key];
    if (set.relation.empty()) {
      set.head = head;
      set.relation = candidate.tuple.relation;
      set.tail = tail;
    }
    set.supports.emplace(candidate.graph_id, candidate.tuple.pattern_key);
  }
  std::vector<SupportSet> out;
  out.reserve(groups.size());
  for (auto &[key, set] : groups) out.push_back(std::move(set));
  return out;
}

}  // namespace kgmine
