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


#include "kgmine/pattern_extract.h"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <set>
#include <tuple>

#include "kgmine/errors.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

char RolePrefix(SlotRole role) {
  switch (role) {
    case SlotRole::kHead: return 'H';
    case SlotRole::kInternal: return 'I';
    case SlotRole::kTail: return 'T';
  }
  return '?';
}

int RoleRank(SlotRole role) {
  switch (role) {
    case SlotRole::kHead: return 0;
    case SlotRole::kInternal: return 1;
    case SlotRole::kTail: return 2;
  }
  return 3;
}

std::string Escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '%': out += "%25"; break;
      case '|': out += "%7C"; break;
      case ';': out += "%3B"; break;
      case ',': out += "%2C"; break;
      default: out += c;
    }
  }
  return out;
}

std::string Unescape(std::string_view text) {
  std::string out;
  for (size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '%' && i + 2 < text.size()) {
      std::string code(text.substr(i + 1, 2));
      if (code == "25") {
        out += '%';
      } else if (code == "7C") {
        out += '|';
      } else if (code == "3B") {
        out += ';';
      } else if (code == "2C") {
        out += ',';
      } else {
        throw ValidationError("bad escape in pattern key: %" + code);
      }
      i += 2;
    } else if (text[i] == '%') {
      throw ValidationError("truncated escape in pattern key");
    } else {
      out += text[i];
    }
  }
  return out;
}

[[noreturn]] void BadPattern(const std::string &what) {
  throw ValidationError("invalid pattern: " + what);
}

// True if the nodes in `members` are connected using only edges whose
// endpoints both satisfy `keep`.
bool Connected(int node_count, const std::vector<PatternEdge> &edges,
               const std::vector<int> &members, const std::vector<bool> &keep) {
  if (members.empty()) return true;
  std::vector<std::vector<int>> adj(node_count);
  for (const PatternEdge &e : edges) {
    if (keep[e.src] && keep[e.dst]) {
      adj[e.src].push_back(e.dst);
      adj[e.dst].push_back(e.src);
    }
  }
  std::vector<bool> seen(node_count, false);
  std::vector<int> stack = {members[0]};
  seen[members[0]] = true;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        stack.push_back(v);
      }
    }
  }
  for (int m : members) {
    if (!seen[m]) return false;
  }
  return true;
}

}  // namespace

std::string PatternNode::SlotId() const {
  return std::string(1, RolePrefix(role)) + std::to_string(ordinal);
}

int Pattern::CountRole(SlotRole role) const {
  return static_cast<int>(std::count_if(nodes.begin(), nodes.end(),
                                        [role](const PatternNode &n) { return n.role == role; }));
}

void ValidatePattern(const Pattern &pattern) {
  const int n = static_cast<int>(pattern.nodes.size());
  std::set<std::string> ids;
  std::vector<int> heads, internals, tails;
  for (int i = 0; i < n; ++i) {
    const PatternNode &node = pattern.nodes[i];
    if (node.ordinal < 0) BadPattern("negative slot ordinal");
    if (!ids.insert(node.SlotId()).second) BadPattern("duplicate slot " + node.SlotId());
    bool internal = node.role == SlotRole::kInternal;
    if (internal == node.literal.empty()) {
      BadPattern("slot " + node.SlotId() + " literal must be present iff internal");
    }
    (node.role == SlotRole::kHead ? heads : internal ? internals : tails).push_back(i);
  }
  if (heads.empty()) BadPattern("no head slot");
  if (tails.empty()) BadPattern("no tail slot");

  std::set<std::tuple<int, int, std::string>> seen;
  for (const PatternEdge &e : pattern.edges) {
    if (e.src < 0 || e.src >= n || e.dst < 0 || e.dst >= n) BadPattern("edge endpoint out of range");
    if (e.src == e.dst) BadPattern("self loop");
    if (e.label.empty()) BadPattern("empty edge label");
    if (!seen.emplace(e.src, e.dst, e.label).second) BadPattern("duplicate edge");
  }

  auto role_mask = [&](SlotRole role) {
    std::vector<bool> mask(n, false);
    for (int i = 0; i < n; ++i) mask[i] = pattern.nodes[i].role == role;
    return mask;
  };
  std::vector<bool> is_head = role_mask(SlotRole::kHead);
  std::vector<bool> is_tail = role_mask(SlotRole::kTail);
  std::vector<bool> is_internal = role_mask(SlotRole::kInternal);

  int head_edges = 0, tail_edges = 0;
  std::vector<int> chain_degree(n, 0);
  int chain_edges = 0, touches_head = 0, touches_tail = 0;
  for (const PatternEdge &e : pattern.edges) {
    if (is_head[e.src] && is_head[e.dst]) {
      ++head_edges;
    } else if (is_tail[e.src] && is_tail[e.dst]) {
      ++tail_edges;
    } else {
      ++chain_edges;
      ++chain_degree[e.src];
      ++chain_degree[e.dst];
      if (is_head[e.src] || is_head[e.dst]) ++touches_head;
      if (is_tail[e.src] || is_tail[e.dst]) ++touches_tail;
    }
  }
  if (head_edges != static_cast<int>(heads.size()) - 1 ||
      !Connected(n, pattern.edges, heads, is_head)) {
    BadPattern("head slots do not form a tree");
  }
  if (tail_edges != static_cast<int>(tails.size()) - 1 ||
      !Connected(n, pattern.edges, tails, is_tail)) {
    BadPattern("tail slots do not form a tree");
  }
  std::vector<bool> all(n, true);
  std::vector<int> every(n);
  for (int i = 0; i < n; ++i) every[i] = i;
  if (!Connected(n, pattern.edges, every, all)) BadPattern("pattern is not connected");
  if (chain_edges != static_cast<int>(internals.size()) + 1 || touches_head != 1 ||
      touches_tail != 1) {
    BadPattern("internal nodes do not form a single head-to-tail path");
  }
  for (int i : internals) {
    if (chain_degree[i] != 2) BadPattern("internal node " + pattern.nodes[i].SlotId() + " off path");
  }
}

std::optional<SubStructure> ExtractHeadStructure(const LinguisticGraph &graph,
                                                 const std::vector<int> &positions) {
  if (positions.empty()) return std::nullopt;
  std::vector<bool> member(graph.size(), false);
  for (int p : positions) member[p] = true;
  std::vector<bool> visited(graph.size(), false);
  SubStructure result;
  result.nodes = positions;
  std::deque<int> queue = {positions[0]};
  visited[positions[0]] = true;
  size_t reached = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const Incidence &inc : graph.incidences(u)) {
      int v = inc.neighbor;
      if (!member[v] || visited[v]) continue;
      visited[v] = true;
      ++reached;
      result.edges.push_back(graph.edges()[inc.edge]);
      queue.push_back(v);
    }
  }
  if (reached != positions.size()) return std::nullopt;
  return result;
}

std::optional<InternalPath> ExtractInternalPath(const LinguisticGraph &graph,
                                                const std::vector<int> &head_nodes,
                                                const std::vector<int> &tail_nodes) {
  const int n = graph.size();
  std::vector<bool> in_head(n, false), in_tail(n, false);
  for (int h : head_nodes) in_head[h] = true;
  for (int t : tail_nodes) in_tail[t] = true;

  // Distance to the tail set through nodes outside both sets.
  std::vector<int> dist(n, -1);
  std::deque<int> queue;
  for (int t : tail_nodes) {
    dist[t] = 0;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (const Incidence &inc : graph.incidences(u)) {
      int v = inc.neighbor;
      if (dist[v] >= 0 || in_head[v] || in_tail[v]) continue;
      dist[v] = dist[u] + 1;
      queue.push_back(v);
    }
  }

  int best = INT_MAX;
  int start = -1;
  std::vector<int> sorted_heads = head_nodes;
  std::sort(sorted_heads.begin(), sorted_heads.end());
  for (int h : sorted_heads) {
    for (const Incidence &inc : graph.incidences(h)) {
      int v = inc.neighbor;
      if (in_head[v] || dist[v] < 0) continue;
      if (dist[v] + 1 < best) {
        best = dist[v] + 1;
        start = h;
      }
    }
  }
  if (start < 0) return std::nullopt;

  InternalPath path;
  path.nodes.push_back(start);
  int current = start;
  int remaining = best;
  while (remaining > 0) {
    const Incidence *step = nullptr;
    for (const Incidence &inc : graph.incidences(current)) {
      int v = inc.neighbor;
      if (in_head[v] || dist[v] != remaining - 1) continue;
      step = &inc;
      break;
    }
    if (step == nullptr) return std::nullopt;  // unreachable on a consistent BFS
    path.edges.push_back(graph.edges()[step->edge]);
    path.nodes.push_back(step->neighbor);
    current = step->neighbor;
    --remaining;
  }
  return path;
}

std::string_view DiscardCauseName(DiscardCause cause) {
  switch (cause) {
    case DiscardCause::kNone: return "none";
    case DiscardCause::kAmbiguous: return "ambiguous";
    case DiscardCause::kMissing: return "missing";
    case DiscardCause::kDisconnected: return "disconnected";
    case DiscardCause::kOverlap: return "overlap";
  }
  return "?";
}

ExtractionResult TryExtractPattern(const SeedTuple &tuple, const LinguisticGraph &graph) {
  ExtractionResult result;
  PhraseLocation head = LocatePhrase(graph, tuple.head);
  PhraseLocation tail = LocatePhrase(graph, tuple.tail);
  using Kind = PhraseLocation::Kind;
  if (head.kind == Kind::kAmbiguous || tail.kind == Kind::kAmbiguous) {
    result.cause = DiscardCause::kAmbiguous;
    return result;
  }
  if (head.kind == Kind::kMissing || tail.kind == Kind::kMissing) {
    result.cause = DiscardCause::kMissing;
    return result;
  }
  for (int h : head.positions) {
    if (std::find(tail.positions.begin(), tail.positions.end(), h) != tail.positions.end()) {
      result.cause = DiscardCause::kOverlap;
      return result;
    }
  }
  std::optional<SubStructure> head_struct = ExtractHeadStructure(graph, head.positions);
  std::optional<SubStructure> tail_struct = ExtractHeadStructure(graph, tail.positions);
  if (!head_struct || !tail_struct) {
    result.cause = DiscardCause::kDisconnected;
    return result;
  }
  std::optional<InternalPath> path =
      ExtractInternalPath(graph, head_struct->nodes, tail_struct->nodes);
  if (!path) {
    result.cause = DiscardCause::kDisconnected;
    return result;
  }

  Pattern pattern;
  pattern.relation = tuple.relation;
  std::map<int, int> slot_of;  // graph node -> pattern node
  for (size_t k = 0; k < head.positions.size(); ++k) {
    slot_of[head.positions[k]] = static_cast<int>(pattern.nodes.size());
    pattern.nodes.push_back({SlotRole::kHead, static_cast<int>(k), ""});
  }
  for (int k = 0; k < path->InteriorCount(); ++k) {
    int node = path->nodes[k + 1];
    slot_of[node] = static_cast<int>(pattern.nodes.size());
    pattern.nodes.push_back({SlotRole::kInternal, k, graph.word(node)});
  }
  for (size_t k = 0; k < tail.positions.size(); ++k) {
    slot_of[tail.positions[k]] = static_cast<int>(pattern.nodes.size());
    pattern.nodes.push_back({SlotRole::kTail, static_cast<int>(k), ""});
  }
  auto add_edges = [&](const std::vector<GraphEdge> &edges) {
    for (const GraphEdge &e : edges) {
      pattern.edges.push_back({slot_of.at(e.src), slot_of.at(e.dst), e.label});
    }
  };
  add_edges(head_struct->edges);
  add_edges(path->edges);
  add_edges(tail_struct->edges);
  result.pattern = std::move(pattern);
  return result;
}

std::string Canonicalize(const Pattern &pattern) {
  std::vector<const PatternNode *> order;
  for (const PatternNode &node : pattern.nodes) order.push_back(&node);
  std::sort(order.begin(), order.end(), [](const PatternNode *a, const PatternNode *b) {
    return std::make_tuple(RoleRank(a->role), a->ordinal) <
           std::make_tuple(RoleRank(b->role), b->ordinal);
  });
  std::vector<std::string> tokens;
  for (const PatternNode *node : order) {
    std::string token = node->SlotId();
    if (node->role == SlotRole::kInternal) token += "=" + Escape(node->literal);
    tokens.push_back(std::move(token));
  }

  std::vector<std::tuple<std::string, std::string, std::string>> edges;
  for (const PatternEdge &e : pattern.edges) {
    edges.emplace_back(pattern.nodes[e.src].SlotId(), e.label, pattern.nodes[e.dst].SlotId());
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::string> segments = {Join(tokens, "|")};
  for (const auto &[src, label, dst] : edges) {
    segments.push_back(src + "-" + Escape(label) + "->" + dst);
  }
  return Join(segments, ";");
}

Pattern ParsePatternKey(std::string_view key, const std::string &relation) {
  const std::string context = "pattern key '" + std::string(key) + "': ";
  std::vector<std::string> segments = Split(key, ';');
  Pattern pattern;
  pattern.relation = relation;
  std::map<std::string, int> index_of;
  for (const std::string &token : Split(segments[0], '|')) {
    if (token.size() < 2) throw ValidationError(context + "bad node token '" + token + "'");
    PatternNode node;
    switch (token[0]) {
      case 'H': node.role = SlotRole::kHead; break;
      case 'I': node.role = SlotRole::kInternal; break;
      case 'T': node.role = SlotRole::kTail; break;
      default: throw ValidationError(context + "bad node token '" + token + "'");
    }
    size_t eq = token.find('=');
    std::string digits = token.substr(1, eq == std::string::npos ? std::string::npos : eq - 1);
    if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit) ||
        digits.size() > 6) {
      throw ValidationError(context + "bad slot ordinal in '" + token + "'");
    }
    node.ordinal = std::stoi(digits);
    if (eq != std::string::npos) node.literal = Unescape(token.substr(eq + 1));
    if (!index_of.emplace(node.SlotId(), static_cast<int>(pattern.nodes.size())).second) {
      throw ValidationError(context + "duplicate slot '" + node.SlotId() + "'");
    }
    pattern.nodes.push_back(std::move(node));
  }
  for (size_t s = 1; s < segments.size(); ++s) {
    const std::string &text = segments[s];
    size_t dash = text.find('-');
    size_t arrow = text.rfind("->");
    if (dash == std::string::npos || arrow == std::string::npos || arrow <= dash) {
      throw ValidationError(context + "bad edge '" + text + "'");
    }
    auto src = index_of.find(text.substr(0, dash));
    auto dst = index_of.find(text.substr(arrow + 2));
    if (src == index_of.end() || dst == index_of.end()) {
      throw ValidationError(context + "edge '" + text + "' references an unknown slot");
    }
    pattern.edges.push_back({src->second, dst->second, Unescape(text.substr(dash + 1, arrow - dash - 1))});
  }
  try {
    ValidatePattern(pattern);
  } catch (const ValidationError &e) {
    throw ValidationError(context + e.what());
  }
  if (Canonicalize(pattern) != key) throw ValidationError(context + "not in canonical form");
  return pattern;
}

}  // namespace kgmine
