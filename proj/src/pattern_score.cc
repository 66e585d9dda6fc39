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


#include "kgmine/pattern_score.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "kgmine/errors.h"

namespace kgmine {

PatternStats::PatternStats(const SeedKB &seed) {
  for (const std::string &relation : seed.relations()) {
    relation_sizes_[relation] = seed.RelationSize(relation);
  }
}

void PatternStats::SetRelationSize(const std::string &relation, int size) {
  relation_sizes_[relation] = size;
}

void PatternStats::Accumulate(const Pattern &pattern) {
  Add(Canonicalize(pattern), pattern.relation, pattern.Length());
}

void PatternStats::Add(const std::string &key, const std::string &relation, int length,
                       long count) {
  if (length < 1) throw InternalError("pattern '" + key + "' has length < 1");
  auto [it, inserted] = lengths_.emplace(key, length);
  if (!inserted && it->second != length) {
    throw InternalError("pattern '" + key + "' recorded with lengths " +
                        std::to_string(it->second) + " and " + std::to_string(length));
  }
  counts_[{key, relation}] += count;
}

void PatternStats::Merge(const PatternStats &other) {
  for (const auto &[relation, size] : other.relation_sizes_) {
    auto [it, inserted] = relation_sizes_.emplace(relation, size);
    if (!inserted && it->second != size) {
      throw InternalError("relation '" + relation + "' merged with different sizes");
    }
  }
  for (const auto &[key_rel, count] : other.counts_) {
    Add(key_rel.first, key_rel.second, other.lengths_.at(key_rel.first), count);
  }
}

long PatternStats::Count(const std::string &key, const std::string &relation) const {
  auto it = counts_.find({key, relation});
  return it == counts_.end() ? 0 : it->second;
}

int PatternStats::Length(const std::string &key) const {
  auto it = lengths_.find(key);
  return it == lengths_.end() ? 0 : it->second;
}

int PatternStats::RelationSize(const std::string &relation) const {
  auto it = relation_sizes_.find(relation);
  return it == relation_sizes_.end() ? 0 : it->second;
}

std::vector<std::string> PatternStats::ObservedRelations() const {
  std::set<std::string> relations;
  for (const auto &[key_rel, count] : counts_) {
    if (count > 0) relations.insert(key_rel.second);
  }
  return {relations.begin(), relations.end()};
}

double Uniqueness(const PatternStats &stats, const std::string &key, const std::string &relation) {
  auto share = [&](const std::string &r, long count) {
    int size = stats.RelationSize(r);
    if (size < 1) throw InternalError("relation '" + r + "' has no seed tuples");
    return static_cast<double>(count) / std::sqrt(static_cast<double>(size));
  };
  long own = stats.Count(key, relation);
  if (own <= 0) throw InternalError("pattern '" + key + "' not observed for " + relation);
  double denominator = 0.0;
  for (auto it = stats.counts().lower_bound({key, std::string()});
       it != stats.counts().end() && it->first.first == key; ++it) {
    if (it->second > 0) denominator += share(it->first.second, it->second);
  }
  return share(relation, own) / denominator;
}

std::vector<ScoredPattern> Plausibility(const PatternStats &stats, const std::string &relation) {
  std::vector<ScoredPattern> scored;
  double total = 0.0;
  for (const auto &[key_rel, count] : stats.counts()) {
    if (key_rel.second != relation || count <= 0) continue;
    ScoredPattern sp;
    sp.key = key_rel.first;
    sp.relation = relation;
    sp.count = count;
    sp.length = stats.Length(sp.key);
    sp.uniqueness = Uniqueness(stats, sp.key, relation);
    sp.raw_score = static_cast<double>(count) * sp.length * sp.uniqueness;
    total += sp.raw_score;
    scored.push_back(std::move(sp));
  }
  for (ScoredPattern &sp : scored) sp.plausibility = sp.raw_score / total;
  return scored;
}

std::vector<ScoredPattern> SelectPatterns(std::vector<ScoredPattern> scored, double threshold) {
  std::erase_if(scored, [threshold](const ScoredPattern &sp) { return !(sp.plausibility > threshold); });
  std::sort(scored.begin(), scored.end(), [](const ScoredPattern &a, const ScoredPattern &b) {
    if (a.plausibility != b.plausibility) return a.plausibility > b.plausibility;
    if (a.key != b.key) return a.key < b.key;
    return a.relation < b.relation;
  });
  return scored;
}

}  // namespace kgmine
