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


// Pattern counting and plausibility scoring.
//
//   U(P|r) = (C(P|r) / sqrt|C^r|) / sum_r' (C(P|r') / sqrt|C^r'|)
//   F(P|r) = C(P|r) * L(P) * U(P|r)
//   P(P|r) = F(P|r) / sum_{P' in P^r} F(P'|r)

#ifndef KGMINE_PATTERN_SCORE_H_
#define KGMINE_PATTERN_SCORE_H_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kgmine/graph_model.h"
#include "kgmine/pattern_extract.h"

namespace kgmine {

constexpr double kDefaultPatternThreshold = 0.05;

class PatternStats {
 public:
  PatternStats() = default;

  // Takes |C^r| for every relation from the seed KB.
  explicit PatternStats(const SeedKB &seed);

  void SetRelationSize(const std::string &relation, int size);

  // C(P|r) += 1 under the pattern's canonical key. Throws InternalError if
  // the key was seen before with a different length.
  void Accumulate(const Pattern &pattern);
  void Add(const std::string &key, const std::string &relation, int length, long count = 1);

  // Sums counts; relation sizes and lengths must agree.
  void Merge(const PatternStats &other);

  long Count(const std::string &key, const std::string &relation) const;
  int Length(const std::string &key) const;
  int RelationSize(const std::string &relation) const;

  // (key, relation) -> count, ordered by key then relation.
  const std::map<std::pair<std::string, std::string>, long> &counts() const { return counts_; }
  const std::map<std::string, int> &lengths() const { return lengths_; }
  const std::map<std::string, int> &relation_sizes() const { return relation_sizes_; }

  // Relations with at least one observed pattern.
  std::vector<std::string> ObservedRelations() const;

  bool operator==(const PatternStats &other) const = default;

 private:
  std::map<std::pair<std::string, std::string>, long> counts_;
  std::map<std::string, int> lengths_;
  std::map<std::string, int> relation_sizes_;
};

struct ScoredPattern {
  std::string key;
  std::string relation;
  long count = 0;
  int length = 0;
  double uniqueness = 0.0;
  double raw_score = 0.0;
  double plausibility = 0.0;
};

// Requires C(P|r) > 0 and |C^r'| >= 1 wherever the key was observed.
double Uniqueness(const PatternStats &stats, const std::string &key, const std::string &relation);

// All patterns of one relation, ordered by key.
std::vector<ScoredPattern> Plausibility(const PatternStats &stats, const std::string &relation);

// Keeps patterns with plausibility strictly above the threshold, sorted by
// (plausibility desc, key asc).
std::vector<ScoredPattern> SelectPatterns(std::vector<ScoredPattern> scored,
                                          double threshold = kDefaultPatternThreshold);

}  // namespace kgmine

#endif  // KGMINE_PATTERN_SCORE_H_
