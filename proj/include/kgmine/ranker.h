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


// Multi-instance plausibility ranker.
//
// A candidate tuple k with supporting graphs G^k is scored as the mean of
// per-graph scores f(k|g). Each f(k|g) runs the graph's words through an
// embedding table and a stack of single-head self-attention blocks (e), then
// a graph attention step over each word's neighbors including itself (e^):
//
//   a(e, e') = softmax over e' in N(e) of  w_a . [e, e'] + b_a
//   e^       = sum_{e' in N(e)} a(e, e') e'
//
// Head and tail vectors are means of [e, e^] over the matched words, and
//
//   f(k|g) = sigmoid(w_p . [o_head, o_tail, ln(1 + freq), is_eventuality] + b_p).
//
// Training minimizes binary cross-entropy of the tuple-level mean with plain
// SGD, one tuple per step, separately for every relation.

#ifndef KGMINE_RANKER_H_
#define KGMINE_RANKER_H_

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "kgmine/graph_model.h"

namespace kgmine {

class Vocabulary {
 public:
  static constexpr const char *kUnknown = "<UNK>";

  Vocabulary();
  // <UNK> first, then the sorted distinct words.
  explicit Vocabulary(const std::vector<std::string> &words);

  int Id(const std::string &word) const;
  int size() const { return static_cast<int>(tokens_.size()); }
  const std::vector<std::string> &tokens() const { return tokens_; }

  bool operator==(const Vocabulary &other) const { return tokens_ == other.tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> ids_;
};

struct RankerConfig {
  int embed_dim = 32;
  int encoder_layers = 1;
  double learning_rate = 0.1;
  int epochs = 100;
  uint64_t rng_seed = 1;
  bool positional = false;  // sinusoidal position signal added to embeddings
  Vocabulary vocab;

  // Throws ValidationError.
  void Validate() const;
};

struct EncoderLayer {
  Eigen::MatrixXd wq, wk, wv;  // d x d
  Eigen::MatrixXd w1, w2;      // d x d feed-forward
  Eigen::VectorXd b1, b2;      // d
};

struct RankerParams {
  Eigen::MatrixXd embeddings;  // vocab x d
  std::vector<EncoderLayer> layers;
  Eigen::VectorXd attention;   // 2d weights, then bias
  Eigen::VectorXd head;        // 4d + 2 weights, then bias

  // Same shapes, all zeros.
  RankerParams ZerosLike() const;

  // Visits every scalar in a fixed order.
  void ForEach(const std::function<void(double &)> &fn);
  void ForEach(const std::function<void(double)> &fn) const;
  size_t ParameterCount() const;
  bool AllFinite() const;
};

RankerParams InitParams(const RankerConfig &config, uint64_t seed);

// One (tuple, graph) pair with the graph nodes that hold the head and tail
// words.
struct Instance {
  const LinguisticGraph *graph = nullptr;
  std::vector<int> head_nodes;
  std::vector<int> tail_nodes;
};

// Uses every node whose word appears in the phrase. nullopt if the head or
// the tail has no such node.
std::optional<Instance> InstanceByWords(const LinguisticGraph &graph,
                                        const std::vector<std::string> &head,
                                        const std::vector<std::string> &tail);

// Contextual embeddings e_1..e_n (n x d).
Eigen::MatrixXd EncodeTokens(const LinguisticGraph &graph, const RankerParams &params,
                             const RankerConfig &config);

struct GraphAttentionOutput {
  Eigen::MatrixXd attended;                 // n x d
  std::vector<std::vector<int>> neighbors;  // N(e): self plus graph neighbors, ascending
  std::vector<Eigen::VectorXd> weights;     // aligned with neighbors
};

GraphAttentionOutput GraphAttention(const Eigen::MatrixXd &embeddings, const LinguisticGraph &graph,
                                    const RankerParams &params);

struct InstanceEncoding {
  Eigen::MatrixXd e;
  GraphAttentionOutput attention;
  Eigen::VectorXd o_head;  // 2d
  Eigen::VectorXd o_tail;  // 2d
  double o_fre = 0.0;
  double o_type = 0.0;
  double logit = 0.0;
  double score = 0.0;  // f(k|g)
};

InstanceEncoding EncodeInstance(const Instance &instance, const RankerParams &params,
                                const RankerConfig &config);

double PredictPlausibility(const Instance &instance, const RankerParams &params,
                           const RankerConfig &config);

// F(k|G^k); 0 when there are no instances.
double TupleScore(const std::vector<Instance> &instances, const RankerParams &params,
                  const RankerConfig &config);

// Binary cross-entropy of TupleScore against label. Adds dLoss/dParams into
// *grad when it is non-null.
double TupleLoss(const std::vector<Instance> &instances, int label, const RankerParams &params,
                 const RankerConfig &config, RankerParams *grad);

// Max relative error between the analytic gradient and central finite
// differences (step 1e-4) over every parameter. Gradients smaller than 1e-6
// in magnitude are compared against that floor.
double GradientCheck(const RankerParams &params, const std::vector<Instance> &instances, int label,
                     const RankerConfig &config);

struct AnnotatedExample {
  std::vector<std::string> head;
  std::string relation;
  std::vector<std::string> tail;
  int label = 0;
  std::vector<std::string> graph_ids;
};

struct RankerModel {
  RankerConfig config;
  std::map<std::string, RankerParams> relations;
};

// Called after every epoch with the mean loss over the relation's examples.
using EpochCallback = std::function<void(const std::string &relation, int epoch, double loss)>;
using WarningCallback = std::function<void(const std::string &message)>;

// Builds the vocabulary from the referenced graphs and trains one parameter
// set per relation. Throws ValidationError listing unresolvable graph ids and
// TrainingError on a non-finite loss.
RankerModel Train(const std::vector<AnnotatedExample> &dataset, const GraphCorpus &corpus,
                  RankerConfig config, const EpochCallback &on_epoch = nullptr,
                  const WarningCallback &on_warning = nullptr);

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fraction of examples whose tuple score falls on the labeled side of 0.5.
double TrainingAccuracy(const RankerModel &model, const std::vector<AnnotatedExample> &dataset,
                        const GraphCorpus &corpus);

std::string SaveCheckpoint(const RankerModel &model);
RankerModel LoadCheckpoint(std::string_view json_text);

struct RankCandidate {
  std::string head;
  std::string relation;
  std::string tail;
  int support_count = 0;
  std::vector<std::string> pattern_keys;
  std::vector<Instance> instances;
  double score = 0.0;
};

// Scores every candidate (relations missing from the model score 0 with a
// warning) and stably sorts by (score desc, head, relation, tail).
void RankKnowledge(std::vector<RankCandidate> &candidates, const RankerModel &model, int workers = 1,
                   const WarningCallback &on_warning = nullptr);

// ceil(n * percent / 100) leading entries.
size_t TopPercentCount(size_t n, double percent);

}  // namespace kgmine

#endif  // KGMINE_RANKER_H_
