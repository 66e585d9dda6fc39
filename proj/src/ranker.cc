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


#include "kgmine/ranker.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "json.hpp"
#include "kgmine/errors.h"
#include "kgmine/parallel.h"
#include "kgmine/random.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;
using json = nlohmann::json;

// Probability clamp for the cross-entropy so a saturated sigmoid does not
// produce log(0).
constexpr double kProbFloor = 1e-12;

void FillUniform(MatrixXd &m, Rng &rng, double scale) {
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.Uniform(-scale, scale);
}

void FillUniform(VectorXd &v, Rng &rng, double scale) {
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.Uniform(-scale, scale);
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  double z = std::exp(x);
  return z / (1.0 + z);
}

void RowSoftmax(MatrixXd &m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double max = m.row(i).maxCoeff();
    m.row(i) = (m.row(i).array() - max).exp();
    m.row(i) /= m.row(i).sum();
  }
}

struct LayerCache {
  MatrixXd x, q, k, v, a, h, u, r;
};

struct ForwardPass {
  std::vector<int> ids;
  std::vector<LayerCache> layers;
  InstanceEncoding enc;
  VectorXd features;
};

MatrixXd InputEmbeddings(const LinguisticGraph &graph, const RankerParams &params,
                         const RankerConfig &config, std::vector<int> *ids) {
  const int n = graph.size();
  const int d = config.embed_dim;
  MatrixXd x(n, d);
  ids->clear();
  for (int i = 0; i < n; ++i) {
    int id = config.vocab.Id(graph.word(i));
    ids->push_back(id);
    x.row(i) = params.embeddings.row(id);
    if (config.positional) {
      for (int j = 0; j < d; ++j) {
        double rate = std::pow(10000.0, static_cast<double>(2 * (j / 2)) / d);
        x(i, j) += (j % 2 == 0) ? std::sin(i / rate) : std::cos(i / rate);
      }
    }
  }
  return x;
}

MatrixXd RunEncoder(MatrixXd x, const RankerParams &params, const RankerConfig &config,
                    std::vector<LayerCache> *caches) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(config.embed_dim));
  for (const EncoderLayer &layer : params.layers) {
    LayerCache c;
    c.x = x;
    c.q = x * layer.wq;
    c.k = x * layer.wk;
    c.v = x * layer.wv;
    c.a = c.q * c.k.transpose() * scale;
    RowSoftmax(c.a);
    c.h = x + c.a * c.v;
    c.u = c.h * layer.w1;
    c.u.rowwise() += layer.b1.transpose();
    c.r = c.u.cwiseMax(0.0);
    MatrixXd ff = c.r * layer.w2;
    ff.rowwise() += layer.b2.transpose();
    x = c.h + ff;
    if (caches != nullptr) caches->push_back(std::move(c));
  }
  return x;
}

VectorXd PoolNodes(const MatrixXd &e, const MatrixXd &attended, const std::vector<int> &nodes) {
  const Eigen::Index d = e.cols();
  VectorXd pooled = VectorXd::Zero(2 * d);
  for (int i : nodes) {
    pooled.head(d) += e.row(i).transpose();
    pooled.tail(d) += attended.row(i).transpose();
  }
  return pooled / static_cast<double>(nodes.size());
}

ForwardPass Forward(const Instance &instance, const RankerParams &params,
                    const RankerConfig &config) {
  ForwardPass pass;
  const LinguisticGraph &graph = *instance.graph;
  const int d = config.embed_dim;
  MatrixXd x = InputEmbeddings(graph, params, config, &pass.ids);
  InstanceEncoding &enc = pass.enc;
  enc.e = RunEncoder(std::move(x), params, config, &pass.layers);
  enc.attention = GraphAttention(enc.e, graph, params);
  enc.o_head = PoolNodes(enc.e, enc.attention.attended, instance.head_nodes);
  enc.o_tail = PoolNodes(enc.e, enc.attention.attended, instance.tail_nodes);
  enc.o_fre = std::log1p(static_cast<double>(graph.freq()));
  enc.o_type = graph.type() == GraphType::kEventuality ? 1.0 : 0.0;
  pass.features.resize(4 * d + 2);
  pass.features << enc.o_head, enc.o_tail, enc.o_fre, enc.o_type;
  enc.logit = params.head.head(4 * d + 2).dot(pass.features) + params.head[4 * d + 2];
  enc.score = Sigmoid(enc.logit);
  return pass;
}

// Accumulates the gradient of the loss into *grad given dLoss/dlogit.
void Backward(const ForwardPass &pass, const Instance &instance, const RankerParams &params,
              const RankerConfig &config, double dlogit, RankerParams *grad) {
  const int d = config.embed_dim;
  const MatrixXd &e = pass.enc.e;
  const GraphAttentionOutput &att = pass.enc.attention;
  const Eigen::Index n = e.rows();

  grad->head.head(4 * d + 2) += dlogit * pass.features;
  grad->head[4 * d + 2] += dlogit;
  VectorXd dx = dlogit * params.head.head(4 * d + 2);

  MatrixXd de = MatrixXd::Zero(n, d);
  MatrixXd dattended = MatrixXd::Zero(n, d);
  auto spread = [&](const std::vector<int> &nodes, const VectorXd &dpool) {
    double share = 1.0 / static_cast<double>(nodes.size());
    for (int i : nodes) {
      de.row(i) += share * dpool.head(d).transpose();
      dattended.row(i) += share * dpool.tail(d).transpose();
    }
  };
  spread(instance.head_nodes, dx.segment(0, 2 * d));
  spread(instance.tail_nodes, dx.segment(2 * d, 2 * d));

  const VectorXd wa_self = params.attention.head(d);
  const VectorXd wa_other = params.attention.segment(d, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::vector<int> &nbrs = att.neighbors[i];
    const VectorXd &alpha = att.weights[i];
    VectorXd dalpha(nbrs.size());
    for (size_t j = 0; j < nbrs.size(); ++j) {
      dalpha[j] = dattended.row(i).dot(e.row(nbrs[j]));
      de.row(nbrs[j]) += alpha[j] * dattended.row(i);
    }
    double mean = alpha.dot(dalpha);
    for (size_t j = 0; j < nbrs.size(); ++j) {
      double ds = alpha[j] * (dalpha[j] - mean);
      grad->attention.head(d) += ds * e.row(i).transpose();
      grad->attention.segment(d, d) += ds * e.row(nbrs[j]).transpose();
      grad->attention[2 * d] += ds;
      de.row(i) += ds * wa_self.transpose();
      de.row(nbrs[j]) += ds * wa_other.transpose();
    }
  }

  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  MatrixXd dy = std::move(de);
  for (size_t l = pass.layers.size(); l-- > 0;) {
    const LayerCache &c = pass.layers[l];
    const EncoderLayer &layer = params.layers[l];
    EncoderLayer &g = grad->layers[l];
    g.w2 += c.r.transpose() * dy;
    g.b2 += dy.colwise().sum().transpose();
    MatrixXd du = (dy * layer.w2.transpose()).cwiseProduct((c.u.array() > 0.0).cast<double>().matrix());
    g.w1 += c.h.transpose() * du;
    g.b1 += du.colwise().sum().transpose();
    MatrixXd dh = dy + du * layer.w1.transpose();

    MatrixXd da = dh * c.v.transpose();
    MatrixXd dv = c.a.transpose() * dh;
    VectorXd row_dot = (da.cwiseProduct(c.a)).rowwise().sum();
    MatrixXd ds = c.a.cwiseProduct(da.colwise() - row_dot) * scale;
    MatrixXd dq = ds * c.k;
    MatrixXd dk = ds.transpose() * c.q;
    g.wq += c.x.transpose() * dq;
    g.wk += c.x.transpose() * dk;
    g.wv += c.x.transpose() * dv;
    dy = dh + dq * layer.wq.transpose() + dk * layer.wk.transpose() + dv * layer.wv.transpose();
  }
  for (Eigen::Index i = 0; i < n; ++i) grad->embeddings.row(pass.ids[i]) += dy.row(i);
}

json MatrixJson(const MatrixXd &m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json VectorJson(const VectorXd &v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

MatrixXd MatrixFromJson(const json &rows, Eigen::Index expect_rows, Eigen::Index expect_cols,
                        const std::string &what) {
  if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != expect_rows) {
    throw ValidationError("checkpoint: " + what + " has the wrong number of rows");
  }
  MatrixXd m(expect_rows, expect_cols);
  for (Eigen::Index i = 0; i < expect_rows; ++i) {
    const json &row = rows[i];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != expect_cols) {
      throw ValidationError("checkpoint: " + what + " has the wrong number of columns");
    }
    for (Eigen::Index j = 0; j < expect_cols; ++j) m(i, j) = row[j].get<double>();
  }
  return m;
}

VectorXd VectorFromJson(const json &values, Eigen::Index expect, const std::string &what) {
  if (!values.is_array() || static_cast<Eigen::Index>(values.size()) != expect) {
    throw ValidationError("checkpoint: " + what + " has the wrong length");
  }
  VectorXd v(expect);
  for (Eigen::Index i = 0; i < expect; ++i) v[i] = values[i].get<double>();
  return v;
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(std::vector<std::string>{}) {}

Vocabulary::Vocabulary(const std::vector<std::string> &words) {
  std::set<std::string> distinct(words.begin(), words.end());
  distinct.erase(kUnknown);
  tokens_.push_back(kUnknown);
  tokens_.insert(tokens_.end(), distinct.begin(), distinct.end());
  for (int i = 0; i < static_cast<int>(tokens_.size()); ++i) ids_[tokens_[i]] = i;
}

int Vocabulary::Id(const std::string &word) const {
  auto it = ids_.find(word);
  return it == ids_.end() ? 0 : it->second;
}

void RankerConfig::Validate() const {
  if (embed_dim < 2) throw ValidationError("embed-dim must be >= 2");
  if (encoder_layers < 0) throw ValidationError("encoder-layers must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("learning rate must be positive");
  }
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (vocab.size() < 1 || vocab.tokens()[0] != Vocabulary::kUnknown) {
    throw ValidationError("vocabulary must contain <UNK>");
  }
}

RankerParams RankerParams::ZerosLike() const {
  RankerParams zero = *this;
  zero.ForEach([](double &x) { x = 0.0; });
  return zero;
}

void RankerParams::ForEach(const std::function<void(double &)> &fn) {
  auto visit = [&](auto &m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) fn(m.data()[i]);
  };
  visit(embeddings);
  for (EncoderLayer &layer : layers) {
    visit(layer.wq);
    visit(layer.wk);
    visit(layer.wv);
    visit(layer.w1);
    visit(layer.b1);
    visit(layer.w2);
    visit(layer.b2);
  }
  visit(attention);
  visit(head);
}

void RankerParams::ForEach(const std::function<void(double)> &fn) const {
  const_cast<RankerParams *>(this)->ForEach([&](double &x) { fn(x); });
}

size_t RankerParams::ParameterCount() const {
  size_t count = 0;
  ForEach([&](double) { ++count; });
  return count;
}

bool RankerParams::AllFinite() const {
  bool finite = true;
  ForEach([&](double x) { finite = finite && std::isfinite(x); });
  return finite;
}

RankerParams InitParams(const RankerConfig &config, uint64_t seed) {
  config.Validate();
  const int d = config.embed_dim;
  Rng rng(seed);
  RankerParams params;
  params.embeddings.resize(config.vocab.size(), d);
  FillUniform(params.embeddings, rng, 0.5);
  const double glorot = std::sqrt(3.0 / d);
  for (int l = 0; l < config.encoder_layers; ++l) {
    EncoderLayer layer;
    for (MatrixXd *m : {&layer.wq, &layer.wk, &layer.wv, &layer.w1, &layer.w2}) {
      m->resize(d, d);
      FillUniform(*m, rng, glorot);
    }
    layer.b1 = VectorXd::Zero(d);
    layer.b2 = VectorXd::Zero(d);
    params.layers.push_back(std::move(layer));
  }
  params.attention.resize(2 * d + 1);
  FillUniform(params.attention, rng, 0.1);
  params.attention[2 * d] = 0.0;
  params.head.resize(4 * d + 3);
  FillUniform(params.head, rng, 0.1);
  params.head[4 * d + 2] = 0.0;
  return params;
}

std::optional<Instance> InstanceByWords(const LinguisticGraph &graph,
                                        const std::vector<std::string> &head,
                                        const std::vector<std::string> &tail) {
  Instance instance;
  instance.graph = &graph;
  for (const GraphNode &node : graph.nodes()) {
    if (std::find(head.begin(), head.end(), node.word) != head.end()) {
      instance.head_nodes.push_back(node.index);
    }
    if (std::find(tail.begin(), tail.end(), node.word) != tail.end()) {
      instance.tail_nodes.push_back(node.index);
    }
  }
  if (instance.head_nodes.empty() || instance.tail_nodes.empty()) return std::nullopt;
  return instance;
}

MatrixXd EncodeTokens(const LinguisticGraph &graph, const RankerParams &params,
                      const RankerConfig &config) {
  std::vector<int> ids;
  return RunEncoder(InputEmbeddings(graph, params, config, &ids), params, config, nullptr);
}

GraphAttentionOutput GraphAttention(const MatrixXd &embeddings, const LinguisticGraph &graph,
                                    const RankerParams &params) {
  const Eigen::Index n = embeddings.rows();
  const Eigen::Index d = embeddings.cols();
  GraphAttentionOutput out;
  out.attended = MatrixXd::Zero(n, d);
  const VectorXd wa_self = params.attention.head(d);
  const VectorXd wa_other = params.attention.segment(d, d);
  const double bias = params.attention[2 * d];
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<int> nbrs = graph.Neighbors(static_cast<int>(i));
    nbrs.insert(std::lower_bound(nbrs.begin(), nbrs.end(), static_cast<int>(i)), static_cast<int>(i));
    double self_term = wa_self.dot(embeddings.row(i).transpose()) + bias;
    VectorXd logits(nbrs.size());
    for (size_t j = 0; j < nbrs.size(); ++j) {
      logits[j] = self_term + wa_other.dot(embeddings.row(nbrs[j]).transpose());
    }
    VectorXd weights = (logits.array() - logits.maxCoeff()).exp();
    weights /= weights.sum();
    for (size_t j = 0; j < nbrs.size(); ++j) out.attended.row(i) += weights[j] * embeddings.row(nbrs[j]);
    out.neighbors.push_back(std::move(nbrs));
    out.weights.push_back(std::move(weights));
  }
  return out;
}

InstanceEncoding EncodeInstance(const Instance &instance, const RankerParams &params,
                                const RankerConfig &config) {
  return Forward(instance, params, config).enc;
}

double PredictPlausibility(const Instance &instance, const RankerParams &params,
                           const RankerConfig &config) {
  return Forward(instance, params, config).enc.score;
}

double TupleScore(const std::vector<Instance> &instances, const RankerParams &params,
                  const RankerConfig &config) {
  if (instances.empty()) return 0.0;
  double sum = 0.0;
  for (const Instance &instance : instances) sum += PredictPlausibility(instance, params, config);
  return sum / static_cast<double>(instances.size());
}

double TupleLoss(const std::vector<Instance> &instances, int label, const RankerParams &params,
                 const RankerConfig &config, RankerParams *grad) {
  if (instances.empty()) throw InternalError("TupleLoss on a tuple without instances");
  std::vector<ForwardPass> passes;
  double mean = 0.0;
  for (const Instance &instance : instances) {
    passes.push_back(Forward(instance, params, config));
    mean += passes.back().enc.score;
  }
  const double m = static_cast<double>(instances.size());
  mean /= m;
  const double p = std::clamp(mean, kProbFloor, 1.0 - kProbFloor);
  const double y = label ? 1.0 : 0.0;
  const double loss = -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
  if (grad != nullptr) {
    const double dmean = (p - y) / (p * (1.0 - p));
    for (size_t g = 0; g < passes.size(); ++g) {
      double f = passes[g].enc.score;
      Backward(passes[g], instances[g], params, config, dmean / m * f * (1.0 - f), grad);
    }
  }
  return loss;
}

double GradientCheck(const RankerParams &params, const std::vector<Instance> &instances, int label,
                     const RankerConfig &config) {
  constexpr double kStep = 1e-4;
  constexpr double kFloor = 1e-6;
  RankerParams analytic = params.ZerosLike();
  TupleLoss(instances, label, params, config, &analytic);
  std::vector<double> expected;
  analytic.ForEach([&](double g) { expected.push_back(g); });

  RankerParams probe = params;
  std::vector<double *> slots;
  probe.ForEach([&](double &x) { slots.push_back(&x); });
  double worst = 0.0;
  for (size_t p = 0; p < slots.size(); ++p) {
    const double original = *slots[p];
    *slots[p] = original + kStep;
    double up = TupleLoss(instances, label, probe, config, nullptr);
    *slots[p] = original - kStep;
    double down = TupleLoss(instances, label, probe, config, nullptr);
    *slots[p] = original;
    double numeric = (up - down) / (2.0 * kStep);
    double denom = std::max({std::abs(numeric), std::abs(expected[p]), kFloor});
    worst = std::max(worst, std::abs(numeric - expected[p]) / denom);
  }
  return worst;
}

namespace {

struct PreparedExample {
  const AnnotatedExample *example = nullptr;
  std::vector<Instance> instances;
};

std::vector<PreparedExample> Prepare(const std::vector<const AnnotatedExample *> &examples,
                                     const GraphCorpus &corpus, const WarningCallback &on_warning) {
  std::vector<PreparedExample> prepared;
  for (const AnnotatedExample *example : examples) {
    PreparedExample p;
    p.example = example;
    for (const std::string &id : example->graph_ids) {
      const LinguisticGraph *graph = corpus.Find(id);
      std::optional<Instance> instance =
          graph ? InstanceByWords(*graph, example->head, example->tail) : std::nullopt;
      if (instance) {
        p.instances.push_back(std::move(*instance));
      } else if (on_warning) {
        on_warning("skipping graph '" + id + "' for (" + Join(example->head, " ") + ", " +
                   example->relation + ", " + Join(example->tail, " ") +
                   "): head or tail words not present");
      }
    }
    prepared.push_back(std::move(p));
  }
  return prepared;
}

}  // namespace

RankerModel Train(const std::vector<AnnotatedExample> &dataset, const GraphCorpus &corpus,
                  RankerConfig config, const EpochCallback &on_epoch,
                  const WarningCallback &on_warning) {
  if (dataset.empty()) throw ValidationError("training dataset is empty");
  std::set<std::string> missing;
  std::vector<std::string> words;
  std::set<std::string> referenced;
  for (const AnnotatedExample &example : dataset) {
    if (example.label != 0 && example.label != 1) throw ValidationError("labels must be 0 or 1");
    if (example.graph_ids.empty()) throw ValidationError("example without supporting graphs");
    for (const std::string &id : example.graph_ids) {
      const LinguisticGraph *graph = corpus.Find(id);
      if (graph == nullptr) {
        missing.insert(id);
      } else if (referenced.insert(id).second) {
        for (const GraphNode &node : graph->nodes()) words.push_back(node.word);
      }
    }
  }
  if (!missing.empty()) {
    throw ValidationError("unresolvable graph ids in annotations: " +
                          Join(std::vector<std::string>(missing.begin(), missing.end()), ", "));
  }
  config.vocab = Vocabulary(words);
  config.Validate();

  std::map<std::string, std::vector<const AnnotatedExample *>> by_relation;
  for (const AnnotatedExample &example : dataset) by_relation[example.relation].push_back(&example);

  RankerModel model;
  model.config = config;
  for (const auto &[relation, examples] : by_relation) {
    std::vector<PreparedExample> prepared = Prepare(examples, corpus, on_warning);
    std::erase_if(prepared, [&](const PreparedExample &p) {
      if (!p.instances.empty()) return false;
      if (on_warning) {
        on_warning("dropping (" + Join(p.example->head, " ") + ", " + relation + ", " +
                   Join(p.example->tail, " ") + "): no usable supporting graph");
      }
      return true;
    });
    const uint64_t seed = SplitMix64(config.rng_seed ^ Fnv1a(relation));
    RankerParams params = InitParams(config, seed);
    RankerParams grad = params.ZerosLike();
    std::vector<double *> param_slots, grad_slots;
    params.ForEach([&](double &x) { param_slots.push_back(&x); });
    grad.ForEach([&](double &x) { grad_slots.push_back(&x); });
    Rng order_rng(SplitMix64(seed));
    std::vector<size_t> order(prepared.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
      for (size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[order_rng.Below(i)]);
      double total = 0.0;
      for (size_t step = 0; step < order.size(); ++step) {
        const PreparedExample &p = prepared[order[step]];
        for (double *g : grad_slots) *g = 0.0;
        double loss = TupleLoss(p.instances, p.example->label, params, config, &grad);
        if (!std::isfinite(loss) || !std::all_of(grad_slots.begin(), grad_slots.end(),
                                                  [](const double *g) { return std::isfinite(*g); })) {
          throw TrainingError("non-finite loss for relation " + relation + " at epoch " +
                              std::to_string(epoch) + ", example (" + Join(p.example->head, " ") +
                              ", " + Join(p.example->tail, " ") + ")");
        }
        total += loss;
        for (size_t k = 0; k < param_slots.size(); ++k) {
          *param_slots[k] -= config.learning_rate * *grad_slots[k];
        }
      }
      if (on_epoch) on_epoch(relation, epoch, prepared.empty() ? 0.0 : total / prepared.size());
    }
    model.relations.emplace(relation, std::move(params));
  }
  return model;
}

double TrainingAccuracy(const RankerModel &model, const std::vector<AnnotatedExample> &dataset,
                        const GraphCorpus &corpus) {
  if (dataset.empty()) return 0.0;
  int correct = 0;
  for (const AnnotatedExample &example : dataset) {
    double score = 0.0;
    auto it = model.relations.find(example.relation);
    if (it != model.relations.end()) {
      std::vector<const AnnotatedExample *> one = {&example};
      std::vector<PreparedExample> prepared = Prepare(one, corpus, nullptr);
      score = TupleScore(prepared[0].instances, it->second, model.config);
    }
    if ((score > 0.5) == (example.label == 1)) ++correct;
  }
  return static_cast<double>(correct) / dataset.size();
}

std::string SaveCheckpoint(const RankerModel &model) {
  const RankerConfig &c = model.config;
  json config = {{"embed_dim", c.embed_dim},
                 {"encoder_layers", c.encoder_layers},
                 {"learning_rate", c.learning_rate},
                 {"epochs", c.epochs},
                 {"rng_seed", c.rng_seed},
                 {"positional", c.positional},
                 {"vocab", c.vocab.tokens()}};
  json relations = json::object();
  for (const auto &[relation, params] : model.relations) {
    json layers = json::array();
    for (const EncoderLayer &layer : params.layers) {
      layers.push_back({{"wq", MatrixJson(layer.wq)},
                        {"wk", MatrixJson(layer.wk)},
                        {"wv", MatrixJson(layer.wv)},
                        {"w1", MatrixJson(layer.w1)},
                        {"b1", VectorJson(layer.b1)},
                        {"w2", MatrixJson(layer.w2)},
                        {"b2", VectorJson(layer.b2)}});
    }
    relations[relation] = {{"embeddings", MatrixJson(params.embeddings)},
                           {"encoder", {{"layers", layers}}},
                           {"nn_a", VectorJson(params.attention)},
                           {"nn_p", VectorJson(params.head)}};
  }
  json doc = {{"version", 1}, {"config", config}, {"relations", relations}};
  return doc.dump(1) + "\n";
}

RankerModel LoadCheckpoint(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("checkpoint is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != 1) throw ValidationError("unsupported checkpoint version");
    const json &c = doc.at("config");
    RankerModel model;
    model.config.embed_dim = c.at("embed_dim").get<int>();
    model.config.encoder_layers = c.at("encoder_layers").get<int>();
    model.config.learning_rate = c.at("learning_rate").get<double>();
    model.config.epochs = c.at("epochs").get<int>();
    model.config.rng_seed = c.at("rng_seed").get<uint64_t>();
    model.config.positional = c.value("positional", false);
    std::vector<std::string> tokens = c.at("vocab").get<std::vector<std::string>>();
    model.config.vocab = Vocabulary(tokens);
    if (model.config.vocab.tokens() != tokens) {
      throw ValidationError("checkpoint vocabulary is not in canonical order");
    }
    model.config.Validate();
    const int d = model.config.embed_dim;
    const int v = model.config.vocab.size();
    for (const auto &[relation, r] : doc.at("relations").items()) {
      RankerParams params;
      params.embeddings = MatrixFromJson(r.at("embeddings"), v, d, relation + " embeddings");
      const json &layers = r.at("encoder").at("layers");
      if (static_cast<int>(layers.size()) != model.config.encoder_layers) {
        throw ValidationError("checkpoint: " + relation + " has the wrong number of layers");
      }
      for (const json &l : layers) {
        EncoderLayer layer;
        layer.wq = MatrixFromJson(l.at("wq"), d, d, relation + " wq");
        layer.wk = MatrixFromJson(l.at("wk"), d, d, relation + " wk");
        layer.wv = MatrixFromJson(l.at("wv"), d, d, relation + " wv");
        layer.w1 = MatrixFromJson(l.at("w1"), d, d, relation + " w1");
        layer.b1 = VectorFromJson(l.at("b1"), d, relation + " b1");
        layer.w2 = MatrixFromJson(l.at("w2"), d, d, relation + " w2");
        layer.b2 = VectorFromJson(l.at("b2"), d, relation + " b2");
        params.layers.push_back(std::move(layer));
      }
      params.attention = VectorFromJson(r.at("nn_a"), 2 * d + 1, relation + " nn_a");
      params.head = VectorFromJson(r.at("nn_p"), 4 * d + 3, relation + " nn_p");
      if (!params.AllFinite()) throw ValidationError("checkpoint: non-finite parameter in " + relation);
      model.relations.emplace(relation, std::move(params));
    }
    return model;
  } catch (const json::exception &e) {
    throw ValidationError(std::string("checkpoint: bad field: ") + e.what());
  }
}

void RankKnowledge(std::vector<RankCandidate> &candidates, const RankerModel &model, int workers,
                   const WarningCallback &on_warning) {
  std::vector<std::string> warnings(candidates.size());
  ParallelFor(static_cast<int>(candidates.size()), workers, [&](int i) {
    RankCandidate &c = candidates[i];
    auto it = model.relations.find(c.relation);
    if (it == model.relations.end()) {
      c.score = 0.0;
      warnings[i] = "relation '" + c.relation + "' has no trained ranker; (" + c.head + ", " +
                    c.relation + ", " + c.tail + ") scored 0";
      return;
    }
    if (c.instances.empty()) {
      c.score = 0.0;
      warnings[i] = "(" + c.head + ", " + c.relation + ", " + c.tail +
                    ") has no usable supporting graph; scored 0";
      return;
    }
    c.score = TupleScore(c.instances, it->second, model.config);
  });
  if (on_warning) {
    for (const std::string &w : warnings) {
      if (!w.empty()) on_warning(w);
    }
  }
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const RankCandidate &a, const RankCandidate &b) {
                     if (a.score != b.score) return a.score > b.score;
                     return std::tie(a.head, a.relation, a.tail) < std::tie(b.head, b.relation, b.tail);
                   });
}

size_t TopPercentCount(size_t n, double percent) {
  if (n == 0 || !(percent > 0.0)) return 0;
  double exact = static_cast<double>(n) * percent / 100.0;
  size_t count = static_cast<size_t>(std::ceil(exact - 1e-9));
  return std::clamp<size_t>(count, 1, n);
}

}  // namespace kgmine
