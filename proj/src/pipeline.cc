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


#include "kgmine/pipeline.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <tuple>

#include "CLI11.hpp"
#include "json.hpp"
#include "kgmine/errors.h"
#include "kgmine/formats.h"
#include "kgmine/graph_model.h"
#include "kgmine/knowledge_extract.h"
#include "kgmine/metrics.h"
#include "kgmine/parallel.h"
#include "kgmine/pattern_extract.h"
#include "kgmine/pattern_score.h"
#include "kgmine/ranker.h"
#include "kgmine/text.h"

namespace kgmine {

namespace {

using json = nlohmann::json;

std::string OutPath(const PipelineConfig &config, const char *name) {
  return (std::filesystem::path(config.output_dir) / name).string();
}

template <typename T>
T ParseNumber(const std::string &key, const std::string &value) {
  T parsed{};
  auto result = std::from_chars(value.data(), value.data() + value.size(), parsed);
  if (result.ec != std::errc() || result.ptr != value.data() + value.size()) {
    throw ValidationError("config: bad value for " + key + ": '" + value + "'");
  }
  return parsed;
}

bool ParseBool(const std::string &key, const std::string &value) {
  std::string v = ToLower(value);
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw ValidationError("config: bad value for " + key + ": '" + value + "'");
}

RankerConfig MakeRankerConfig(const PipelineConfig &config) {
  RankerConfig rc;
  rc.embed_dim = config.embed_dim;
  rc.encoder_layers = config.encoder_layers;
  rc.learning_rate = config.learning_rate;
  rc.epochs = config.epochs;
  rc.rng_seed = config.rng_seed;
  rc.positional = config.positional;
  return rc;
}

void RequirePath(const std::string &path, const std::string &what) {
  if (path.empty()) throw ValidationError(what + " path is not set");
}

PatternStats LoadPatternStats(const PipelineConfig &config) {
  std::vector<PatternRow> rows = ParsePatternRows(ReadFile(OutPath(config, files::kPatterns)));
  json doc;
  try {
    doc = json::parse(ReadFile(OutPath(config, files::kPatternStats)));
  } catch (const json::parse_error &e) {
    throw ValidationError(std::string("pattern stats are not valid JSON: ") + e.what());
  }
  PatternStats stats;
  try {
    for (const auto &[relation, size] : doc.at("relation_sizes").items()) {
      stats.SetRelationSize(relation, size.get<int>());
    }
    for (const json &p : doc.at("patterns")) {
      std::string key = p.at("key").get<std::string>();
      std::string relation = p.at("relation").get<std::string>();
      long count = p.at("count").get<long>();
      if (count < 1) throw ValidationError("pattern stats: non-positive count for " + key);
      if (stats.RelationSize(relation) < 1) {
        throw ValidationError("pattern stats: relation '" + relation + "' has no seed tuples");
      }
      stats.Add(key, relation, p.at("length").get<int>(), count);
    }
  } catch (const json::exception &e) {
    throw ValidationError(std::string("pattern stats: bad field: ") + e.what());
  } catch (const InternalError &e) {
    throw ValidationError(std::string("pattern stats: ") + e.what());
  }
  std::set<std::pair<std::string, std::string>> listed;
  for (const PatternRow &row : rows) listed.emplace(row.key, row.relation);
  std::set<std::pair<std::string, std::string>> counted;
  for (const auto &[key_rel, count] : stats.counts()) counted.insert(key_rel);
  if (listed != counted) {
    throw ValidationError(std::string(files::kPatterns) + " and " + files::kPatternStats +
                          " disagree; rerun extract-patterns");
  }
  return stats;
}

struct KeyedRule {
  std::string relation;
  std::string key;
};

std::vector<PatternRule> RulesFrom(const std::vector<KeyedRule> &keyed) {
  std::vector<PatternRule> rules;
  for (const KeyedRule &k : keyed) rules.push_back({k.key, ParsePatternKey(k.key, k.relation)});
  return rules;
}

}  // namespace

void PipelineConfig::Validate() const {
  if (!(pattern_threshold >= 0.0 && pattern_threshold < 1.0)) {
    throw ValidationError("threshold must be in [0, 1)");
  }
  if (!(top_percent > 0.0 && top_percent <= 100.0)) {
    throw ValidationError("top-percent must be in (0, 100]");
  }
  if (embed_dim < 2) throw ValidationError("dim must be >= 2");
  if (encoder_layers < 0) throw ValidationError("encoder-layers must be >= 0");
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw ValidationError("lr must be positive");
  }
  if (epochs < 1) throw ValidationError("epochs must be >= 1");
  if (workers < 1) throw ValidationError("workers must be >= 1");
  if (annotate_per_relation < 1) throw ValidationError("annotate-per-relation must be >= 1");
  if (output_dir.empty()) throw ValidationError("out must not be empty");
}

void ApplyConfigValue(const std::string &key, const std::string &value, PipelineConfig *config) {
  if (key == "corpus") {
    config->corpus_path = value;
  } else if (key == "seed-kb") {
    config->seed_kb_path = value;
  } else if (key == "out") {
    config->output_dir = value;
  } else if (key == "threshold") {
    config->pattern_threshold = ParseNumber<double>(key, value);
  } else if (key == "top-percent") {
    config->top_percent = ParseNumber<double>(key, value);
  } else if (key == "epochs") {
    config->epochs = ParseNumber<int>(key, value);
  } else if (key == "dim") {
    config->embed_dim = ParseNumber<int>(key, value);
  } else if (key == "encoder-layers") {
    config->encoder_layers = ParseNumber<int>(key, value);
  } else if (key == "lr") {
    config->learning_rate = ParseNumber<double>(key, value);
  } else if (key == "seed") {
    config->rng_seed = ParseNumber<uint64_t>(key, value);
  } else if (key == "workers") {
    config->workers = ParseNumber<int>(key, value);
  } else if (key == "annotate-per-relation") {
    config->annotate_per_relation = ParseNumber<int>(key, value);
  } else if (key == "positional") {
    config->positional = ParseBool(key, value);
  } else {
    throw ValidationError("config: unknown key '" + key + "'");
  }
}

void ApplyConfigText(const std::string &text, PipelineConfig *config, const std::string &base_dir) {
  std::vector<std::string> lines = Split(text, '\n');
  for (size_t i = 0; i < lines.size(); ++i) {
    std::string line = lines[i];
    size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::vector<std::string> words = SplitWords(line);
    if (words.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(i + 1) + ": expected key=value");
    }
    std::vector<std::string> key = SplitWords(line.substr(0, eq));
    std::vector<std::string> value = SplitWords(line.substr(eq + 1));
    if (key.size() != 1 || value.size() > 1) {
      throw ValidationError("config line " + std::to_string(i + 1) + ": expected key=value");
    }
    std::string v = value.empty() ? std::string() : value[0];
    bool is_path = key[0] == "corpus" || key[0] == "seed-kb" || key[0] == "out";
    if (is_path && !base_dir.empty() && !v.empty() && std::filesystem::path(v).is_relative()) {
      v = (std::filesystem::path(base_dir) / v).lexically_normal().string();
    }
    ApplyConfigValue(key[0], v, config);
  }
}

void RunExtractPatterns(const PipelineConfig &config, std::ostream &out, std::ostream &err) {
  (void)err;
  config.Validate();
  RequirePath(config.corpus_path, "corpus");
  RequirePath(config.seed_kb_path, "seed-kb");
  GraphCorpus corpus = LoadCorpus(config.corpus_path);
  SeedKB seed = LoadSeedKB(config.seed_kb_path);

  // One work unit per seed tuple, relation by relation.
  std::vector<int> work;
  for (const std::string &relation : seed.relations()) {
    for (int t : seed.TuplesOf(relation)) work.push_back(t);
  }
  struct Partial {
    PatternStats stats;
    std::map<DiscardCause, long> discards;
    long extracted = 0;
  };
  std::vector<Partial> partials(work.size());
  ParallelFor(static_cast<int>(work.size()), config.workers, [&](int w) {
    const SeedTuple &tuple = seed.tuples()[work[w]];
    Partial &p = partials[w];
    for (const LinguisticGraph &graph : corpus.graphs()) {
      ExtractionResult result = TryExtractPattern(tuple, graph);
      if (result.pattern) {
        p.stats.Accumulate(*result.pattern);
        ++p.extracted;
      } else {
        ++p.discards[result.cause];
      }
    }
  });

  PatternStats stats(seed);
  std::map<DiscardCause, long> discards = {{DiscardCause::kAmbiguous, 0},
                                           {DiscardCause::kMissing, 0},
                                           {DiscardCause::kDisconnected, 0},
                                           {DiscardCause::kOverlap, 0}};
  long extracted = 0;
  for (const Partial &p : partials) {
    stats.Merge(p.stats);
    for (const auto &[cause, count] : p.discards) discards[cause] += count;
    extracted += p.extracted;
  }

  std::vector<PatternRow> rows;
  json patterns = json::array();
  std::map<std::string, long> per_relation;
  for (const auto &[key_rel, count] : stats.counts()) {
    rows.push_back({key_rel.second, key_rel.first, std::nullopt});
    patterns.push_back({{"relation", key_rel.second},
                        {"key", key_rel.first},
                        {"count", count},
                        {"length", stats.Length(key_rel.first)}});
    ++per_relation[key_rel.second];
  }
  std::sort(rows.begin(), rows.end(), [](const PatternRow &a, const PatternRow &b) {
    return std::tie(a.relation, a.key) < std::tie(b.relation, b.key);
  });
  json sizes = json::object();
  json summary = json::object();
  for (const std::string &relation : seed.relations()) {
    sizes[relation] = seed.RelationSize(relation);
    summary[relation] = per_relation[relation];
  }
  json discard_json = json::object();
  for (const auto &[cause, count] : discards) discard_json[std::string(DiscardCauseName(cause))] = count;
  json doc = {{"relation_sizes", sizes},
              {"patterns", patterns},
              {"patterns_per_relation", summary},
              {"extracted", extracted},
              {"discards", discard_json}};

  WriteFileAtomic(OutPath(config, files::kPatterns), FormatPatternRows(rows));
  WriteFileAtomic(OutPath(config, files::kPatternStats), doc.dump(2) + "\n");

  out << "graphs=" << corpus.size() << " seed_tuples=" << seed.tuples().size()
      << " extracted=" << extracted << " distinct_patterns=" << rows.size() << "\n";
  for (const std::string &relation : seed.relations()) {
    out << "  " << relation << ": " << per_relation[relation] << " patterns\n";
  }
  out << "discarded:";
  for (const auto &[cause, count] : discards) out << " " << DiscardCauseName(cause) << "=" << count;
  out << "\n";
}

void RunSelectPatterns(const PipelineConfig &config, std::ostream &out, std::ostream &err) {
  (void)err;
  config.Validate();
  PatternStats stats = LoadPatternStats(config);
  std::vector<PatternRow> rows;
  std::vector<std::string> observed = stats.ObservedRelations();
  for (const auto &[relation, size] : stats.relation_sizes()) {
    (void)size;
    std::vector<ScoredPattern> selected;
    if (std::binary_search(observed.begin(), observed.end(), relation)) {
      selected = SelectPatterns(Plausibility(stats, relation), config.pattern_threshold);
    }
    out << relation << ": " << selected.size() << " patterns above " << FormatReal(config.pattern_threshold)
        << "\n";
    for (const ScoredPattern &sp : selected) rows.push_back({sp.relation, sp.key, sp.plausibility});
  }
  WriteFileAtomic(OutPath(config, files::kSelectedPatterns), FormatPatternRows(rows));
}

void RunExtractKnowledge(const PipelineConfig &config, std::ostream &out, std::ostream &err) {
  (void)err;
  config.Validate();
  RequirePath(config.corpus_path, "corpus");
  std::vector<PatternRow> rows =
      ParsePatternRows(ReadFile(OutPath(config, files::kSelectedPatterns)));
  GraphCorpus corpus = LoadCorpus(config.corpus_path);
  std::vector<KeyedRule> keyed;
  for (const PatternRow &row : rows) keyed.push_back({row.relation, row.key});
  std::vector<PatternRule> rules = RulesFrom(keyed);

  std::vector<RawCandidate> raw = ExtractKnowledge(rules, corpus, config.workers);
  std::vector<SupportSet> sets = AggregateSupport(raw);
  std::vector<KnowledgeRow> knowledge;
  for (const SupportSet &s : sets) {
    knowledge.push_back({s.head, s.relation, s.tail, static_cast<int>(s.GraphIds().size()),
                         s.PatternKeys(), std::nullopt});
  }
  std::vector<AnnotationRow> sample =
      SampleForAnnotation(sets, config.annotate_per_relation, config.rng_seed);

  WriteFileAtomic(OutPath(config, files::kKnowledge), FormatKnowledgeRows(knowledge));
  WriteFileAtomic(OutPath(config, files::kAnnotationSample), FormatAnnotationRows(sample));
  out << "patterns=" << rules.size() << " matches=" << raw.size()
      << " candidates=" << knowledge.size() << " annotation_sample=" << sample.size() << "\n";
}

void RunTrainRanker(const PipelineConfig &config, const std::string &annotations_path,
                    std::ostream &out, std::ostream &err) {
  config.Validate();
  RequirePath(config.corpus_path, "corpus");
  RequirePath(annotations_path, "annotations");
  std::vector<AnnotationRow> rows =
      ParseAnnotationRows(ReadFile(annotations_path), /*require_label=*/true);
  GraphCorpus corpus = LoadCorpus(config.corpus_path);
  std::vector<AnnotatedExample> dataset;
  for (const AnnotationRow &row : rows) {
    dataset.push_back({SplitWords(row.head), row.relation, SplitWords(row.tail), *row.label,
                       row.graph_ids});
  }
  RankerModel model = Train(
      dataset, corpus, MakeRankerConfig(config),
      [&](const std::string &relation, int epoch, double loss) {
        out << "epoch " << epoch << " " << relation << " loss=" << FormatFixed(loss, 6) << "\n";
      },
      [&](const std::string &message) { err << "warning: " << message << "\n"; });
  out << "training_accuracy=" << FormatFixed(TrainingAccuracy(model, dataset, corpus), 4) << "\n";
  WriteFileAtomic(OutPath(config, files::kCheckpoint), SaveCheckpoint(model));
}

void RunRank(const PipelineConfig &config, const std::string &checkpoint_path, std::ostream &out,
             std::ostream &err) {
  config.Validate();
  RequirePath(config.corpus_path, "corpus");
  std::vector<KnowledgeRow> rows = ParseKnowledgeRows(ReadFile(OutPath(config, files::kKnowledge)));
  RankerModel model = LoadCheckpoint(ReadFile(checkpoint_path));
  GraphCorpus corpus = LoadCorpus(config.corpus_path);

  // Supporting graphs are re-derived by re-applying each row's patterns.
  std::set<std::pair<std::string, std::string>> distinct;
  for (const KnowledgeRow &row : rows) {
    for (const std::string &key : row.pattern_keys) distinct.emplace(row.relation, key);
  }
  std::vector<KeyedRule> keyed;
  for (const auto &[relation, key] : distinct) keyed.push_back({relation, key});
  std::vector<RawCandidate> raw = ExtractKnowledge(RulesFrom(keyed), corpus, config.workers);
  std::map<std::tuple<std::string, std::string, std::string>, std::map<std::string, Instance>> support;
  for (const RawCandidate &c : raw) {
    auto &graphs = support[{c.tuple.HeadText(), c.tuple.relation, c.tuple.TailText()}];
    if (graphs.count(c.graph_id)) continue;
    graphs[c.graph_id] = Instance{corpus.Find(c.graph_id), c.head_nodes, c.tail_nodes};
  }

  std::vector<RankCandidate> candidates;
  for (const KnowledgeRow &row : rows) {
    RankCandidate c;
    c.head = row.head;
    c.relation = row.relation;
    c.tail = row.tail;
    c.support_count = row.support_count;
    c.pattern_keys = row.pattern_keys;
    auto it = support.find({row.head, row.relation, row.tail});
    if (it != support.end()) {
      for (const auto &[graph_id, instance] : it->second) c.instances.push_back(instance);
    }
    candidates.push_back(std::move(c));
  }
  RankKnowledge(candidates, model, config.workers,
                [&](const std::string &message) { err << "warning: " << message << "\n"; });

  std::vector<KnowledgeRow> ranked;
  for (const RankCandidate &c : candidates) {
    ranked.push_back({c.head, c.relation, c.tail, c.support_count, c.pattern_keys, c.score});
  }
  size_t top = TopPercentCount(ranked.size(), config.top_percent);
  std::vector<KnowledgeRow> top_rows(ranked.begin(), ranked.begin() + static_cast<long>(top));
  WriteFileAtomic(OutPath(config, files::kRankedKnowledge), FormatKnowledgeRows(ranked));
  WriteFileAtomic(OutPath(config, files::kTopKnowledge), FormatKnowledgeRows(top_rows));
  out << "ranked=" << ranked.size() << " top=" << top << " (" << FormatReal(config.top_percent)
      << "%)\n";
}

void RunStats(const PipelineConfig &config, std::ostream &out, std::ostream &err) {
  (void)err;
  config.Validate();
  RequirePath(config.seed_kb_path, "seed-kb");
  std::vector<KnowledgeRow> rows = ParseKnowledgeRows(ReadFile(OutPath(config, files::kKnowledge)));
  SeedKB seed = LoadSeedKB(config.seed_kb_path);
  std::vector<TupleText> tuples;
  for (const KnowledgeRow &row : rows) tuples.push_back({row.head, row.relation, row.tail});
  NoveltyReport report = Novelty(tuples, seed);
  std::string text = FormatNoveltyText(report);
  WriteFileAtomic(OutPath(config, files::kNoveltyText), text);
  WriteFileAtomic(OutPath(config, files::kNoveltyJson), FormatNoveltyJson(report));
  out << text;
}

int RunCli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Mine relation-typed knowledge tuples from linguistic graph corpora", "kgmine"};
  app.require_subcommand(1);

  struct Flags {
    std::string config_file;
    std::optional<std::string> corpus, seed_kb, out;
    std::optional<double> threshold, top_percent, lr;
    std::optional<int> epochs, dim, workers, encoder_layers, annotate_per_relation;
    std::optional<uint64_t> seed;
    std::optional<bool> positional;
    std::string extra_path;
  } flags;

  auto add_common = [&](CLI::App *cmd) {
    cmd->add_option("--config", flags.config_file, "Flat key=value config file");
    cmd->add_option("--corpus", flags.corpus, "Graph corpus (JSON Lines)");
    cmd->add_option("--seed-kb", flags.seed_kb, "Seed tuples (TSV)");
    cmd->add_option("--out", flags.out, "Output directory");
    cmd->add_option("--threshold", flags.threshold, "Pattern plausibility threshold (default 0.05)");
    cmd->add_option("--top-percent", flags.top_percent, "Top slice written by rank (default 1)");
    cmd->add_option("--epochs", flags.epochs, "Ranker training epochs");
    cmd->add_option("--dim", flags.dim, "Ranker embedding size");
    cmd->add_option("--encoder-layers", flags.encoder_layers, "Self-attention blocks");
    cmd->add_option("--lr", flags.lr, "SGD learning rate");
    cmd->add_option("--seed", flags.seed, "RNG seed");
    cmd->add_option("--workers", flags.workers, "Worker threads");
    cmd->add_option("--annotate-per-relation", flags.annotate_per_relation,
                    "Annotation sample size per relation");
    cmd->add_option("--positional", flags.positional, "Add position signal to embeddings (0/1)");
  };

  CLI::App *extract_patterns = app.add_subcommand("extract-patterns", "Mine patterns from seed tuples");
  CLI::App *select_patterns = app.add_subcommand("select-patterns", "Score and threshold patterns");
  CLI::App *extract_knowledge = app.add_subcommand("extract-knowledge", "Apply patterns to the corpus");
  CLI::App *train_ranker = app.add_subcommand("train-ranker", "Train the plausibility ranker");
  CLI::App *rank = app.add_subcommand("rank", "Score and sort extracted knowledge");
  CLI::App *stats = app.add_subcommand("stats", "Quantity and novelty report");
  for (CLI::App *cmd : {extract_patterns, select_patterns, extract_knowledge, train_ranker, rank, stats}) {
    add_common(cmd);
  }
  train_ranker->add_option("annotations", flags.extra_path, "Annotation TSV (labels required)");
  rank->add_option("checkpoint", flags.extra_path, "Ranker checkpoint (default <out>/ranker.json)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp &) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    PipelineConfig config;
    if (!flags.config_file.empty()) {
      ApplyConfigText(ReadFile(flags.config_file), &config,
                      std::filesystem::path(flags.config_file).parent_path().string());
    }
    if (flags.corpus) config.corpus_path = *flags.corpus;
    if (flags.seed_kb) config.seed_kb_path = *flags.seed_kb;
    if (flags.out) config.output_dir = *flags.out;
    if (flags.threshold) config.pattern_threshold = *flags.threshold;
    if (flags.top_percent) config.top_percent = *flags.top_percent;
    if (flags.epochs) config.epochs = *flags.epochs;
    if (flags.dim) config.embed_dim = *flags.dim;
    if (flags.encoder_layers) config.encoder_layers = *flags.encoder_layers;
    if (flags.lr) config.learning_rate = *flags.lr;
    if (flags.seed) config.rng_seed = *flags.seed;
    if (flags.workers) config.workers = *flags.workers;
    if (flags.annotate_per_relation) config.annotate_per_relation = *flags.annotate_per_relation;
    if (flags.positional) config.positional = *flags.positional;

    if (*extract_patterns) {
      RunExtractPatterns(config, out, err);
    } else if (*select_patterns) {
      RunSelectPatterns(config, out, err);
    } else if (*extract_knowledge) {
      RunExtractKnowledge(config, out, err);
    } else if (*train_ranker) {
      std::string path = flags.extra_path.empty()
                             ? (std::filesystem::path(config.output_dir) / "annotations.tsv").string()
                             : flags.extra_path;
      RunTrainRanker(config, path, out, err);
    } else if (*rank) {
      std::string path =
          flags.extra_path.empty() ? OutPath(config, files::kCheckpoint) : flags.extra_path;
      RunRank(config, path, out, err);
    } else if (*stats) {
      RunStats(config, out, err);
    }
  } catch (const IoError &e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const TrainingError &e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError &e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace kgmine
