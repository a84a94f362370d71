#include "kgforge/linkpred/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "kgforge/common/error.hpp"
#include "kgforge/common/parallel.hpp"
#include "kgforge/common/rng.hpp"
#include "kgforge/common/text.hpp"
#include "kgforge/linkpred/features.hpp"
#include "kgforge/linkpred/holdout.hpp"
#include "kgforge/linkpred/line.hpp"
#include "kgforge/linkpred/skipgram.hpp"
#include "kgforge/linkpred/transe.hpp"
#include "kgforge/linkpred/walks.hpp"

namespace kgforge::linkpred {

Confusion confusion(std::span<const double> scores, std::span<const std::uint8_t> labels, double threshold) {
  Confusion c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool pred = scores[i] > threshold;
    if (labels[i])
      (pred ? c.tp : c.fn)++;
    else
      (pred ? c.fp : c.tn)++;
  }
  return c;
}

double balanced_accuracy(const Confusion& c) {
  if (c.tp + c.fn == 0 || c.tn + c.fp == 0) throw Error(Errc::EmptyTestSet, "balanced accuracy needs both classes");
  const double tpr = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
  const double tnr = static_cast<double>(c.tn) / static_cast<double>(c.tn + c.fp);
  return (tpr + tnr) / 2;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) return 0;
  double s = 0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0;
  const double m = mean(xs);
  double s = 0;
  for (double x : xs) s += (x - m) * (x - m);
  return std::sqrt(s / static_cast<double>(xs.size() - 1));
}

Embedding embed(const LearningGraph& g, const EmbeddingConfig& config) {
  switch (config.method) {
    case EmbeddingMethod::Node2Vec:
      return train_skipgram(generate_walks(g, config), g.node_count(), config).input;
    case EmbeddingMethod::Line:
      return train_line(g, config).vertex;
    case EmbeddingMethod::TransE:
      return train_transe(g.edges(), g.node_count(), std::max<std::size_t>(1, g.relations().size()), config).entities;
  }
  throw Error(Errc::InvalidConfig, "unknown embedding method");
}

NodeFeatures multimodal_features(const graph::PropertyGraph& g, const LearningGraph& lg) {
  constexpr std::size_t kmer_dim = 64, text_dim = 32;
  NodeFeatures f{kmer_dim + text_dim, std::vector<float>(lg.node_count() * (kmer_dim + text_dim), 0.0f)};
  for (std::uint32_t u = 0; u < lg.node_count(); ++u) {
    auto h = g.find(lg.ids()[u]);
    if (!h) continue;
    const auto& props = g.node(*h).properties;
    float* row = f.data.data() + std::size_t{u} * f.dim;
    if (const auto* seq = props.find("Sequence"); seq && !seq->empty() && seq->front().size() >= 3) {
      auto k = kmer_features(seq->front(), 3);
      std::copy(k.begin(), k.end(), row);
    }
    const auto* text = props.find("Description");
    if (!text || text->empty()) text = props.find("Label");
    if (text && !text->empty()) {
      auto t = text_hash_features(text::join(*text, " "), text_dim);
      std::copy(t.begin(), t.end(), row + kmer_dim);
    }
  }
  return f;
}

void edge_features(const Embedding& emb, const NodeFeatures* features, NodePair p, std::vector<float>& out) {
  out.clear();
  auto a = emb.row(p.first), b = emb.row(p.second);
  out.insert(out.end(), a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  if (features) {
    auto fa = features->row(p.first), fb = features->row(p.second);
    out.insert(out.end(), fa.begin(), fa.end());
    out.insert(out.end(), fb.begin(), fb.end());
  }
}

namespace {

struct Category {
  std::vector<std::uint32_t> sources, targets;
  std::optional<std::uint32_t> relation;
};

bool in_category(const LearningGraph& g, const Category& c, const TaskSpec& t, const TypedEdge& e) {
  if (!g.has_label(e.src, t.source_label) || !g.has_label(e.dst, t.target_label)) return false;
  return !t.typed() || (c.relation && e.rel == *c.relation);
}

Dataset build_dataset(const Embedding& emb, const NodeFeatures* features, std::span<const NodePair> pos,
                      std::span<const NodePair> neg) {
  Dataset d;
  std::vector<float> row;
  for (const auto& p : pos) {
    edge_features(emb, features, p, row);
    d.add(row, 1);
  }
  for (const auto& p : neg) {
    edge_features(emb, features, p, row);
    d.add(row, 0);
  }
  return d;
}

}  // namespace

EvalResult evaluate(const graph::PropertyGraph& g, const TaskSpec& task, const EmbeddingConfig& embedding,
                    const ForestConfig& forest, const SplitSpec& split, const EvalOptions& options) {
  task.validate();
  embedding.validate();
  forest.validate();
  split.validate();
  const LearningGraph full = LearningGraph::from_graph(g);

  Category cat;
  cat.sources = full.nodes_with_label(task.source_label);
  cat.targets = full.nodes_with_label(task.target_label);
  if (task.typed()) cat.relation = full.relation_id(*task.predicate);
  std::set<NodePair> positives_all;
  for (const auto& e : full.edges())
    if (in_category(full, cat, task, e)) positives_all.insert({e.src, e.dst});
  if (positives_all.empty())
    throw Error(Errc::CategoryNotFound, "no " + task.source_label + " -> " + task.target_label +
                                            (task.predicate ? " (" + *task.predicate + ")" : "") + " edges");

  // Same-pair other-predicate pairs (typed tasks only).
  std::set<NodePair> other_pred;
  if (task.typed())
    for (const auto& e : full.edges())
      if (full.has_label(e.src, task.source_label) && full.has_label(e.dst, task.target_label) &&
          !positives_all.count({e.src, e.dst}))
        other_pred.insert({e.src, e.dst});

  const NodeFeatures features = task.multimodal() ? multimodal_features(g, full) : NodeFeatures{};
  const NodeFeatures* fptr = task.multimodal() ? &features : nullptr;
  const auto holdouts = split_connected_monte_carlo(full, split, options.seed);

  EvalResult result;
  result.model = std::string(method_name(embedding.method));
  result.edge = task.source_label + "-" + (task.predicate ? *task.predicate + "-" : "") + task.target_label;
  result.task = task.task;
  std::vector<std::optional<HoldoutOutcome>> outcomes(holdouts.size());
  const bool outer_parallel = options.jobs > 1 && holdouts.size() > 1;
  parallel_for(holdouts.size(), outer_parallel ? options.jobs : 1, [&](std::size_t hi) {
    const auto& h = holdouts[hi];
    std::set<NodePair> train_pos, test_pos, test_pairs;
    for (const auto& e : h.train.edges())
      if (in_category(full, cat, task, e)) train_pos.insert({e.src, e.dst});
    for (const auto& e : h.test) {
      test_pairs.insert(unordered({e.src, e.dst}));
      if (in_category(full, cat, task, e) && !train_pos.count({e.src, e.dst})) test_pos.insert({e.src, e.dst});
    }
    if (test_pos.empty() || train_pos.empty()) return;

    const auto n_train_neg =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(split.unbalance_rate * double(train_pos.size()))));
    const std::size_t n_test_neg = test_pos.size();
    std::vector<NodePair> train_neg, test_neg;
    if (task.typed()) {
      // Up to half of each side from same-pair other-predicate edges.
      for (const auto& p : other_pred) {
        auto& side = test_pairs.count(unordered(p)) ? test_neg : train_neg;
        const auto cap = (&side == &test_neg ? n_test_neg : n_train_neg) / 2;
        if (side.size() < cap) side.push_back(p);
      }
    }
    NegativeSpec ns;
    ns.scale_free = split.scale_free;
    ns.seed = text::mix_seed(options.seed ^ 0x6e6567, hi);
    ns.sources = cat.sources;
    ns.targets = cat.targets;
    std::set<NodePair> used;
    for (const auto& p : train_neg) used.insert(unordered(p));
    for (const auto& p : test_neg) used.insert(unordered(p));
    ns.exclude = &used;
    ns.count = (n_train_neg - train_neg.size()) + (n_test_neg - test_neg.size());
    if (ns.count > 0) {
      auto drawn = sample_negatives(full, ns);
      std::size_t i = 0;
      while (train_neg.size() < n_train_neg) train_neg.push_back(drawn[i++]);
      while (test_neg.size() < n_test_neg) test_neg.push_back(drawn[i++]);
    }

    EmbeddingConfig ec = embedding;
    ec.seed = text::mix_seed(embedding.seed, hi);
    if (outer_parallel) ec.jobs = 1;
    const Embedding emb = embed(h.train, ec);

    std::vector<NodePair> tp(train_pos.begin(), train_pos.end()), sp(test_pos.begin(), test_pos.end());
    Dataset train = build_dataset(emb, fptr, tp, train_neg);
    const Dataset test = build_dataset(emb, fptr, sp, test_neg);
    ForestConfig fc = forest;
    fc.seed = text::mix_seed(forest.seed, hi);
    if (outer_parallel) fc.jobs = 1;

    HoldoutOutcome out;
    auto run = [&](const Dataset& d) {
      RandomForest rf;
      rf.fit(d, fc);
      const auto scores = rf.predict_proba(test);
      return confusion(scores, test.y);
    };
    if (task.shuffle_labels) {
      Rng rng(text::mix_seed(options.seed ^ 0x73687566, hi));
      rng.shuffle(train.y.begin(), train.y.end());
    }
    out.confusion = run(train);
    out.balanced_accuracy = balanced_accuracy(out.confusion);
    if (options.with_control) {
      Dataset shuffled = train;
      Rng rng(text::mix_seed(options.seed ^ 0x636f6e74, hi));
      rng.shuffle(shuffled.y.begin(), shuffled.y.end());
      out.control_accuracy = balanced_accuracy(run(shuffled));
    }
    out.train_positives = tp.size();
    out.train_negatives = train_neg.size();
    out.test_positives = sp.size();
    out.test_negatives = test_neg.size();
    outcomes[hi] = out;
  });

  std::vector<double> acc, ctl;
  for (auto& o : outcomes) {
    if (!o) continue;
    result.holdouts.push_back(*o);
    acc.push_back(o->balanced_accuracy);
    if (options.with_control) ctl.push_back(o->control_accuracy);
  }
  if (acc.empty()) throw Error(Errc::EmptyTestSet, "no holdout produced test positives for " + result.edge);
  result.mean = mean(acc);
  result.stddev = sample_stddev(acc);
  if (options.with_control) result.control_mean = mean(ctl);
  return result;
}

}  // namespace kgforge::linkpred
