#include "scidtb/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace scidtb {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Dense square matrix of arc weights, row = head.
struct Graph {
  int size;
  std::vector<double> w;
  Graph(int n) : size(n), w(static_cast<std::size_t>(n) * n, kNegInf) {}
  double& at(int u, int v) { return w[static_cast<std::size_t>(u) * size + v]; }
  double at(int u, int v) const { return w[static_cast<std::size_t>(u) * size + v]; }
};

// Chu-Liu/Edmonds with contraction. Node 0 is the root; returns the parent
// of every node (parent[0] = -1). Ties go to the lower head.
std::vector<int> chu_liu_edmonds(const Graph& g) {
  const int n = g.size;
  std::vector<int> parent(n, -1);
  for (int v = 1; v < n; ++v) {
    int best = -1;
    for (int u = 0; u < n; ++u) {
      if (u == v || g.at(u, v) == kNegInf) continue;
      if (best < 0 || g.at(u, v) > g.at(best, v)) best = u;
    }
    parent[v] = best;
  }

  // Find one cycle.
  std::vector<int> mark(n, -1);
  std::vector<int> cycle;
  for (int start = 1; start < n && cycle.empty(); ++start) {
    int v = start;
    while (v > 0 && mark[v] < 0) {
      mark[v] = start;
      v = parent[v];
    }
    if (v > 0 && mark[v] == start) {
      int u = v;
      do {
        cycle.push_back(u);
        u = parent[u];
      } while (u != v);
    }
  }
  if (cycle.empty()) return parent;

  std::vector<bool> in_cycle(n, false);
  for (int v : cycle) in_cycle[v] = true;
  std::vector<int> new_id(n, -1), old_id;
  for (int v = 0; v < n; ++v) {
    if (!in_cycle[v]) {
      new_id[v] = static_cast<int>(old_id.size());
      old_id.push_back(v);
    }
  }
  const int c = static_cast<int>(old_id.size());
  Graph h(c + 1);
  std::vector<int> enter_dst(c + 1, -1), exit_src(c + 1, -1);
  for (int u : old_id) {
    for (int v : old_id) {
      if (u != v) h.at(new_id[u], new_id[v]) = g.at(u, v);
    }
  }
  std::sort(cycle.begin(), cycle.end());
  for (int u : old_id) {
    double best = kNegInf;
    for (int v : cycle) {
      const double s = g.at(u, v);
      if (s == kNegInf) continue;
      const double gain = s - g.at(parent[v], v);
      if (enter_dst[new_id[u]] < 0 || gain > best) {
        best = gain;
        enter_dst[new_id[u]] = v;
      }
    }
    h.at(new_id[u], c) = best;
  }
  for (int v : old_id) {
    if (v == 0) continue;
    double best = kNegInf;
    for (int u : cycle) {
      const double s = g.at(u, v);
      if (s == kNegInf) continue;
      if (exit_src[new_id[v]] < 0 || s > best) {
        best = s;
        exit_src[new_id[v]] = u;
      }
    }
    h.at(c, new_id[v]) = best;
  }

  const auto sub = chu_liu_edmonds(h);
  std::vector<int> out(n, -1);
  for (int v : old_id) {
    if (v == 0) continue;
    const int p = sub[new_id[v]];
    out[v] = p == c ? exit_src[new_id[v]] : old_id[p];
  }
  for (int v : cycle) out[v] = parent[v];
  const int entering_from = sub[c];
  out[enter_dst[entering_from]] = old_id[entering_from];
  return out;
}

}  // namespace

std::vector<Fine> fine_arc_labels() {
  std::vector<Fine> out;
  for (int i = 1; i < kNumFine; ++i) out.push_back(fine_from_index(i));
  return out;
}

std::vector<Fine> coarse_arc_labels() {
  std::vector<Fine> out;
  for (int i = 1; i < kNumCoarse; ++i) out.push_back(representative_fine(coarse_from_index(i)));
  return out;
}

ArcFeatureCache::ArcFeatureCache(const DiscourseTree& doc, FeatureDictionary& dict, bool grow)
    : n_(doc.size()), ids_(static_cast<std::size_t>(n_ + 1) * (n_ + 1)) {
  const DocumentContext ctx(doc);
  for (EduId h = 0; h <= n_; ++h) {
    for (EduId d = 1; d <= n_; ++d) {
      if (h == d) continue;
      auto& slot = ids_[static_cast<std::size_t>(h) * (n_ + 1) + d];
      if (grow || dict.frozen()) {  // frozen lookups feed the OOV counters
        slot = arc_base_ids(ctx, h, d, dict);
      } else {
        for (const auto& f : arc_base_templates(ctx, h, d)) slot.push_back(dict.find(f));
      }
    }
  }
}

std::span<const FeatureId> ArcFeatureCache::base(EduId head, EduId dep) const {
  return ids_[static_cast<std::size_t>(head) * (n_ + 1) + dep];
}

ArcScoreMatrix score_arcs(const ArcFeatureCache& cache, std::span<const double> weights,
                          const std::vector<Fine>& labels) {
  const int n = cache.size();
  ArcScoreMatrix m(n);
  std::vector<Fine> order = labels;
  std::sort(order.begin(), order.end());
  auto weight = [&](FeatureId id) {
    return static_cast<std::size_t>(id) < weights.size() ? weights[id] : 0.0;
  };
  for (EduId h = 0; h <= n; ++h) {
    for (EduId d = 1; d <= n; ++d) {
      if (h == d) continue;
      const auto base = cache.base(h, d);
      if (h == kVirtualRoot) {
        double s = 0.0;
        for (FeatureId b : base) s += weight(conjoin(b, Fine::kRoot));
        m.set(h, d, s, Fine::kRoot);
        continue;
      }
      // Labels are scanned in index order so ties keep the lowest index.
      double best = kNegInf;
      Fine best_label = order.empty() ? Fine::kAttribution : order.front();
      for (Fine l : order) {
        double s = 0.0;
        for (FeatureId b : base) s += weight(conjoin(b, l));
        if (s > best) {
          best = s;
          best_label = l;
        }
      }
      m.set(h, d, order.empty() ? 0.0 : best, best_label);
    }
  }
  return m;
}

ArcScoreMatrix score_arcs(const DiscourseTree& doc, const AveragedPerceptronModel& model,
                          FeatureDictionary& dict, const std::vector<Fine>& labels) {
  const ArcFeatureCache cache(doc, dict, !dict.frozen());
  return score_arcs(cache, model.weights(), labels);
}

std::vector<EduId> decode_heads(const ArcScoreMatrix& scores) {
  const int n = scores.n;
  if (n == 0) return {-1};
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (EduId h = 0; h <= n; ++h) {
    for (EduId d = 1; d <= n; ++d) {
      if (h == d) continue;
      lo = std::min(lo, scores.score(h, d));
      hi = std::max(hi, scores.score(h, d));
    }
  }
  // Any tree with one root arc outscores every tree with more once each root
  // arc pays more than the widest possible gap between two trees.
  const double penalty = (n + 1) * ((hi - lo) + 1.0);
  Graph g(n + 1);
  for (EduId h = 0; h <= n; ++h) {
    for (EduId d = 1; d <= n; ++d) {
      if (h == d) continue;
      g.at(h, d) = scores.score(h, d) - (h == kVirtualRoot ? penalty : 0.0);
    }
  }
  return chu_liu_edmonds(g);
}

DiscourseTree decode_mst(const ArcScoreMatrix& scores, const DiscourseTree& doc) {
  const auto heads = decode_heads(scores);
  DiscourseTree out;
  out.doc_id = doc.doc_id;
  for (EduId d = 1; d <= scores.n; ++d) {
    const std::string text = d <= doc.size() ? doc.edu(d).text : std::string();
    out.edus.push_back(EduNode{d, text, heads[d], RelationLabel{scores.label(heads[d], d), false}});
  }
  return out;
}

double tree_score(const ArcScoreMatrix& scores, std::span<const EduId> heads) {
  double s = 0.0;
  for (EduId d = 1; d <= scores.n; ++d) s += scores.score(heads[d], d);
  return s;
}

FeatureVector tree_features(const ArcFeatureCache& cache, const DiscourseTree& tree) {
  std::vector<FeatureId> ids;
  for (const auto& e : tree.edus) {
    for (FeatureId b : cache.base(e.head, e.id)) ids.push_back(conjoin(b, e.relation.fine));
  }
  return FeatureVector::from_ids(ids);
}

AveragedPerceptronModel train_graph(const std::vector<DiscourseTree>& train, FeatureDictionary& dict,
                                    const GraphTrainOptions& options) {
  std::vector<ArcFeatureCache> caches;
  caches.reserve(train.size());
  for (const auto& t : train) caches.emplace_back(t, dict, true);

  AveragedPerceptronModel model;
  for (int epoch = 1; epoch <= options.epochs; ++epoch) {
    for (std::size_t i = 0; i < train.size(); ++i) {
      const auto& gold = train[i];
      const auto scores = score_arcs(caches[i], model.weights(), options.labels);
      const auto pred = decode_mst(scores, gold);
      const bool same = std::equal(pred.edus.begin(), pred.edus.end(), gold.edus.begin(), gold.edus.end(),
                                   [](const EduNode& a, const EduNode& b) {
                                     return a.head == b.head && a.relation.fine == b.relation.fine;
                                   });
      if (same) {
        perceptron_update(model, {}, {}, options.learning_rate);
      } else {
        perceptron_update(model, tree_features(caches[i], gold), tree_features(caches[i], pred),
                          options.learning_rate);
      }
    }
    if (options.on_epoch) options.on_epoch(epoch, model.finalized());
  }
  return model.finalized();
}

DiscourseTree parse_graph(const DiscourseTree& doc, const AveragedPerceptronModel& model,
                          FeatureDictionary& dict, const std::vector<Fine>& labels) {
  return decode_mst(score_arcs(doc, model, dict, labels), doc);
}

}  // namespace scidtb
